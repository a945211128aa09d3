#ifndef VIDEQ_GRIDFN_HPP
#define VIDEQ_GRIDFN_HPP

#include <stdexcept>
#include <vector>

namespace videq {

/// Uniform grid on [0, T] with N subintervals. The last node is T exactly.
struct Grid {
    double T = 1.0;
    int N = 2;
    double h = 0.5;

    static Grid make(double T, int N) {
        if (T <= 0.0) throw std::invalid_argument("grid horizon must be positive");
        if (N < 2) throw std::invalid_argument("grid needs at least 2 subintervals");
        return Grid{T, N, T / N};
    }

    double node(int i) const { return i == N ? T : i * h; }

    bool operator==(const Grid& other) const { return T == other.T && N == other.N; }
};

/// Discrete C^1 element: paired value and derivative samples on a uniform grid.
struct GridFunction {
    Grid grid;
    std::vector<double> w;
    std::vector<double> wp;

    static GridFunction zeros(const Grid& g) {
        return GridFunction{g, std::vector<double>(g.N + 1, 0.0),
                            std::vector<double>(g.N + 1, 0.0)};
    }
};

struct Sample {
    double w;
    double wp;
};

/// Cubic Hermite interpolation on the containing cell; exact at nodes.
Sample eval_at(const GridFunction& f, double t);

/// max over nodes of (|w_i| + |wp_i|) * exp(-gamma * t_i).
double bielecki_norm(const GridFunction& f, double gamma);

double bielecki_distance(const GridFunction& f, const GridFunction& g, double gamma);

}  // namespace videq

#endif
