#include "videq/gridfn.hpp"

#include <algorithm>
#include <cmath>

namespace videq {

Sample eval_at(const GridFunction& f, double t) {
    const Grid& g = f.grid;
    if (t < 0.0 || t > g.T)
        throw std::out_of_range("evaluation point outside [0, T]");
    int i = std::min(static_cast<int>(t / g.h), g.N - 1);
    double t0 = g.node(i);
    double t1 = g.node(i + 1);
    if (t == t0) return {f.w[i], f.wp[i]};
    if (t == t1) return {f.w[i + 1], f.wp[i + 1]};

    double h = t1 - t0;
    double u = (t - t0) / h;
    double u2 = u * u;
    double u3 = u2 * u;
    double h00 = 2 * u3 - 3 * u2 + 1;
    double h10 = u3 - 2 * u2 + u;
    double h01 = -2 * u3 + 3 * u2;
    double h11 = u3 - u2;
    double w = h00 * f.w[i] + h * h10 * f.wp[i] + h01 * f.w[i + 1] + h * h11 * f.wp[i + 1];

    double d00 = (6 * u2 - 6 * u) / h;
    double d10 = 3 * u2 - 4 * u + 1;
    double d01 = (-6 * u2 + 6 * u) / h;
    double d11 = 3 * u2 - 2 * u;
    double wp = d00 * f.w[i] + d10 * f.wp[i] + d01 * f.w[i + 1] + d11 * f.wp[i + 1];
    return {w, wp};
}

double bielecki_norm(const GridFunction& f, double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    double m = 0.0;
    for (int i = 0; i <= f.grid.N; ++i) {
        double v = (std::fabs(f.w[i]) + std::fabs(f.wp[i])) * std::exp(-gamma * f.grid.node(i));
        m = std::max(m, v);
    }
    return m;
}

double bielecki_distance(const GridFunction& f, const GridFunction& g, double gamma) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch");
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    double m = 0.0;
    for (int i = 0; i <= f.grid.N; ++i) {
        double v = (std::fabs(f.w[i] - g.w[i]) + std::fabs(f.wp[i] - g.wp[i])) *
                   std::exp(-gamma * f.grid.node(i));
        m = std::max(m, v);
    }
    return m;
}

}  // namespace videq
