#include "videq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace videq {

double trapz(const SampledIntegrand& f) {
    const int N = f.grid.N;
    double acc = 0.5 * f.values[0];
    for (int i = 1; i < N; ++i) acc += f.values[i];
    acc += 0.5 * f.values[N];
    return f.grid.h * acc;
}

std::vector<double> cumulative_trapz(const SampledIntegrand& f) {
    const int N = f.grid.N;
    std::vector<double> out(N + 1);
    out[0] = 0.0;
    for (int i = 1; i <= N; ++i)
        out[i] = out[i - 1] + f.grid.h * 0.5 * (f.values[i - 1] + f.values[i]);
    return out;
}

double weighted_tail(const SampledIntegrand& f, int j) {
    const int N = f.grid.N;
    if (j < 0 || j > N) throw std::out_of_range("weighted_tail: node index out of range");
    if (j == 0) return 0.0;
    const double tj = f.grid.node(j);
    // endpoint weight (tj - s) is zero at s = tj
    double acc = 0.5 * tj * f.values[0];
    for (int i = 1; i < j; ++i) acc += (tj - f.grid.node(i)) * f.values[i];
    return f.grid.h * acc;
}

double weighted_tail_at(const SampledIntegrand& f, double t) {
    const Grid& g = f.grid;
    if (t < 0.0 || t > g.T) throw std::out_of_range("weighted_tail_at: t outside [0, T]");
    int j = std::min(static_cast<int>(t / g.h), g.N);
    if (g.node(j) > t) --j;
    double acc = 0.0;
    if (j >= 1) {
        acc = 0.5 * t * f.values[0];
        for (int i = 1; i < j; ++i) acc += (t - g.node(i)) * f.values[i];
        acc += 0.5 * (t - g.node(j)) * f.values[j];
        acc *= g.h;
    }
    double rem = t - g.node(j);
    if (rem > 0.0) {
        if (j == 0) acc += 0.5 * rem * t * f.values[0];
        else acc += 0.5 * rem * rem * f.values[j];
    }
    return acc;
}

std::vector<double> volterra_inner(const Expression& G, const GridFunction& f) {
    const Grid& g = f.grid;
    const int N = g.N;
    std::vector<double> out(N + 1);
    out[0] = 0.0;
    Bindings b{{"t", 0.0}, {"s", 0.0}, {"w", 0.0}, {"wp", 0.0}};
    auto bt = b.find("t");
    auto bs = b.find("s");
    auto bw = b.find("w");
    auto bwp = b.find("wp");
    std::vector<double> row(N + 1);
    for (int i = 1; i <= N; ++i) {
        bt->second = g.node(i);
        for (int m = 0; m <= i; ++m) {
            bs->second = g.node(m);
            bw->second = f.w[m];
            bwp->second = f.wp[m];
            row[m] = G.evaluate(b);
        }
        double acc = 0.5 * row[0];
        for (int m = 1; m < i; ++m) acc += row[m];
        acc += 0.5 * row[i];
        out[i] = g.h * acc;
    }
    return out;
}

}  // namespace videq
