#include "videq/picard.hpp"

#include <cmath>
#include <limits>

#include "videq/analysis.hpp"
#include "videq/quadrature.hpp"

namespace videq {

std::vector<double> evaluate_rhs(const Problem& p, const GridFunction& f) {
    const Grid& g = f.grid;
    std::vector<double> inner = volterra_inner(p.G, f);
    std::vector<double> out(g.N + 1);
    Bindings b{{"t", 0.0}, {"w", 0.0}, {"wp", 0.0}, {"I", 0.0}};
    auto bt = b.find("t");
    auto bw = b.find("w");
    auto bwp = b.find("wp");
    auto bI = b.find("I");
    for (int i = 0; i <= g.N; ++i) {
        bt->second = g.node(i);
        bw->second = f.w[i];
        bwp->second = f.wp[i];
        bI->second = inner[i];
        out[i] = p.F.evaluate(b);
    }
    return out;
}

GridFunction apply_operator(const Problem& p, const GridFunction& f) {
    const Grid& g = f.grid;
    SampledIntegrand phi{g, evaluate_rhs(p, f)};
    const double total = trapz(phi);
    const double slope = total / (p.beta - 1.0);

    double cb = 0.0;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        double bk = p.tk[k] * slope + weighted_tail_at(phi, p.tk[k]);
        cb += p.c[k] * bk;
    }
    const double offset = (p.w0 - cb) / (1.0 + p.sum_c());

    GridFunction out = GridFunction::zeros(g);
    std::vector<double> cum = cumulative_trapz(phi);
    for (int i = 0; i <= g.N; ++i) {
        out.w[i] = offset + g.node(i) * slope + weighted_tail(phi, i);
        out.wp[i] = slope + cum[i];
    }
    return out;
}

GridFunction initial_guess(const Problem& p, const Grid& grid) {
    GridFunction f = GridFunction::zeros(grid);
    const double value = p.w0 / (1.0 + p.sum_c());
    for (int i = 0; i <= grid.N; ++i) f.w[i] = value;
    return f;
}

namespace {

bool all_finite(const GridFunction& f) {
    for (double v : f.w)
        if (!std::isfinite(v)) return false;
    for (double v : f.wp)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

SolveResult solve(const Problem& p, const SolveOptions& opts) {
    opts.check();
    const Grid grid = Grid::make(p.T, opts.N);

    SolveResult res;
    res.q_used = contraction_constant(p.LF, p.LG, p.T, p.beta, p.c, opts.gamma).q;

    GridFunction cur = initial_guess(p, grid);
    int growth_streak = 0;
    for (int n = 0; n < opts.max_iter; ++n) {
        GridFunction next = apply_operator(p, cur);
        if (!all_finite(next))
            throw DivergenceError("iterate contains non-finite values", n + 1);
        double inc = bielecki_distance(next, cur, opts.gamma);
        res.increments.push_back(inc);
        cur = std::move(next);
        res.iterations = n + 1;
        if (inc <= opts.tol) {
            res.converged = true;
            break;
        }
        if (res.q_used >= 1.0) {
            std::size_t m = res.increments.size();
            growth_streak = (m >= 2 && res.increments[m - 1] > res.increments[m - 2])
                                ? growth_streak + 1
                                : 0;
            if (growth_streak >= 5)
                throw DivergenceError(
                    "increments grew over 5 consecutive iterations without a "
                    "contraction certificate",
                    n + 1);
        }
    }
    res.solution = std::move(cur);

    const double last = res.increments.empty() ? 0.0 : res.increments.back();
    res.apost_bound = res.q_used < 1.0
                          ? res.q_used * last / (1.0 - res.q_used)
                          : std::numeric_limits<double>::infinity();
    return res;
}

}  // namespace videq
