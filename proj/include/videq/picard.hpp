#ifndef VIDEQ_PICARD_HPP
#define VIDEQ_PICARD_HPP

#include <vector>

#include "videq/gridfn.hpp"
#include "videq/problem.hpp"

namespace videq {

/// Iterate produced a non-finite value or grew without a contraction certificate.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, int iteration)
        : std::runtime_error(msg), iteration_(iteration) {}
    int iteration() const { return iteration_; }

private:
    int iteration_;
};

struct SolveOptions {
    int N = 400;
    double tol = 1e-10;
    int max_iter = 100;
    double gamma = 1.0;

    void check() const {
        if (N < 2) throw std::invalid_argument("N must be at least 2");
        if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
        if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
        if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    }
};

struct SolveResult {
    GridFunction solution;
    int iterations = 0;
    std::vector<double> increments;  // Bielecki distance per iteration
    double q_used = 0.0;
    double apost_bound = 0.0;  // +inf when q_used >= 1
    bool converged = false;
};

/// Samples F(t_i, w_i, wp_i, I_i) at every node, with I the inner Volterra
/// integral of G along f.
std::vector<double> evaluate_rhs(const Problem& p, const GridFunction& f);

/// One application of the equivalent integral operator: value channel from the
/// weighted-tail integrals and the nonlocal constant, derivative channel from
/// the cumulative integral plus the boundary-determined w'(0).
GridFunction apply_operator(const Problem& p, const GridFunction& f);

/// Constant function w = w0 / (1 + sum c), wp = 0; satisfies both side
/// conditions exactly and is the fixed point when F vanishes.
GridFunction initial_guess(const Problem& p, const Grid& grid);

/// Fixed-point iteration from initial_guess until the Bielecki increment
/// drops below opts.tol or max_iter is reached.
SolveResult solve(const Problem& p, const SolveOptions& opts);

}  // namespace videq

#endif
