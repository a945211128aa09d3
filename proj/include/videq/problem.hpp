#ifndef VIDEQ_PROBLEM_HPP
#define VIDEQ_PROBLEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "videq/expr.hpp"

namespace videq {

class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Second-order Volterra integrodifferential problem on [0, T] with the
/// nonlocal condition w(0) + sum c_k w(t_k) = w0 and the boundary condition
/// w'(T) = beta * w'(0).
///
/// F is an expression over {t, w, wp, I}, where I is the inner Volterra
/// integral of G; G is an expression over {t, s, w, wp}. LF and LG are the
/// user-declared Lipschitz constants of F and G.
struct Problem {
    double T = 1.0;
    double beta = 2.0;
    double w0 = 0.0;
    std::vector<double> c;
    std::vector<double> tk;
    Expression F;
    Expression G;
    double LF = 0.0;
    double LG = 0.0;
    std::string label;

    // optional solver defaults carried by the problem file
    std::optional<double> gamma;
    std::optional<int> N;
    std::optional<double> tol;
    std::optional<int> max_iter;

    double sum_c() const {
        double s = 0.0;
        for (double v : c) s += v;
        return s;
    }
};

/// Returns every violated invariant; empty means the problem is well posed.
std::vector<std::string> validate(const Problem& p);

/// Parses the line-based "key = value" problem-file format and validates.
Problem load_problem(const std::string& text);

/// Inverse of load_problem up to formatting; reals carry 17 significant digits.
std::string serialize(const Problem& p);

/// Built-in instances: "ex1" (as printed), "ex1_corrected", "ex2".
Problem builtin_example(const std::string& id);

std::vector<std::string> builtin_ids();

}  // namespace videq

#endif
