#ifndef VIDEQ_ANALYSIS_HPP
#define VIDEQ_ANALYSIS_HPP

#include <array>
#include <utility>
#include <vector>

#include "videq/expr.hpp"
#include "videq/gridfn.hpp"
#include "videq/picard.hpp"
#include "videq/problem.hpp"

namespace videq {

/// Raised when a requested bound needs a contraction certificate (q < 1)
/// that the given constants do not provide.
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by compare() when the two problems differ in T, beta, c, or tk.
class StructuralMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ContractionReport {
    double gamma = 0.0;
    double q = 0.0;
    bool unique = false;  // q < 1
    double sum_c = 0.0;
    double c_ratio = 0.0;              // |sum_c / (1 + sum_c)|
    std::array<double, 3> factors{};   // q is their product
};

/// q = (LF/g) * (1 + LG/g) * (1 + [1 + {T*beta + T*beta*c_ratio}] * e^{g T}/(beta-1)).
ContractionReport contraction_constant(double LF, double LG, double T, double beta,
                                       const std::vector<double>& c, double gamma);

/// Minimizes q over [gamma_lo, gamma_hi]: dense logarithmic scan (512 points)
/// followed by golden-section refinement; ties break to the smallest gamma.
std::pair<double, double> optimize_gamma(double LF, double LG, double T, double beta,
                                         const std::vector<double>& c, double gamma_lo,
                                         double gamma_hi);

/// Trapezoid of mu over [0, T] on N subintervals; mu must sample nonnegative.
double l_mu(const Expression& mu, double T, int N);

/// Right side of the data-dependence inequality:
/// (|1/(1+sum c)| * |w0 - w0~| + (beta*L_mu/(beta-1)) * [1 + (1 + c_ratio) * T]) / (1 - q).
double dependence_bound(double w0, double w0_tilde, double L_mu, double beta, double T,
                        const std::vector<double>& c, double q);

struct DependenceReport {
    double bound = 0.0;
    double measured = 0.0;
    double L_mu = 0.0;
    double q = 0.0;
    double delta_w0 = 0.0;
};

/// Solves both problems on the same grid and reports the measured Bielecki
/// distance next to the dependence bound (q from p's constants at opts.gamma).
DependenceReport compare(const Problem& p, const Problem& p_tilde, const Expression& mu,
                         const SolveOptions& opts);

struct ResidualReport {
    std::vector<double> ode_residual;
    double ode_residual_max = 0.0;
    double nonlocal_residual = 0.0;  // w(0) + sum c_k w(t_k) - w0
    double boundary_residual = 0.0;  // w'(T) - beta * w'(0)
};

/// Residuals of the differential equation and both side conditions for a
/// candidate solution; second-order difference stencils on the wp channel.
ResidualReport residuals(const Problem& p, const GridFunction& f);

}  // namespace videq

#endif
