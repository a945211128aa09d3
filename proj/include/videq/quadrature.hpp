#ifndef VIDEQ_QUADRATURE_HPP
#define VIDEQ_QUADRATURE_HPP

#include <vector>

#include "videq/expr.hpp"
#include "videq/gridfn.hpp"

namespace videq {

/// Integrand sampled at the nodes of a uniform grid.
struct SampledIntegrand {
    Grid grid;
    std::vector<double> values;
};

/// Composite trapezoid over the whole grid.
double trapz(const SampledIntegrand& f);

/// out[i] = trapezoid over [0, t_i]; out[0] = 0.
std::vector<double> cumulative_trapz(const SampledIntegrand& f);

/// Trapezoid of (t_j - s) * f(s) over [0, t_j].
double weighted_tail(const SampledIntegrand& f, int j);

/// Same integral with an off-grid upper limit t; whole cells below t plus a
/// trapezoidal partial-cell correction (the weight vanishes at s = t).
double weighted_tail_at(const SampledIntegrand& f, double t);

/// out[i] = trapezoid over sigma in [0, t_i] of G(t_i, sigma, w(sigma), wp(sigma)).
/// Each node's inner sum is accumulated in ascending index order.
std::vector<double> volterra_inner(const Expression& G, const GridFunction& f);

}  // namespace videq

#endif
