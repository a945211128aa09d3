#include "videq/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "videq/quadrature.hpp"

namespace videq {

namespace {

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

ContractionReport contraction_constant(double LF, double LG, double T, double beta,
                                       const std::vector<double>& c, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(beta > 1.0)) throw std::invalid_argument("beta must exceed 1");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (LF < 0.0 || LG < 0.0) throw std::invalid_argument("Lipschitz constants must be nonnegative");
    const double sc = sum(c);
    if (sc == -1.0) throw std::invalid_argument("sum of c equals -1");

    ContractionReport r;
    r.gamma = gamma;
    r.sum_c = sc;
    r.c_ratio = std::fabs(sc / (1.0 + sc));
    r.factors[0] = LF / gamma;
    r.factors[1] = 1.0 + LG / gamma;
    r.factors[2] =
        1.0 + (1.0 + (T * beta + T * beta * r.c_ratio)) * std::exp(gamma * T) / (beta - 1.0);
    r.q = r.factors[0] * r.factors[1] * r.factors[2];
    r.unique = r.q < 1.0;
    return r;
}

std::pair<double, double> optimize_gamma(double LF, double LG, double T, double beta,
                                         const std::vector<double>& c, double gamma_lo,
                                         double gamma_hi) {
    if (!(0.0 < gamma_lo && gamma_lo < gamma_hi))
        throw std::invalid_argument("invalid gamma range");

    auto q_at = [&](double g) { return contraction_constant(LF, LG, T, beta, c, g).q; };

    constexpr int kScanPoints = 512;
    const double log_lo = std::log(gamma_lo);
    const double log_hi = std::log(gamma_hi);
    int best = 0;
    double best_q = q_at(gamma_lo);
    std::vector<double> gs(kScanPoints);
    gs[0] = gamma_lo;
    for (int i = 1; i < kScanPoints; ++i) {
        double g = std::exp(log_lo + (log_hi - log_lo) * i / (kScanPoints - 1));
        gs[i] = g;
        double q = q_at(g);
        if (q < best_q) {  // strict: ties keep the smallest gamma
            best_q = q;
            best = i;
        }
    }

    // golden-section refinement on the bracket around the best scan point
    double a = gs[std::max(best - 1, 0)];
    double b = gs[std::min(best + 1, kScanPoints - 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = q_at(x1);
    double f2 = q_at(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-12 * (1.0 + b); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = q_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = q_at(x2);
        }
    }
    double g_star = 0.5 * (a + b);
    double q_star = q_at(g_star);
    if (best_q <= q_star) {  // keep the scan winner on flat objectives
        g_star = gs[best];
        q_star = best_q;
    }
    return {g_star, q_star};
}

double l_mu(const Expression& mu, double T, int N) {
    const Grid g = Grid::make(T, N);
    SampledIntegrand f{g, std::vector<double>(N + 1)};
    Bindings b{{"t", 0.0}};
    auto bt = b.find("t");
    for (int i = 0; i <= N; ++i) {
        bt->second = g.node(i);
        double v = mu.evaluate(b);
        if (v < 0.0)
            throw std::domain_error("mu must be nonnegative; negative sample at t = " +
                                    std::to_string(g.node(i)));
        f.values[i] = v;
    }
    return trapz(f);
}

double dependence_bound(double w0, double w0_tilde, double L_mu, double beta, double T,
                        const std::vector<double>& c, double q) {
    if (!(q < 1.0)) throw CertificateError("contraction certificate unavailable (q >= 1)");
    if (!(beta > 1.0)) throw std::invalid_argument("beta must exceed 1");
    if (L_mu < 0.0) throw std::invalid_argument("L_mu must be nonnegative");
    const double sc = sum(c);
    if (sc == -1.0) throw std::invalid_argument("sum of c equals -1");
    const double c_ratio = std::fabs(sc / (1.0 + sc));
    const double numer = std::fabs(1.0 / (1.0 + sc)) * std::fabs(w0 - w0_tilde) +
                         (beta * L_mu / (beta - 1.0)) * (1.0 + (1.0 + c_ratio) * T);
    return numer / (1.0 - q);
}

DependenceReport compare(const Problem& p, const Problem& p_tilde, const Expression& mu,
                         const SolveOptions& opts) {
    if (p.T != p_tilde.T || p.beta != p_tilde.beta || p.c != p_tilde.c || p.tk != p_tilde.tk)
        throw StructuralMismatchError("problems differ in T, beta, c, or tk");

    DependenceReport r;
    r.q = contraction_constant(p.LF, p.LG, p.T, p.beta, p.c, opts.gamma).q;
    r.L_mu = l_mu(mu, p.T, opts.N);
    r.delta_w0 = std::fabs(p.w0 - p_tilde.w0);
    r.bound = dependence_bound(p.w0, p_tilde.w0, r.L_mu, p.beta, p.T, p.c, r.q);

    SolveResult a = solve(p, opts);
    SolveResult b = solve(p_tilde, opts);
    r.measured = bielecki_distance(a.solution, b.solution, opts.gamma);
    return r;
}

ResidualReport residuals(const Problem& p, const GridFunction& f) {
    const Grid& g = f.grid;
    const int N = g.N;
    const double h = g.h;
    std::vector<double> rhs = evaluate_rhs(p, f);

    ResidualReport r;
    r.ode_residual.resize(N + 1);
    r.ode_residual[0] = (-3.0 * f.wp[0] + 4.0 * f.wp[1] - f.wp[2]) / (2.0 * h) - rhs[0];
    for (int i = 1; i < N; ++i)
        r.ode_residual[i] = (f.wp[i + 1] - f.wp[i - 1]) / (2.0 * h) - rhs[i];
    r.ode_residual[N] = (3.0 * f.wp[N] - 4.0 * f.wp[N - 1] + f.wp[N - 2]) / (2.0 * h) - rhs[N];
    for (double v : r.ode_residual) r.ode_residual_max = std::max(r.ode_residual_max, std::fabs(v));

    double nl = f.w[0];
    for (std::size_t k = 0; k < p.c.size(); ++k) nl += p.c[k] * eval_at(f, p.tk[k]).w;
    r.nonlocal_residual = nl - p.w0;
    r.boundary_residual = f.wp[N] - p.beta * f.wp[0];
    return r;
}

}  // namespace videq
