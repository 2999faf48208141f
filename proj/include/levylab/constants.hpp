#pragma once

#include <functional>

#include "levylab/medium.hpp"

namespace levylab {

struct QuadratureConfig {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    int max_depth = 48;
};

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
double log_gamma(double x);

// m_q, the q-th absolute moment of the standard Gaussian:
// sqrt(2^q / pi) * Gamma((q+1)/2), q >= 0.
double gaussian_abs_moment(double q);

// Finite sum over j = 0 .. ceil((1-r)/(2r)) - 1 of
// ((2j+2)/(1+r))^alpha - ((2j)/(1-r))^alpha, for r in (0,1), alpha >= 1.
// Satisfies 0 < f <= r^{-alpha} and f ~ 1/((alpha+1) r^alpha) as r -> 0+.
double f_alpha(double alpha, double r);

// d_{mu,alpha,q} = sqrt(2/mu) * Gamma(q-alpha+1)/Gamma(q-alpha+3/2)
//                  * int_0^1 r^{q-1} f_alpha(r) dr.
// The integral converges iff q = 2 alpha - 1 with alpha > 1, or
// q > 2 alpha - 1 with alpha >= 1; other pairs are rejected.
double d_const(double mu, double alpha, double q, const QuadratureConfig& cfg = {});

// F_{mu,alpha,a} = 1/sqrt(2 pi mu) * int_a^1 f_alpha(a/eta) eta^{-alpha}
//                  / sqrt(1-eta) d eta, for a in (0,1]; a = 1 gives 0.
double F_const(double mu, double alpha, double a, const QuadratureConfig& cfg = {});

// Leading large-t asymptote of the q-th absolute moment of the gas, split at
// the corner q = 2 alpha - 1:
//   q < corner (or q = alpha = 1)   m_q mu^{q/2} t^{q/2}
//   q = corner, alpha > 1           both terms
//   q > corner                      d_{mu,alpha,q} t^{q+1/2} tau_zeta(t)
// Requires a regularly varying gap law (pareto) whose index matches alpha and
// whose mean matches mu.
double moment_asymptote(double mu, double alpha, double q, double t, const GapLaw& gap_law);

// gamma(q): q/2 on the diffusive branch q <= 2 alpha - 1, q + 1/2 - alpha on
// the ballistic branch; the two branches meet at the corner.
double gamma_exponent(double alpha, double q);

namespace detail {

double riemann_zeta(double s);            // s > 1
double hurwitz_zeta(double s, double a);  // s > 1, a > 0

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg);

}  // namespace detail

}  // namespace levylab
