#pragma once

// Brute-force oracles used by the tests. Deliberately independent of the
// library's numerics: plain midpoint Riemann sums over a fixed panel count,
// with the finite sum re-implemented inline.

#include <cmath>
#include <cstdint>

namespace oracles {

// Finite sum over j < ceil((1-r)/(2r)) of ((2j+2)/(1+r))^a - ((2j)/(1-r))^a.
inline double f_sum(double alpha, double r) {
    const long long terms = static_cast<long long>(std::ceil((1.0 - r) / (2.0 * r)));
    double acc = 0.0;
    for (long long j = 0; j < terms; ++j) {
        const double hi = std::pow((2.0 * j + 2.0) / (1.0 + r), alpha);
        const double lo = j == 0 ? 0.0 : std::pow((2.0 * j) / (1.0 - r), alpha);
        acc += hi - lo;
    }
    return acc;
}

// Midpoint Riemann sum of r^{q-1} f_alpha(r) over (0,1).
inline double d_integral_riemann(double alpha, double q, long long panels) {
    const double h = 1.0 / static_cast<double>(panels);
    double acc = 0.0;
    for (long long i = 0; i < panels; ++i) {
        const double r = (static_cast<double>(i) + 0.5) * h;
        acc += std::pow(r, q - 1.0) * f_sum(alpha, r);
    }
    return acc * h;
}

// Midpoint Riemann sum of the eta = 1 - u^2 substituted F integrand over
// (0, sqrt(1-a)), including the 1/sqrt(2 pi mu) prefactor.
inline double F_riemann(double mu, double alpha, double a, long long panels) {
    const double upper = std::sqrt(1.0 - a);
    const double h = upper / static_cast<double>(panels);
    double acc = 0.0;
    for (long long i = 0; i < panels; ++i) {
        const double u = (static_cast<double>(i) + 0.5) * h;
        const double eta = 1.0 - u * u;
        acc += 2.0 * f_sum(alpha, a / eta) * std::pow(eta, -alpha);
    }
    return acc * h / std::sqrt(2.0 * M_PI * mu);
}

}  // namespace oracles
