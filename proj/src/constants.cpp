#include "levylab/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace levylab {

namespace detail {

namespace {

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(whole));
    return simpson_recurse(f, a, b, fa, fm, fb, whole, eps, cfg.max_depth);
}

// Euler-Maclaurin through the B_8 correction; for s > 1 and base >= 48 the
// truncation error is below 1e-15 relative.
double hurwitz_zeta(double s, double a) {
    if (!(s > 1.0)) throw std::invalid_argument("hurwitz_zeta: s must be > 1");
    if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: a must be > 0");
    double sum = 0.0;
    double base = a;
    while (base < 48.0) {
        sum += std::pow(base, -s);
        base += 1.0;
    }
    const double bs = std::pow(base, -s);
    sum += base * bs / (s - 1.0);  // base^{1-s}/(s-1)
    sum += 0.5 * bs;
    const double inv = 1.0 / base;
    double term = s * bs * inv / 12.0;
    sum += term;
    term *= (s + 1.0) * (s + 2.0) * inv * inv / 60.0;  // B_4 step: -.../720
    sum -= term;
    term *= (s + 3.0) * (s + 4.0) * inv * inv / 42.0;  // B_6 step: +.../30240
    sum += term;
    term *= (s + 5.0) * (s + 6.0) * inv * inv / 40.0;  // B_8 step: -.../1209600
    sum -= term;
    return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

}  // namespace detail

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: x must be > 0");
    static const double kCoeff[8] = {
        676.5203681218851,     -1259.1392167224028,  771.32342877765313,
        -176.61502916214059,   12.507343278686905,   -0.13857109526572012,
        9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = 0.99999999999980993;
    for (int i = 0; i < 8; ++i) acc += kCoeff[i] / (z + i + 1.0);
    const double t = z + 7.5;
    return 0.91893853320467274178 /* log sqrt(2 pi) */ + (z + 0.5) * std::log(t) - t +
           std::log(acc);
}

double gaussian_abs_moment(double q) {
    if (!(q >= 0.0)) throw std::invalid_argument("gaussian_abs_moment: q must be >= 0");
    return std::exp(0.5 * (q * M_LN2 - std::log(M_PI)) + log_gamma(0.5 * (q + 1.0)));
}

double f_alpha(double alpha, double r) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("f_alpha: alpha must be >= 1");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("f_alpha: r must be in (0,1)");
    const long long terms = static_cast<long long>(std::ceil((1.0 - r) / (2.0 * r)));
    double sum = 0.0;
    for (long long j = 0; j < terms; ++j) {
        const double hi = std::pow((2.0 * j + 2.0) / (1.0 + r), alpha);
        const double lo = j == 0 ? 0.0 : std::pow((2.0 * j) / (1.0 - r), alpha);
        sum += hi - lo;
    }
    return sum;
}

namespace {

// int_0^1 r^{q-1} f_alpha(r) dr, computed term by term: term j of f_alpha is
// present exactly for r < 1/(2j+1), and each partial integrand is smooth and
// bounded on its interval (the apparent r^{-alpha} blowup of f comes from the
// growing number of terms, not from any single one). The tail over j >= J uses
// g_j ~ 2 alpha/(q(q+1)) (2j+1)^{alpha-1-q}, summed with a Hurwitz zeta; the
// neglected correction is O(J^{-2}) relative to the tail.
double integral_rq_f(double alpha, double q, const QuadratureConfig& cfg) {
    constexpr long long kTerms = 4000;
    QuadratureConfig term_cfg{std::max(cfg.abs_tol * 1e-4, 1e-300), cfg.rel_tol * 0.1,
                              cfg.max_depth};
    double acc = 0.0;
    for (long long j = 0; j < kTerms; ++j) {
        const double rj = 1.0 / (2.0 * j + 1.0);
        const double two_j = 2.0 * static_cast<double>(j);
        auto integrand = [&](double r) {
            const double hi = std::pow((two_j + 2.0) / (1.0 + r), alpha);
            const double lo = j == 0 ? 0.0 : std::pow(two_j / (1.0 - r), alpha);
            return std::pow(r, q - 1.0) * (hi - lo);
        };
        acc += detail::adaptive_simpson(integrand, 0.0, rj, term_cfg);
    }
    const double s = q + 1.0 - alpha;
    const double tail = 2.0 * alpha / (q * (q + 1.0)) * std::pow(2.0, -s) *
                        detail::hurwitz_zeta(s, kTerms + 0.5);
    return acc + tail;
}

}  // namespace

double d_const(double mu, double alpha, double q, const QuadratureConfig& cfg) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("d_const: mu must be finite and > 0");
    if (!(alpha >= 1.0)) throw std::invalid_argument("d_const: requires alpha >= 1");
    const double corner = 2.0 * alpha - 1.0;
    if (q == corner) {
        if (!(alpha > 1.0))
            throw std::invalid_argument("d_const: q = 2 alpha - 1 requires alpha > 1");
    } else if (!(q > corner)) {
        throw std::invalid_argument(
            "d_const: integral diverges; requires q = 2 alpha - 1 (alpha > 1) or q > 2 alpha - 1");
    }
    const double ratio = std::exp(log_gamma(q - alpha + 1.0) - log_gamma(q - alpha + 1.5));
    return std::sqrt(2.0 / mu) * ratio * integral_rq_f(alpha, q, cfg);
}

namespace {

// f_alpha extended by continuity to r = 1 (the F integrand evaluates there).
double f_alpha_ext(double alpha, double r) {
    if (r >= 1.0) return 1.0;
    return f_alpha(alpha, r);
}

}  // namespace

double F_const(double mu, double alpha, double a, const QuadratureConfig& cfg) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("F_const: mu must be finite and > 0");
    if (!(alpha >= 1.0)) throw std::invalid_argument("F_const: requires alpha >= 1");
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("F_const: a must be in (0,1]");
    if (a == 1.0) return 0.0;
    // eta = 1 - u^2 removes the 1/sqrt(1-eta) endpoint singularity
    auto integrand = [&](double u) {
        const double eta = 1.0 - u * u;
        return 2.0 * f_alpha_ext(alpha, a / eta) * std::pow(eta, -alpha);
    };
    const double integral = detail::adaptive_simpson(integrand, 0.0, std::sqrt(1.0 - a), cfg);
    return integral / std::sqrt(2.0 * M_PI * mu);
}

double moment_asymptote(double mu, double alpha, double q, double t, const GapLaw& gap_law) {
    if (!(q > 0.0)) throw std::invalid_argument("moment_asymptote: q must be > 0");
    if (!(t > 0.0)) throw std::invalid_argument("moment_asymptote: t must be > 0");
    if (!std::isfinite(mu) || !(mu > 0.0))
        throw std::invalid_argument("moment_asymptote: requires a finite mean gap");
    double index = 0.0;
    if (!gap_law.regularly_varying(&index) || index != alpha)
        throw std::invalid_argument(
            "moment_asymptote: gap law must be regularly varying with the given alpha");
    const double law_mean = gap_law.mean();
    if (!std::isfinite(law_mean) || std::fabs(law_mean - mu) > 1e-9 * std::fabs(mu))
        throw std::invalid_argument("moment_asymptote: mu does not match the gap law mean");

    const double corner = 2.0 * alpha - 1.0;
    const double diffusive =
        gaussian_abs_moment(q) * std::pow(mu, 0.5 * q) * std::pow(t, 0.5 * q);
    if (q < corner || (q == corner && alpha == 1.0)) return diffusive;
    const double ballistic = d_const(mu, alpha, q) * std::pow(t, q + 0.5) * gap_law.tail(t);
    if (q == corner) return diffusive + ballistic;
    return ballistic;
}

double gamma_exponent(double alpha, double q) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("gamma_exponent: alpha must be >= 1");
    if (!(q > 0.0)) throw std::invalid_argument("gamma_exponent: q must be > 0");
    return q <= 2.0 * alpha - 1.0 ? 0.5 * q : q + 0.5 - alpha;
}

}  // namespace levylab
