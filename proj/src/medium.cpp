#include "levylab/medium.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace levylab {

namespace {

constexpr std::uint64_t kPositiveSideStream = 0x6d656430;  // medium, positive gaps
constexpr std::uint64_t kNegativeSideStream = 0x6d656431;  // medium, negative gaps
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

GapLaw GapLaw::pareto(double tail_index, double x_min) {
    if (!(tail_index > 0.0)) throw std::invalid_argument("pareto: tail_index must be > 0");
    if (!(x_min > 0.0)) throw std::invalid_argument("pareto: x_min must be > 0");
    GapLaw law;
    law.kind = Kind::pareto;
    law.tail_index = tail_index;
    law.x_min = x_min;
    return law;
}

GapLaw GapLaw::shifted_exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("shifted_exponential: rate must be > 0");
    GapLaw law;
    law.kind = Kind::shifted_exponential;
    law.rate = rate;
    return law;
}

GapLaw GapLaw::deterministic(double value) {
    if (!(value > 0.0)) throw std::invalid_argument("deterministic: value must be > 0");
    GapLaw law;
    law.kind = Kind::deterministic;
    law.value = value;
    return law;
}

double GapLaw::mean() const {
    switch (kind) {
        case Kind::pareto:
            return tail_index > 1.0 ? tail_index * x_min / (tail_index - 1.0) : kInf;
        case Kind::shifted_exponential:
            return 1.0 + 1.0 / rate;
        case Kind::deterministic:
            return value;
    }
    return kInf;
}

double GapLaw::tail(double x) const {
    switch (kind) {
        case Kind::pareto:
            return x <= x_min ? 1.0 : std::pow(x / x_min, -tail_index);
        case Kind::shifted_exponential:
            return x <= 1.0 ? 1.0 : std::exp(-rate * (x - 1.0));
        case Kind::deterministic:
            return x < value ? 1.0 : 0.0;
    }
    return 0.0;
}

double GapLaw::sample(Rng& rng) const {
    switch (kind) {
        case Kind::pareto:
            return x_min * std::pow(rng.uniform_pos(), -1.0 / tail_index);
        case Kind::shifted_exponential:
            return 1.0 + rng.exponential() / rate;
        case Kind::deterministic:
            return value;
    }
    return value;
}

double GapLaw::stable_index() const {
    if (kind == Kind::pareto) return std::min(tail_index, 2.0);
    return 2.0;
}

bool GapLaw::regularly_varying(double* index_out) const {
    if (kind != Kind::pareto) return false;
    if (index_out) *index_out = tail_index;
    return true;
}

std::string GapLaw::describe() const {
    char buf[96];
    switch (kind) {
        case Kind::pareto:
            std::snprintf(buf, sizeof buf, "pareto(%g,%g)", tail_index, x_min);
            break;
        case Kind::shifted_exponential:
            std::snprintf(buf, sizeof buf, "shifted_exponential(%g)", rate);
            break;
        case Kind::deterministic:
            std::snprintf(buf, sizeof buf, "deterministic(%g)", value);
            break;
    }
    return buf;
}

double gap_tail(const GapLaw& law, double x) { return law.tail(x); }

MediumWindow::MediumWindow(GapLaw law, std::uint64_t seed)
    : law_(law),
      seed_(seed),
      pos_rng_(Rng::substream(seed, kPositiveSideStream, 0)),
      neg_rng_(Rng::substream(seed, kNegativeSideStream, 0)) {}

void MediumWindow::extend_positive(long long upto) {
    const auto want = static_cast<std::size_t>(upto);
    if (pos_gaps_.capacity() < want) pos_gaps_.reserve(std::max(want, pos_gaps_.capacity() * 2));
    if (pos_prefix_.capacity() < want)
        pos_prefix_.reserve(std::max(want, pos_prefix_.capacity() * 2));
    while (pos_gaps_.size() < want) {
        const double g = law_.sample(pos_rng_);
        pos_gaps_.push_back(g);
        pos_prefix_.push_back((pos_prefix_.empty() ? 0.0 : pos_prefix_.back()) + g);
    }
}

void MediumWindow::extend_negative(long long upto) {
    const auto want = static_cast<std::size_t>(upto);
    if (neg_gaps_.capacity() < want) neg_gaps_.reserve(std::max(want, neg_gaps_.capacity() * 2));
    if (neg_prefix_.capacity() < want)
        neg_prefix_.reserve(std::max(want, neg_prefix_.capacity() * 2));
    while (neg_gaps_.size() < want) {
        const double g = law_.sample(neg_rng_);
        neg_gaps_.push_back(g);
        neg_prefix_.push_back((neg_prefix_.empty() ? 0.0 : neg_prefix_.back()) + g);
    }
}

double MediumWindow::target(long long k) {
    if (k == 0) return 0.0;
    if (k > 0) {
        extend_positive(k);
        return pos_prefix_[static_cast<std::size_t>(k - 1)];
    }
    // omega_k = -(zeta_0 + zeta_{-1} + ... + zeta_{k+1}) for k < 0
    extend_negative(-k);
    return -neg_prefix_[static_cast<std::size_t>(-k - 1)];
}

double MediumWindow::gap(long long k) {
    if (k >= 1) {
        extend_positive(k);
        return pos_gaps_[static_cast<std::size_t>(k - 1)];
    }
    extend_negative(1 - k);
    return neg_gaps_[static_cast<std::size_t>(-k)];
}

double rescaled_medium(MediumWindow& window, long long n, double s, RescaleMode mode) {
    if (n < 1) throw std::invalid_argument("rescaled_medium: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double alpha = window.law().stable_index();
    switch (mode) {
        case RescaleMode::fluid: {
            const long long k = s >= 0 ? static_cast<long long>(std::floor(nd * s))
                                       : static_cast<long long>(std::ceil(nd * s));
            return window.target(k) / nd;
        }
        case RescaleMode::raw: {
            const long long k = s >= 0 ? static_cast<long long>(std::floor(nd * s))
                                       : static_cast<long long>(std::ceil(nd * s));
            return window.target(k) / std::pow(nd, 1.0 / alpha);
        }
        case RescaleMode::centered: {
            const double mu = window.law().mean();
            if (!std::isfinite(mu))
                throw std::invalid_argument("rescaled_medium: centered mode requires a finite mean gap");
            const double norm = std::pow(nd, 1.0 / alpha);
            if (s >= 0) {
                const long long k = static_cast<long long>(std::floor(nd * s));
                return (window.target(k) - mu * static_cast<double>(k)) / norm;
            }
            // -(sum_{i=ceil((n-1)s)}^{0} (zeta_i - mu)) / n^{1/alpha}
            const long long kp = static_cast<long long>(std::ceil((nd - 1.0) * s));
            return (window.target(kp - 1) + mu * static_cast<double>(1 - kp)) / norm;
        }
    }
    throw std::invalid_argument("rescaled_medium: unknown mode");
}

void write_medium_csv(std::ostream& os, MediumWindow& window, long long k_min, long long k_max) {
    if (k_min > k_max) throw std::invalid_argument("write_medium_csv: empty range");
    os << "k,omega\n";
    char buf[48];
    for (long long k = k_min; k <= k_max; ++k) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g\n", k, window.target(k));
        os << buf;
    }
}

}  // namespace levylab
