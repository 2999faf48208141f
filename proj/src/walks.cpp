#include "levylab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "levylab/constants.hpp"

namespace levylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMagnitudeTableSize = 1 << 16;

}  // namespace

IncrementLaw IncrementLaw::simple_symmetric() {
    IncrementLaw law;
    law.kind = Kind::simple_symmetric;
    law.drift = 0.0;
    law.second_moment = 1.0;
    law.abs_moment = 1.0;
    law.moment_ceiling = kInf;
    return law;
}

IncrementLaw IncrementLaw::lazy_symmetric(double hold_prob) {
    if (!(hold_prob >= 0.0 && hold_prob < 1.0))
        throw std::invalid_argument("lazy_symmetric: hold_prob must be in [0,1)");
    IncrementLaw law;
    law.kind = Kind::lazy_symmetric;
    law.hold_prob = hold_prob;
    law.drift = 0.0;
    law.second_moment = 1.0 - hold_prob;
    law.abs_moment = 1.0 - hold_prob;
    law.moment_ceiling = kInf;
    return law;
}

IncrementLaw IncrementLaw::symmetric_zeta(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("symmetric_zeta: beta must be > 0");
    IncrementLaw law;
    law.kind = Kind::symmetric_zeta;
    law.beta = beta;
    law.drift = 0.0;
    const double z1 = detail::riemann_zeta(beta + 1.0);
    law.second_moment = beta > 2.0 ? detail::riemann_zeta(beta - 1.0) / z1 : kInf;
    law.abs_moment = beta > 1.0 ? detail::riemann_zeta(beta) / z1 : kInf;
    law.moment_ceiling = beta;
    law.positive_prob_ = 0.5;
    law.build_magnitude_table();
    return law;
}

IncrementLaw IncrementLaw::drifted_zeta(double beta, double drift) {
    if (!(beta > 1.0)) throw std::invalid_argument("drifted_zeta: beta must be > 1 (mean must exist)");
    IncrementLaw law;
    law.kind = Kind::drifted_zeta;
    law.beta = beta;
    law.drift = drift;
    const double z1 = detail::riemann_zeta(beta + 1.0);
    const double zb = detail::riemann_zeta(beta);
    const double r = drift * z1 / zb;  // sign-weight asymmetry, mean = r zeta(beta)/zeta(beta+1)
    if (!(std::fabs(r) < 1.0))
        throw std::invalid_argument("drifted_zeta: |drift| too large for this beta");
    law.positive_prob_ = 0.5 * (1.0 + r);
    law.second_moment = beta > 2.0 ? detail::riemann_zeta(beta - 1.0) / z1 : kInf;
    law.abs_moment = zb / z1;
    law.moment_ceiling = beta;
    law.build_magnitude_table();
    return law;
}

void IncrementLaw::build_magnitude_table() {
    const double norm = detail::riemann_zeta(beta + 1.0);
    magnitude_cdf_.resize(kMagnitudeTableSize);
    double acc = 0.0;
    for (std::size_t j = 0; j < kMagnitudeTableSize; ++j) {
        acc += std::pow(static_cast<double>(j + 1), -(beta + 1.0)) / norm;
        magnitude_cdf_[j] = acc;
    }
}

long long IncrementLaw::sample_magnitude(Rng& rng) const {
    const double u = rng.uniform01();
    if (u < magnitude_cdf_.back()) {
        const auto it = std::lower_bound(magnitude_cdf_.begin(), magnitude_cdf_.end(), u);
        return static_cast<long long>(it - magnitude_cdf_.begin()) + 1;
    }
    // beyond the table: conditional continuous power-law tail
    const double v = (u - magnitude_cdf_.back()) / (1.0 - magnitude_cdf_.back());
    const double jt = static_cast<double>(kMagnitudeTableSize);
    const double j = std::floor(jt * std::pow(1.0 - v, -1.0 / beta));
    return std::max<long long>(static_cast<long long>(kMagnitudeTableSize) + 1,
                               static_cast<long long>(std::min(j, 9.0e15)));
}

long long IncrementLaw::sample(Rng& rng) const {
    switch (kind) {
        case Kind::simple_symmetric:
            return (rng.next_u64() >> 63) ? 1 : -1;
        case Kind::lazy_symmetric: {
            const double u = rng.uniform01();
            if (u < hold_prob) return 0;
            return u < hold_prob + 0.5 * (1.0 - hold_prob) ? -1 : 1;
        }
        case Kind::symmetric_zeta: {
            const long long j = sample_magnitude(rng);
            return (rng.next_u64() >> 63) ? j : -j;
        }
        case Kind::drifted_zeta: {
            const long long j = sample_magnitude(rng);
            return rng.uniform01() < positive_prob_ ? j : -j;
        }
    }
    return 0;
}

bool IncrementLaw::symmetric_unimodal_finite_variance() const {
    switch (kind) {
        case Kind::simple_symmetric:
        case Kind::lazy_symmetric:
            return true;
        case Kind::symmetric_zeta:
            return beta > 2.0;
        case Kind::drifted_zeta:
            return false;
    }
    return false;
}

double IncrementLaw::stable_index() const {
    switch (kind) {
        case Kind::simple_symmetric:
        case Kind::lazy_symmetric:
            return 2.0;
        case Kind::symmetric_zeta:
        case Kind::drifted_zeta:
            return std::min(beta, 2.0);
    }
    return 2.0;
}

double IncrementLaw::stable_skewness() const {
    if (kind == Kind::drifted_zeta && beta < 2.0) return 2.0 * positive_prob_ - 1.0;
    return 0.0;
}

std::string IncrementLaw::describe() const {
    char buf[96];
    switch (kind) {
        case Kind::simple_symmetric:
            return "simple_symmetric";
        case Kind::lazy_symmetric:
            std::snprintf(buf, sizeof buf, "lazy_symmetric(%g)", hold_prob);
            return buf;
        case Kind::symmetric_zeta:
            std::snprintf(buf, sizeof buf, "symmetric_zeta(%g)", beta);
            return buf;
        case Kind::drifted_zeta:
            std::snprintf(buf, sizeof buf, "drifted_zeta(%g,%g)", beta, drift);
            return buf;
    }
    return "";
}

WalkPath sample_walk(const IncrementLaw& law, long long n_steps, Rng& rng) {
    if (n_steps < 1) throw std::invalid_argument("sample_walk: n_steps must be >= 1");
    WalkPath path;
    path.steps.resize(static_cast<std::size_t>(n_steps) + 1);
    path.steps[0] = 0;
    long long s = 0;
    for (long long n = 1; n <= n_steps; ++n) {
        s += law.sample(rng);
        path.steps[static_cast<std::size_t>(n)] = s;
    }
    return path;
}

FlightPath flight(MediumWindow& window, const WalkPath& path) {
    FlightPath fp;
    fp.positions.reserve(path.steps.size());
    for (const long long s : path.steps) fp.positions.push_back(window.target(s));
    return fp;
}

GasTrajectory interpolate(const FlightPath& flight) {
    GasTrajectory traj;
    traj.positions = flight.positions;
    traj.collision_times.resize(flight.positions.size());
    double t = 0.0;
    traj.collision_times[0] = 0.0;
    for (std::size_t n = 1; n < flight.positions.size(); ++n) {
        t += std::fabs(flight.positions[n] - flight.positions[n - 1]);
        traj.collision_times[n] = t;
    }
    return traj;
}

double position_at(const GasTrajectory& traj, double t) {
    const auto& times = traj.collision_times;
    if (times.empty() || t < 0.0 || t > times.back())
        throw std::out_of_range("position_at: t beyond the trajectory horizon");
    if (t == times.back()) return traj.positions.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t n = static_cast<std::size_t>(it - times.begin()) - 1;
    const double y0 = traj.positions[n];
    const double y1 = traj.positions[n + 1];
    const double sgn = y1 > y0 ? 1.0 : (y1 < y0 ? -1.0 : 0.0);
    return y0 + sgn * (t - times[n]);
}

long long walk_terminal(const IncrementLaw& law, long long n_steps, Rng& rng) {
    if (n_steps < 1) throw std::invalid_argument("walk_terminal: n_steps must be >= 1");
    long long s = 0;
    for (long long n = 0; n < n_steps; ++n) s += law.sample(rng);
    return s;
}

namespace {

long long initial_horizon_steps(const IncrementLaw&, const MediumWindow& window, double t) {
    const double mu = window.law().mean();
    const double c = std::isfinite(mu) ? 2.0 / mu : 2.0;
    return std::max<long long>(1, static_cast<long long>(std::ceil(c * t)));
}

}  // namespace

GasRun simulate_gas(const IncrementLaw& law, MediumWindow& window, double t, Rng& rng) {
    if (!(t >= 0.0)) throw std::invalid_argument("simulate_gas: t must be >= 0");
    GasRun run;
    run.walk.steps.push_back(0);
    run.flight.positions.push_back(0.0);
    run.traj.collision_times.push_back(0.0);
    run.traj.positions.push_back(0.0);
    long long target_steps = initial_horizon_steps(law, window, t);
    long long s = 0;
    double y = 0.0;
    double clock = 0.0;
    long long n = 0;
    while (true) {
        while (n < target_steps) {
            s += law.sample(rng);
            const double y_next = window.target(s);
            clock += std::fabs(y_next - y);
            y = y_next;
            ++n;
            run.walk.steps.push_back(s);
            run.flight.positions.push_back(y);
            run.traj.collision_times.push_back(clock);
            run.traj.positions.push_back(y);
        }
        if (clock >= t) return run;
        target_steps *= 2;
    }
}

double gas_position_at(const IncrementLaw& law, MediumWindow& window, double t, Rng& rng) {
    if (!(t >= 0.0)) throw std::invalid_argument("gas_position_at: t must be >= 0");
    if (t == 0.0) return 0.0;
    long long s = 0;
    double y = 0.0;
    double clock = 0.0;
    while (true) {
        s += law.sample(rng);
        const double y_next = window.target(s);
        const double seg = std::fabs(y_next - y);
        if (clock + seg >= t) {
            const double sgn = y_next > y ? 1.0 : (y_next < y ? -1.0 : 0.0);
            return y + sgn * (t - clock);
        }
        clock += seg;
        y = y_next;
    }
}

void write_trajectory_csv(std::ostream& os, const GasRun& run) {
    os << "n,s,y,t\n";
    char buf[96];
    for (std::size_t n = 0; n < run.walk.steps.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%lld,%.17g,%.17g\n", n, run.walk.steps[n],
                      run.flight.positions[n], run.traj.collision_times[n]);
        os << buf;
    }
}

}  // namespace levylab
