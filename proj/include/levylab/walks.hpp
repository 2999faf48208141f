#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levylab/medium.hpp"
#include "levylab/rng.hpp"

namespace levylab {

// Law of the i.i.d. integer increments xi_n of the underlying walk.
//   simple_symmetric  +-1 with probability 1/2
//   lazy_symmetric    0 w.p. hold_prob, +-1 w.p. (1-hold_prob)/2
//   symmetric_zeta    P(xi = +-j) proportional to j^{-beta-1}, j >= 1
//   drifted_zeta      same magnitudes, sign weights (1+-r)/2 tuned so the mean
//                     equals the requested drift; beta-stable domain
struct IncrementLaw {
    enum class Kind { simple_symmetric, lazy_symmetric, symmetric_zeta, drifted_zeta };

    Kind kind = Kind::simple_symmetric;
    double hold_prob = 0.0;
    double beta = 0.0;

    // cached moments
    double drift = 0.0;          // nu
    double second_moment = 1.0;  // V_xi (may be infinity)
    double abs_moment = 1.0;     // M_xi
    double moment_ceiling = 0.0; // q-bar = sup{q : E|xi|^q < inf}

    static IncrementLaw simple_symmetric();
    static IncrementLaw lazy_symmetric(double hold_prob);
    static IncrementLaw symmetric_zeta(double beta);
    static IncrementLaw drifted_zeta(double beta, double drift);

    long long sample(Rng& rng) const;

    // Hypotheses of the quenched theorems: symmetric, non-increasing in |j|,
    // finite variance.
    bool symmetric_unimodal_finite_variance() const;
    // Index of the stable law the (centered) increment sums attract to.
    double stable_index() const;
    // Skewness of that limit: (c+ - c-)/(c+ + c-) for the two-sided power tails.
    double stable_skewness() const;
    std::string describe() const;

  private:
    double positive_prob_ = 0.5;
    // cumulative magnitude table P(J <= j+1); draws beyond the table use a
    // continuous power-law tail (total probability below ~1e-7), so the table
    // never grows and concurrent sampling needs no locks
    std::vector<double> magnitude_cdf_;
    long long sample_magnitude(Rng& rng) const;
    void build_magnitude_table();
};

struct WalkPath {
    std::vector<long long> steps;  // S_0 = 0, S_1, ..., S_N
};

struct FlightPath {
    std::vector<double> positions;  // Y_n = omega_{S_n}
};

struct GasTrajectory {
    std::vector<double> collision_times;  // T_0 = 0 <= T_1 <= ...
    std::vector<double> positions;        // Y_0 = 0, Y_1, ...
};

WalkPath sample_walk(const IncrementLaw& law, long long n_steps, Rng& rng);

// Y_n = omega_{S_n}; extends the window as needed.
FlightPath flight(MediumWindow& window, const WalkPath& path);

// Unit-speed interpolation clock: T_{n+1} = T_n + |Y_{n+1} - Y_n|.
GasTrajectory interpolate(const FlightPath& flight);

// X(t) by binary search on the collision times; zero-length segments are
// instantaneous. Throws when t lies beyond the last collision time.
double position_at(const GasTrajectory& traj, double t);

// S_n after n steps, without materializing the path.
long long walk_terminal(const IncrementLaw& law, long long n_steps, Rng& rng);

struct GasRun {
    WalkPath walk;
    FlightPath flight;
    GasTrajectory traj;
};

// Simulates enough underlying steps for the trajectory to cover time t:
// starts from ceil(c*t) steps (c = 2/mu when the mean gap is finite, c = 2
// otherwise) and doubles the horizon until T_n >= t.
GasRun simulate_gas(const IncrementLaw& law, MediumWindow& window, double t, Rng& rng);

// Streaming X(t): walks until the clock passes t and interpolates the crossing
// segment; no path storage.
double gas_position_at(const IncrementLaw& law, MediumWindow& window, double t, Rng& rng);

// Rows "n,s,y,t".
void write_trajectory_csv(std::ostream& os, const GasRun& run);

}  // namespace levylab
