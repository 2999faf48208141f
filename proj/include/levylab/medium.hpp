#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "levylab/rng.hpp"

namespace levylab {

// Law of the i.i.d. positive gaps zeta_k between consecutive targets.
struct GapLaw {
    enum class Kind { pareto, shifted_exponential, deterministic };

    Kind kind = Kind::deterministic;
    double tail_index = 0.0;  // pareto: P(zeta > x) = (x/x_min)^(-tail_index)
    double x_min = 1.0;       // pareto support start
    double rate = 1.0;        // shifted_exponential: zeta = 1 + Exp(rate)
    double value = 1.0;       // deterministic

    static GapLaw pareto(double tail_index, double x_min = 1.0);
    static GapLaw shifted_exponential(double rate);
    static GapLaw deterministic(double value);

    // Mean gap; +infinity for pareto with tail_index <= 1.
    double mean() const;
    // Exact tail P(zeta > x).
    double tail(double x) const;
    double sample(Rng& rng) const;
    // Index of the stable law the (centered) gap sums attract to: the pareto
    // tail index capped at 2, and 2 for the finite-variance variants.
    double stable_index() const;
    // True when the tail is regularly varying with a finite index (pareto).
    bool regularly_varying(double* index_out = nullptr) const;
    std::string describe() const;
};

// tau_zeta(x) := P(zeta_1 > x)
double gap_tail(const GapLaw& law, double x);

// The two-sided medium omega = (omega_k), omega_0 = 0, with i.i.d. positive
// gaps; grown lazily and append-only. Each side draws its gaps in index order
// from a dedicated substream of the window seed, so two windows with the same
// seed materialize identical targets regardless of query order. Single writer;
// concurrent reads are safe only after pre-extension.
class MediumWindow {
public:
    MediumWindow(GapLaw law, std::uint64_t seed);

    double target(long long k);  // omega_k, extends lazily
    double gap(long long k);     // zeta_k = omega_k - omega_{k-1}

    const GapLaw& law() const { return law_; }
    std::uint64_t seed() const { return seed_; }  // medium identity token
    long long materialized_positive() const { return static_cast<long long>(pos_prefix_.size()); }
    long long materialized_negative() const { return static_cast<long long>(neg_prefix_.size()); }

private:
    void extend_positive(long long upto);
    void extend_negative(long long upto);

    GapLaw law_;
    std::uint64_t seed_ = 0;
    Rng pos_rng_;
    Rng neg_rng_;
    std::vector<double> pos_gaps_;    // zeta_1, zeta_2, ...
    std::vector<double> pos_prefix_;  // omega_1, omega_2, ...
    std::vector<double> neg_gaps_;    // zeta_0, zeta_-1, ... (in that order)
    std::vector<double> neg_prefix_;  // partial sums of neg_gaps_
};

enum class RescaleMode { fluid, raw, centered };

// Finite-n rescaled medium process at s (floor index for s >= 0, ceiling for
// s < 0):
//   fluid     omega_{[ns]} / n
//   raw       omega_{[ns]} / n^{1/alpha}
//   centered  (partial sums of zeta_i - mu) / n^{1/alpha}
// centered requires a finite mean gap.
double rescaled_medium(MediumWindow& window, long long n, double s, RescaleMode mode);

// Snapshot rows "k,omega" for k in [k_min, k_max].
void write_medium_csv(std::ostream& os, MediumWindow& window, long long k_min, long long k_max);

}  // namespace levylab
