#pragma once

#include <vector>

#include "levylab/medium.hpp"
#include "levylab/stable.hpp"

namespace levylab {

// Joint marginals of the subordinated process Z(W(t)): an inner stable process
// W evaluated at the requested times, and an outer two-sided process Z read
// off a grid of grid_cells i.i.d. stable increments spanning the inner values.
// One Z path serves all times of a draw.
struct CompositionSpec {
    StableLaw outer;  // law of Z(1)
    StableLaw inner;  // law of W(1)
    long long grid_cells = 100000;

    CompositionSpec(StableLaw outer_law, StableLaw inner_law, long long cells = 100000);
};

std::vector<double> compose_marginals(const CompositionSpec& spec,
                                      const std::vector<double>& times, Rng& rng);

struct ComposeDraw {
    std::vector<double> inner_values;  // W(t_i)
    std::vector<double> values;        // Z(W(t_i))
};

// Same draw with the inner values exposed (path-property tests).
ComposeDraw compose_draw(const CompositionSpec& spec, const std::vector<double>& times, Rng& rng);

// Discrete scenery construction of the subordinated-by-inverse-clock limit
// marginal: a simple symmetric lattice walk with site local times against a
// fresh heavy-tailed gap sequence builds the clock
//   Delta_k = mxi * sum_j gap(S_j) / m^{(alpha+1)/(2 alpha)},
// the first k with Delta_k >= t inverts the clock, and the draw is the
// rescaled medium position omega_{S_k} / m^{1/(2 alpha)}.
struct SceneryApproximation {
    long long lattice_steps = 1000000;  // m, the discretization scale
    GapLaw gaps;                        // pareto with tail index in (0,1)
    double mxi = 1.0;                   // first absolute moment of the lattice walk

    SceneryApproximation(long long m, GapLaw gap_law);
};

double ks_marginal(const SceneryApproximation& scenery, double t, Rng& rng);

struct SceneryDraw {
    double value = 0.0;
    long long steps_used = 0;
    long long total_site_visits = 0;  // equals steps_used by construction
    double raw_clock = 0.0;
};

SceneryDraw ks_marginal_draw(const SceneryApproximation& scenery, double t, Rng& rng);

}  // namespace levylab
