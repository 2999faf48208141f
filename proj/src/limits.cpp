#include "levylab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levylab {

CompositionSpec::CompositionSpec(StableLaw outer_law, StableLaw inner_law, long long cells)
    : outer(outer_law), inner(inner_law), grid_cells(cells) {
    if (grid_cells < 1000)
        throw std::invalid_argument("CompositionSpec: grid_cells must be >= 1000");
}

ComposeDraw compose_draw(const CompositionSpec& spec, const std::vector<double>& times, Rng& rng) {
    if (times.empty()) throw std::invalid_argument("compose_marginals: times must be nonempty");
    double prev_t = 0.0;
    for (const double t : times) {
        if (!(t >= prev_t))
            throw std::invalid_argument("compose_marginals: times must be nondecreasing and >= 0");
        prev_t = t;
    }

    ComposeDraw draw;
    draw.inner_values.reserve(times.size());
    double w = 0.0;
    double t0 = 0.0;
    for (const double t : times) {
        const double dt = t - t0;
        if (dt > 0.0) w += levy_marginal(spec.inner, dt, rng);
        draw.inner_values.push_back(w);
        t0 = t;
    }

    double lo = 0.0;
    double hi = 0.0;
    for (const double v : draw.inner_values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    draw.values.assign(times.size(), 0.0);
    if (hi == lo) return draw;  // every inner value is 0

    const double h = (hi - lo) / static_cast<double>(spec.grid_cells);

    // cell index of w on its side of the origin; distinct inner values must
    // land in distinct cells or the grid cannot resolve them
    auto node_of = [&](double v) { return static_cast<long long>(std::floor(std::fabs(v) / h)); };
    for (std::size_t i = 0; i < draw.inner_values.size(); ++i)
        for (std::size_t j = i + 1; j < draw.inner_values.size(); ++j) {
            const double a = draw.inner_values[i];
            const double b = draw.inner_values[j];
            if (a != b && ((a >= 0.0) == (b >= 0.0)) && node_of(a) == node_of(b))
                throw std::runtime_error(
                    "compose_marginals: grid too coarse to resolve distinct inner values");
        }

    long long pos_nodes = 0;
    long long neg_nodes = 0;
    for (const double v : draw.inner_values) {
        if (v >= 0.0)
            pos_nodes = std::max(pos_nodes, node_of(v));
        else
            neg_nodes = std::max(neg_nodes, node_of(v));
    }

    // Z on the positive side, then the negative side, each anchored at Z(0)=0
    std::vector<double> z_pos(static_cast<std::size_t>(pos_nodes) + 1, 0.0);
    for (long long j = 1; j <= pos_nodes; ++j)
        z_pos[static_cast<std::size_t>(j)] =
            z_pos[static_cast<std::size_t>(j - 1)] + levy_marginal(spec.outer, h, rng);
    std::vector<double> z_neg(static_cast<std::size_t>(neg_nodes) + 1, 0.0);
    for (long long j = 1; j <= neg_nodes; ++j)
        z_neg[static_cast<std::size_t>(j)] =
            z_neg[static_cast<std::size_t>(j - 1)] + levy_marginal(spec.outer, h, rng);

    for (std::size_t i = 0; i < draw.inner_values.size(); ++i) {
        const double v = draw.inner_values[i];
        const long long node = node_of(v);
        draw.values[i] = v >= 0.0 ? z_pos[static_cast<std::size_t>(node)]
                                  : -z_neg[static_cast<std::size_t>(node)];
    }
    return draw;
}

std::vector<double> compose_marginals(const CompositionSpec& spec, const std::vector<double>& times,
                                      Rng& rng) {
    return compose_draw(spec, times, rng).values;
}

SceneryApproximation::SceneryApproximation(long long m, GapLaw gap_law)
    : lattice_steps(m), gaps(gap_law) {
    if (m < 1) throw std::invalid_argument("SceneryApproximation: lattice_steps must be >= 1");
    double index = 0.0;
    if (!gap_law.regularly_varying(&index) || !(index > 0.0 && index < 1.0))
        throw std::invalid_argument(
            "SceneryApproximation: gap law must be pareto with tail index in (0,1)");
}

SceneryDraw ks_marginal_draw(const SceneryApproximation& scenery, double t, Rng& rng) {
    if (!(t >= 0.0)) throw std::invalid_argument("ks_marginal: t must be >= 0");
    SceneryDraw draw;
    if (t == 0.0) return draw;

    const double alpha = scenery.gaps.tail_index;
    const double m = static_cast<double>(scenery.lattice_steps);
    const double clock_norm = std::pow(m, (alpha + 1.0) / (2.0 * alpha));
    const double space_norm = std::pow(m, 1.0 / (2.0 * alpha));
    const double target_clock = t * clock_norm;

    MediumWindow window(scenery.gaps, rng.next_u64());
    const long long cap = 64 * scenery.lattice_steps + 1024;
    long long site = 0;
    double position = 0.0;  // omega at the current site
    while (true) {
        if (draw.steps_used >= cap)
            throw std::runtime_error("ks_marginal: clock did not reach t; increase lattice_steps");
        const long long step = (rng.next_u64() >> 63) ? 1 : -1;
        site += step;
        // length of the edge crossed by this step (zeta_site going up,
        // zeta_{site+1} coming down); the site-local-time clock sums these
        const double gap = window.gap(step > 0 ? site : site + 1);
        if (!(gap > 0.0)) throw std::logic_error("ks_marginal: clock increment must be positive");
        const double increment = scenery.mxi * gap;
        ++draw.steps_used;
        ++draw.total_site_visits;
        if (draw.raw_clock + increment >= target_clock) {
            // the clock crosses t inside this flight: interpolate at unit
            // speed, as the gas does; returning the landing target instead
            // would be a different law at first order for infinite-mean gaps
            const double traversed = (target_clock - draw.raw_clock) / scenery.mxi;
            draw.raw_clock = target_clock;
            draw.value = (position + static_cast<double>(step) * traversed) / space_norm;
            return draw;
        }
        draw.raw_clock += increment;
        position = window.target(site);
    }
}

double ks_marginal(const SceneryApproximation& scenery, double t, Rng& rng) {
    return ks_marginal_draw(scenery, t, rng).value;
}

}  // namespace levylab
