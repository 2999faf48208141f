#pragma once

#include "levylab/rng.hpp"

namespace levylab {

// Alpha-stable law in the parametrization with characteristic exponent
//   -|scale * theta|^index * (1 - i * skewness * sgn(theta) * tan(pi*index/2)).
// index = 1 is excluded (parametrization discontinuity). index = 2 is the
// Gaussian case: skewness is irrelevant and the law is N(location, 2*scale^2).
// index in (0,1) with skewness 1 and location 0 is supported on (0, inf).
struct StableLaw {
    double index;
    double skewness;
    double scale;
    double location;

    StableLaw(double index, double skewness, double scale, double location);

    // Gaussian(mean, variance) in the convention above: scale = sqrt(variance/2).
    static StableLaw gaussian(double mean, double variance);
};

// One draw, Chambers-Mallows-Stuck transform of a uniform and an exponential
// variate (two uniforms consumed per call).
double sample_stable(const StableLaw& law, Rng& rng);

// Marginal at time t >= 0 of the Levy process with X(1) ~ law, via
// self-similarity: location * t + scale * t^{1/index} * standard draw.
double levy_marginal(const StableLaw& law, double t, Rng& rng);

// Marginal of the two-sided process built from two i.i.d. one-sided processes:
// Z(s) for s >= 0, -Z(-s) for s < 0.
double two_sided_marginal(const StableLaw& law, double s, Rng& rng);

}  // namespace levylab
