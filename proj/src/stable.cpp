#include "levylab/stable.hpp"

#include <cmath>
#include <stdexcept>

namespace levylab {

namespace {

// Standard draw (scale 1, location 0) via Chambers-Mallows-Stuck.
double standard_stable(double alpha, double skew, Rng& rng) {
    const double v = M_PI * (rng.uniform01() - 0.5);  // uniform on (-pi/2, pi/2)
    double w = rng.exponential();
    if (w < 1e-300) w = 1e-300;
    if (alpha == 2.0) return 2.0 * std::sin(v) * std::sqrt(w);
    if (skew == 0.0) {
        const double x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
        return x * std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    }
    const double ta = skew * std::tan(0.5 * M_PI * alpha);
    const double b = std::atan(ta) / alpha;
    const double s = std::pow(1.0 + ta * ta, 0.5 / alpha);
    const double x = s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha);
    return x * std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

}  // namespace

StableLaw::StableLaw(double index_, double skewness_, double scale_, double location_)
    : index(index_), skewness(skewness_), scale(scale_), location(location_) {
    if (!(index > 0.0 && index <= 2.0))
        throw std::invalid_argument("StableLaw: stability index must be in (0,2]");
    if (index == 1.0)
        throw std::invalid_argument("StableLaw: stability index 1 is not supported");
    if (!(skewness >= -1.0 && skewness <= 1.0))
        throw std::invalid_argument("StableLaw: skewness must be in [-1,1]");
    if (!(scale > 0.0)) throw std::invalid_argument("StableLaw: scale must be > 0");
}

StableLaw StableLaw::gaussian(double mean, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("StableLaw::gaussian: variance must be > 0");
    return StableLaw(2.0, 0.0, std::sqrt(0.5 * variance), mean);
}

double sample_stable(const StableLaw& law, Rng& rng) {
    return law.location + law.scale * standard_stable(law.index, law.skewness, rng);
}

double levy_marginal(const StableLaw& law, double t, Rng& rng) {
    if (!(t >= 0.0)) throw std::invalid_argument("levy_marginal: t must be >= 0");
    if (t == 0.0) return 0.0;
    return law.location * t +
           law.scale * std::pow(t, 1.0 / law.index) * standard_stable(law.index, law.skewness, rng);
}

double two_sided_marginal(const StableLaw& law, double s, Rng& rng) {
    if (s >= 0.0) return levy_marginal(law, s, rng);
    return -levy_marginal(law, -s, rng);
}

}  // namespace levylab
