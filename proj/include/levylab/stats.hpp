#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "levylab/medium.hpp"
#include "levylab/walks.hpp"

namespace levylab {

enum class Observable { y_at, x_at };

struct Protocol {
    enum class Kind { quenched, annealed };
    Kind kind = Kind::annealed;
    std::uint64_t medium_seed = 0;  // quenched only
    std::string describe() const;
};

// One quenched or annealed sample of an observable, one value per replica.
// Replica i draws from substreams derived from (master_seed, stream, i), so
// the result is bit-exact reproducible regardless of worker count.
struct EnsembleResult {
    std::string observable;
    Protocol protocol;
    double point = 0.0;  // n for Y_at, t for X_at
    std::string gap_law;
    std::string increment_law;
    std::uint64_t master_seed = 0;
    std::vector<double> samples;

    long long replicas() const { return static_cast<long long>(samples.size()); }
};

EnsembleResult quenched_ensemble(const GapLaw& gaps, const IncrementLaw& increments,
                                 Observable observable, double point, long long replicas,
                                 std::uint64_t medium_seed, std::uint64_t master_seed,
                                 int workers = 0);

EnsembleResult annealed_ensemble(const GapLaw& gaps, const IncrementLaw& increments,
                                 Observable observable, double point, long long replicas,
                                 std::uint64_t master_seed, int workers = 0);

struct KSResult {
    double statistic = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double p_value = 1.0;
};

// Exact two-sample statistic by merge scan; p-value from the asymptotic
// Kolmogorov distribution at effective size n*m/(n+m).
KSResult ks_two_sample(std::vector<double> xs, std::vector<double> ys);

// Upper tail Q(lambda) of the Kolmogorov distribution.
double kolmogorov_q(double lambda);

// Mean of |x|^q with compensated summation (replica-order independent).
double empirical_abs_moment(const std::vector<double>& samples, double q);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::size_t points = 0;
};

// Least-squares slope of log(moment) against log(scale). Needs >= 3 points
// with strictly increasing positive scales and positive moments; two or more
// decades of scale are recommended for a trustworthy exponent.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& scale_moment);

struct TailEstimate {
    double p_hat = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    long long exceedances = 0;
    long long n = 0;
};

// Empirical P(X > threshold) with a 95% Wilson interval.
TailEstimate tail_probability(const std::vector<double>& samples, double threshold);

struct RatePoint {
    double t = 0.0;
    long long exceedances = 0;
    double p_hat = 0.0;
    double rate = 0.0;  // log(max(p_hat, 1/replicas)) / sqrt(a t)
};

// Quenched deviation rates of |X(t)| > a t over a time grid; the floor
// 1/replicas guards empty exceedance counts.
std::vector<RatePoint> stretched_exp_rate(const GapLaw& gaps, const IncrementLaw& increments,
                                          double a, const std::vector<double>& t_grid,
                                          long long replicas, std::uint64_t medium_seed,
                                          std::uint64_t master_seed, int workers = 0);

// (x - median) / IQR; scale-free comparisons against limit laws of unknown scale.
std::vector<double> studentized(std::vector<double> xs);

// Type-7 quantile of a sample (copied and sorted internally).
double quantile(std::vector<double> xs, double p);

void write_ensemble_csv(std::ostream& os, const EnsembleResult& result);
void write_ensemble_summary_json(std::ostream& os, const EnsembleResult& result);

// Runs fn(0..count-1) across workers (0 = hardware concurrency); fn must write
// only to its own slot.
void parallel_for(long long count, int workers, const std::function<void(long long)>& fn);

}  // namespace levylab
