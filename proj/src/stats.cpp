#include "levylab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace levylab {

namespace {

constexpr std::uint64_t kWalkStream = 1;
constexpr std::uint64_t kMediumStream = 2;

double checked_point(Observable observable, double point) {
    if (observable == Observable::y_at) {
        if (!(point >= 1.0) || point != std::floor(point))
            throw std::invalid_argument("ensemble: Y_at needs an integer point n >= 1");
    } else if (!(point >= 0.0)) {
        throw std::invalid_argument("ensemble: X_at needs t >= 0");
    }
    return point;
}

double evaluate_observable(const GapLaw& gaps, const IncrementLaw& increments,
                           Observable observable, double point, std::uint64_t window_seed,
                           Rng& walk_rng) {
    MediumWindow window(gaps, window_seed);
    if (observable == Observable::y_at) {
        const long long n = static_cast<long long>(point);
        return window.target(walk_terminal(increments, n, walk_rng));
    }
    const double x = gas_position_at(increments, window, point, walk_rng);
    if (std::fabs(x) > point * (1.0 + 1e-12) + 1e-12)
        throw std::logic_error("ensemble: |X(t)| > t, unit-speed invariant violated");
    return x;
}

EnsembleResult run_ensemble(const GapLaw& gaps, const IncrementLaw& increments,
                            Observable observable, double point, long long replicas,
                            Protocol protocol, std::uint64_t master_seed, int workers) {
    checked_point(observable, point);
    if (replicas < 1) throw std::invalid_argument("ensemble: replicas must be >= 1");
    EnsembleResult result;
    result.observable = observable == Observable::y_at ? "Y_at(n)" : "X_at(t)";
    result.protocol = protocol;
    result.point = point;
    result.gap_law = gaps.describe();
    result.increment_law = increments.describe();
    result.master_seed = master_seed;
    result.samples.resize(static_cast<std::size_t>(replicas));
    const bool quenched = protocol.kind == Protocol::Kind::quenched;
    parallel_for(replicas, workers, [&](long long i) {
        Rng walk_rng = Rng::substream(master_seed, kWalkStream, static_cast<std::uint64_t>(i));
        const std::uint64_t window_seed =
            quenched ? protocol.medium_seed
                     : derive_seed(master_seed, kMediumStream, static_cast<std::uint64_t>(i));
        result.samples[static_cast<std::size_t>(i)] =
            evaluate_observable(gaps, increments, observable, point, window_seed, walk_rng);
    });
    return result;
}

}  // namespace

std::string Protocol::describe() const {
    if (kind == Kind::annealed) return "annealed";
    char buf[64];
    std::snprintf(buf, sizeof buf, "quenched(%llu)", static_cast<unsigned long long>(medium_seed));
    return buf;
}

EnsembleResult quenched_ensemble(const GapLaw& gaps, const IncrementLaw& increments,
                                 Observable observable, double point, long long replicas,
                                 std::uint64_t medium_seed, std::uint64_t master_seed,
                                 int workers) {
    Protocol protocol;
    protocol.kind = Protocol::Kind::quenched;
    protocol.medium_seed = medium_seed;
    return run_ensemble(gaps, increments, observable, point, replicas, protocol, master_seed,
                        workers);
}

EnsembleResult annealed_ensemble(const GapLaw& gaps, const IncrementLaw& increments,
                                 Observable observable, double point, long long replicas,
                                 std::uint64_t master_seed, int workers) {
    Protocol protocol;
    protocol.kind = Protocol::Kind::annealed;
    return run_ensemble(gaps, increments, observable, point, replicas, protocol, master_seed,
                        workers);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // dual theta series, accurate where the alternating series converges slowly
        const double x = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
        const double sum = x + std::pow(x, 9.0) + std::pow(x, 25.0) + std::pow(x, 49.0);
        return std::max(0.0, 1.0 - std::sqrt(2.0 * M_PI) / lambda * sum);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 128; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-17) break;
        sign = -sign;
    }
    return std::max(0.0, 2.0 * sum);
}

KSResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty())
        throw std::invalid_argument("ks_two_sample: samples must be nonempty");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const std::size_t n = xs.size();
    const std::size_t m = ys.size();
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < n && j < m) {
        const double v = std::min(xs[i], ys[j]);
        while (i < n && xs[i] == v) ++i;
        while (j < m && ys[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    // past this point one empirical CDF is already 1; the gap only shrinks
    KSResult result;
    result.statistic = d;
    result.n = n;
    result.m = m;
    const double ne = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
    result.p_value = kolmogorov_q(std::sqrt(ne) * d);
    return result;
}

double empirical_abs_moment(const std::vector<double>& samples, double q) {
    if (!(q >= 0.0)) throw std::invalid_argument("empirical_abs_moment: q must be >= 0");
    if (samples.empty()) throw std::invalid_argument("empirical_abs_moment: empty sample");
    double sum = 0.0;
    double comp = 0.0;  // Kahan
    for (const double x : samples) {
        const double term = std::pow(std::fabs(x), q) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum / static_cast<double>(samples.size());
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& scale_moment) {
    if (scale_moment.size() < 3)
        throw std::invalid_argument("fit_exponent: needs at least 3 grid points");
    std::vector<double> xs;
    std::vector<double> ys;
    double prev = 0.0;
    for (const auto& [scale, moment] : scale_moment) {
        if (!(scale > prev))
            throw std::invalid_argument("fit_exponent: scales must be positive and strictly increasing");
        if (!(moment > 0.0)) throw std::invalid_argument("fit_exponent: moments must be positive");
        xs.push_back(std::log(scale));
        ys.push_back(std::log(moment));
        prev = scale;
    }
    const double n = static_cast<double>(xs.size());
    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        xbar += xs[k];
        ybar += ys[k];
    }
    xbar /= n;
    ybar /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - xbar) * (xs[k] - xbar);
        sxy += (xs[k] - xbar) * (ys[k] - ybar);
    }
    ExponentFit fit;
    fit.points = xs.size();
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double rss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - fit.intercept - fit.slope * xs[k];
        rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
    return fit;
}

TailEstimate tail_probability(const std::vector<double>& samples, double threshold) {
    if (samples.empty()) throw std::invalid_argument("tail_probability: empty sample");
    TailEstimate est;
    est.n = static_cast<long long>(samples.size());
    for (const double x : samples)
        if (x > threshold) ++est.exceedances;
    const double n = static_cast<double>(est.n);
    const double p = static_cast<double>(est.exceedances) / n;
    est.p_hat = p;
    const double z = 1.959963984540054;  // 95%
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    est.wilson_low = est.exceedances == 0 ? 0.0 : std::max(0.0, center - half);
    est.wilson_high = est.exceedances == est.n ? 1.0 : std::min(1.0, center + half);
    return est;
}

std::vector<RatePoint> stretched_exp_rate(const GapLaw& gaps, const IncrementLaw& increments,
                                          double a, const std::vector<double>& t_grid,
                                          long long replicas, std::uint64_t medium_seed,
                                          std::uint64_t master_seed, int workers) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("stretched_exp_rate: a must be in (0,1]");
    if (increments.kind != IncrementLaw::Kind::simple_symmetric)
        throw std::invalid_argument("stretched_exp_rate: requires simple symmetric increments");
    if (!std::isfinite(gaps.mean()))
        throw std::invalid_argument("stretched_exp_rate: requires a finite mean gap");
    std::vector<RatePoint> rates;
    std::uint64_t point_salt = 0;
    for (const double t : t_grid) {
        const EnsembleResult ens =
            quenched_ensemble(gaps, increments, Observable::x_at, t, replicas, medium_seed,
                              derive_seed(master_seed, 0x72617465, point_salt++), workers);
        RatePoint pt;
        pt.t = t;
        for (const double x : ens.samples)
            if (std::fabs(x) > a * t) ++pt.exceedances;
        pt.p_hat = static_cast<double>(pt.exceedances) / static_cast<double>(replicas);
        const double guarded = std::max(pt.p_hat, 1.0 / static_cast<double>(replicas));
        pt.rate = std::log(guarded) / std::sqrt(a * t);
        rates.push_back(pt);
    }
    return rates;
}

double quantile(std::vector<double> xs, double p) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must be in [0,1]");
    std::sort(xs.begin(), xs.end());
    const double h = (static_cast<double>(xs.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double w = h - std::floor(h);
    return (1.0 - w) * xs[lo] + w * xs[hi];
}

std::vector<double> studentized(std::vector<double> xs) {
    if (xs.size() < 4) throw std::invalid_argument("studentized: needs at least 4 values");
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const double h50 = (static_cast<double>(sorted.size()) - 1.0) * 0.5;
    const double h25 = (static_cast<double>(sorted.size()) - 1.0) * 0.25;
    const double h75 = (static_cast<double>(sorted.size()) - 1.0) * 0.75;
    auto at = [&](double h) {
        const std::size_t lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double w = h - std::floor(h);
        return (1.0 - w) * sorted[lo] + w * sorted[hi];
    };
    const double median = at(h50);
    const double iqr = at(h75) - at(h25);
    if (!(iqr > 0.0)) throw std::invalid_argument("studentized: interquartile range is zero");
    for (double& x : xs) x = (x - median) / iqr;
    return xs;
}

void write_ensemble_csv(std::ostream& os, const EnsembleResult& result) {
    os << "replica,value\n";
    char buf[64];
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, result.samples[i]);
        os << buf;
    }
}

void write_ensemble_summary_json(std::ostream& os, const EnsembleResult& result) {
    nlohmann::ordered_json j;
    j["observable"] = result.observable;
    j["protocol"] = result.protocol.describe();
    j["point"] = result.point;
    j["gap_law"] = result.gap_law;
    j["increment_law"] = result.increment_law;
    j["master_seed"] = result.master_seed;
    j["replicas"] = result.replicas();
    std::vector<double> sorted = result.samples;
    std::sort(sorted.begin(), sorted.end());
    double mean = 0.0;
    for (const double x : sorted) mean += x;
    mean /= static_cast<double>(sorted.size());
    double var = 0.0;
    for (const double x : sorted) var += (x - mean) * (x - mean);
    var = sorted.size() > 1 ? var / static_cast<double>(sorted.size() - 1) : 0.0;
    j["mean"] = mean;
    j["stddev"] = std::sqrt(var);
    j["min"] = sorted.front();
    j["median"] = quantile(sorted, 0.5);
    j["max"] = sorted.back();
    os << j.dump(2) << '\n';
}

void parallel_for(long long count, int workers, const std::function<void(long long)>& fn) {
    if (count <= 0) return;
    int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    n_workers = static_cast<int>(std::min<long long>(n_workers, count));
    if (n_workers == 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const long long chunk = std::max<long long>(1, count / (8 * n_workers));
    auto worker = [&] {
        while (true) {
            const long long begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const long long end = std::min(count, begin + chunk);
            try {
                for (long long i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace levylab
