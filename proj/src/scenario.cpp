#include "levylab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "levylab/constants.hpp"
#include "levylab/limits.hpp"
#include "levylab/stable.hpp"
#include "levylab/stats.hpp"

namespace levylab {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::uint64_t kRepSalt = 0x726570;      // per-repetition master
constexpr std::uint64_t kMediumSalt = 0x6d6564;   // quenched medium realizations
constexpr std::uint64_t kRefSalt = 0x726566;      // reference limit draws
constexpr std::uint64_t kOracleSalt = 0x6f7261;   // partial-sum oracle draws
constexpr std::uint64_t kComposeSalt = 0x636f6d;  // composition draws
constexpr std::uint64_t kScenerySalt = 0x736365;  // scenery draws
constexpr std::uint64_t kPointSalt = 0x707473;    // per-grid-point ensembles

std::atomic<bool> g_interrupt{false};

const std::vector<std::string>& all_ids() {
    static const std::vector<std::string> ids = {
        "thm1",  "thm2",  "thm3a", "thm3b", "thm4a", "thm4b", "thm4c", "thm5a",
        "thm5b", "thm6",  "thm7",  "thm8",  "thm9",  "thm10", "thm11", "custom"};
    return ids;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Streams per-point CSVs into <out_dir>/<scenario>/ and records file names.
struct Writer {
    fs::path dir;
    std::vector<std::string>* outputs;

    std::ofstream open(const std::string& name) const {
        outputs->push_back(name);
        std::ofstream os(dir / name);
        if (!os) throw std::runtime_error("cannot open output file: " + (dir / name).string());
        return os;
    }
};

void write_samples_csv(const Writer& w, const std::string& name, const std::vector<double>& xs) {
    auto os = w.open(name);
    os << "replica,value\n";
    char buf[64];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, xs[i]);
        os << buf;
    }
}

Verdict ks_verdict(const std::string& name, const std::vector<double>& xs,
                   const std::vector<double>& ys, const std::string& context) {
    const KSResult ks = ks_two_sample(xs, ys);
    Verdict v;
    v.name = name;
    v.estimate = ks.p_value;
    v.expected = 0.01;  // acceptance threshold on the p-value
    v.tolerance = 0.0;
    v.pass = ks.p_value >= 0.01;
    v.detail = context + " D=" + fmt(ks.statistic) + " p=" + fmt(ks.p_value);
    return v;
}

Verdict tolerance_verdict(const std::string& name, double estimate, double expected,
                          double tolerance, const std::string& context) {
    Verdict v;
    v.name = name;
    v.estimate = estimate;
    v.expected = expected;
    v.tolerance = tolerance;
    v.pass = std::fabs(estimate - expected) <= tolerance;
    v.detail = context;
    return v;
}

std::vector<double> gaussian_reference(double variance, long long count, Rng rng) {
    const StableLaw law = StableLaw::gaussian(0.0, variance);
    std::vector<double> draws(static_cast<std::size_t>(count));
    for (double& d : draws) d = sample_stable(law, rng);
    return draws;
}

std::vector<double> stable_reference(const StableLaw& law, long long count, Rng rng) {
    std::vector<double> draws(static_cast<std::size_t>(count));
    for (double& d : draws) d = sample_stable(law, rng);
    return draws;
}

double kahan_mean(const std::vector<double>& xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (const double x : xs) {
        const double term = x - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum / static_cast<double>(xs.size());
}

// ---------------------------------------------------------------------------
// scenario bodies
// ---------------------------------------------------------------------------

void run_thm1(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double variance = cfg.gap_law.mean() * cfg.gap_law.mean() *
                            cfg.increment_law.second_moment;
    for (long long i = 0; i < cfg.media && !interrupt_requested(); ++i) {
        const std::uint64_t medium_seed = derive_seed(cfg.seed, kMediumSalt, i);
        EnsembleResult ens =
            quenched_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at, n, cfg.replicas,
                              medium_seed, derive_seed(cfg.seed, kRepSalt, i), cfg.workers);
        std::vector<double> scaled = ens.samples;
        for (double& x : scaled) x /= std::sqrt(n);
        const std::vector<double> ref = gaussian_reference(
            variance, cfg.reference_draws, Rng::substream(cfg.seed, kRefSalt, i));
        report.verdicts.push_back(ks_verdict("clt_medium" + std::to_string(i), scaled, ref,
                                             "Y_n/sqrt(n) vs N(0," + fmt(variance) + ")"));
        write_samples_csv(w, "samples_medium" + std::to_string(i) + ".csv", scaled);
    }
}

void run_thm2(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double mu = cfg.gap_law.mean();
    const double vxi = cfg.increment_law.second_moment;
    auto os = w.open("moments.csv");
    os << "medium,q,estimate,expected\n";
    for (long long i = 0; i < cfg.media && !interrupt_requested(); ++i) {
        const std::uint64_t medium_seed = derive_seed(cfg.seed, kMediumSalt, i);
        EnsembleResult ens =
            quenched_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at, n, cfg.replicas,
                              medium_seed, derive_seed(cfg.seed, kRepSalt, i), cfg.workers);
        for (const double q : cfg.q_grid) {
            const double est = empirical_abs_moment(ens.samples, q) / std::pow(n, 0.5 * q);
            const double expected =
                std::pow(mu, q) * std::pow(vxi, 0.5 * q) * gaussian_abs_moment(q);
            report.verdicts.push_back(tolerance_verdict(
                "moment_medium" + std::to_string(i) + "_q" + fmt(q), est, expected,
                0.10 * expected, "E_w|Y_n|^q/n^{q/2}"));
            char buf[96];
            std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", i, q, est, expected);
            os << buf;
        }
    }
}

void run_thm3a(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double mu = cfg.gap_law.mean();
    const double beta = cfg.increment_law.stable_index();
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, r);
        EnsembleResult ens = annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at,
                                               n, cfg.replicas, rep_seed, cfg.workers);
        std::vector<double> lhs = ens.samples;
        for (double& x : lhs) x /= std::pow(n, 1.0 / beta);
        // partial-sum oracle: mu * S_m / m^{1/beta} has the same limit with the
        // same (unknown) scale, so no studentization is needed
        std::vector<double> oracle(static_cast<std::size_t>(cfg.reference_draws));
        const double m = static_cast<double>(cfg.oracle_length);
        parallel_for(cfg.reference_draws, cfg.workers, [&](long long d) {
            Rng rng = Rng::substream(rep_seed, kOracleSalt, static_cast<std::uint64_t>(d));
            const long long s = walk_terminal(cfg.increment_law, cfg.oracle_length, rng);
            oracle[static_cast<std::size_t>(d)] =
                mu * static_cast<double>(s) / std::pow(m, 1.0 / beta);
        });
        report.verdicts.push_back(ks_verdict("flight_rep" + std::to_string(r), lhs, oracle,
                                             "Y_n/n^{1/beta} vs mu W_beta oracle"));
        write_samples_csv(w, "samples_rep" + std::to_string(r) + ".csv", lhs);
    }
}

void run_thm3b(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double expected = cfg.gap_law.mean() * cfg.increment_law.drift;
    EnsembleResult ens = annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at, n,
                                           cfg.replicas, derive_seed(cfg.seed, kRepSalt, 0),
                                           cfg.workers);
    std::vector<double> scaled = ens.samples;
    for (double& x : scaled) x /= n;
    report.verdicts.push_back(tolerance_verdict("ballistic_speed", kahan_mean(scaled), expected,
                                                0.03 * std::fabs(expected),
                                                "mean Y_n/n vs mu nu"));
    write_samples_csv(w, "samples.csv", scaled);
}

// Thm 4 fluctuation scenarios share the centered, rescaled flight samples.
std::vector<double> centered_flight(const ScenarioConfig& cfg, double n, double norm_index,
                                    std::uint64_t rep_seed) {
    EnsembleResult ens = annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at, n,
                                           cfg.replicas, rep_seed, cfg.workers);
    const double shift = n * cfg.gap_law.mean() * cfg.increment_law.drift;
    const double norm = std::pow(n, 1.0 / norm_index);
    std::vector<double> lhs = ens.samples;
    for (double& x : lhs) x = (x - shift) / norm;
    return lhs;
}

void run_thm4a(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double beta = cfg.increment_law.stable_index();
    const StableLaw ref_law(beta, cfg.increment_law.stable_skewness(), 1.0, 0.0);
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, r);
        const std::vector<double> lhs =
            studentized(centered_flight(cfg, n, beta, rep_seed));
        const std::vector<double> ref = studentized(stable_reference(
            ref_law, cfg.reference_draws, Rng::substream(rep_seed, kRefSalt, 0)));
        report.verdicts.push_back(
            ks_verdict("fluctuation_rep" + std::to_string(r), lhs, ref,
                       "studentized (Y_n - n mu nu)/n^{1/beta} vs stable(beta)"));
        write_samples_csv(w, "samples_rep" + std::to_string(r) + ".csv", lhs);
    }
}

void run_thm4b(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double alpha = cfg.gap_law.stable_index();
    const double beta = cfg.increment_law.stable_index();
    const double mu = cfg.gap_law.mean();
    const double nu = cfg.increment_law.drift;
    const double vfactor = (nu >= 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(nu), 1.0 / alpha);
    // at finite n the centered flight still carries the walk fluctuation at
    // relative size n^{1/beta - 1/alpha} (it vanishes in the limit but only
    // like n^{-0.11} at the default laws); the reference includes it at
    // exactly that size so the medium term's law is what is being tested
    const double walk_damp = std::pow(n, 1.0 / beta - 1.0 / alpha);
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, r);
        const std::vector<double> lhs = centered_flight(cfg, n, alpha, rep_seed);
        std::vector<double> oracle(static_cast<std::size_t>(cfg.reference_draws));
        const double m = static_cast<double>(cfg.oracle_length);
        parallel_for(cfg.reference_draws, cfg.workers, [&](long long d) {
            Rng gap_rng = Rng::substream(rep_seed, kOracleSalt, static_cast<std::uint64_t>(d));
            Rng walk_rng =
                Rng::substream(rep_seed, kOracleSalt + 1, static_cast<std::uint64_t>(d));
            double sum = 0.0;
            for (long long i = 0; i < cfg.oracle_length; ++i) sum += cfg.gap_law.sample(gap_rng);
            const long long s = walk_terminal(cfg.increment_law, cfg.oracle_length, walk_rng);
            const double medium_part = vfactor * (sum - m * mu) / std::pow(m, 1.0 / alpha);
            const double walk_part =
                walk_damp * mu * (static_cast<double>(s) - m * nu) / std::pow(m, 1.0 / beta);
            oracle[static_cast<std::size_t>(d)] = medium_part + walk_part;
        });
        report.verdicts.push_back(
            ks_verdict("fluctuation_rep" + std::to_string(r), lhs, oracle,
                       "(Y_n - n mu nu)/n^{1/alpha} vs Z oracle + n^{1/beta-1/alpha} W oracle"));
        write_samples_csv(w, "samples_rep" + std::to_string(r) + ".csv", lhs);
    }
}

void run_thm4c(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double alpha = cfg.gap_law.stable_index();
    const double beta = cfg.increment_law.stable_index();
    const double mu = cfg.gap_law.mean();
    const double nu = cfg.increment_law.drift;
    const double vfactor = (nu >= 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(nu), 1.0 / alpha);
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, r);
        const std::vector<double> lhs = centered_flight(cfg, n, beta, rep_seed);
        // independent sum of the two partial-sum oracles
        std::vector<double> oracle(static_cast<std::size_t>(cfg.reference_draws));
        const double m = static_cast<double>(cfg.oracle_length);
        parallel_for(cfg.reference_draws, cfg.workers, [&](long long d) {
            Rng walk_rng = Rng::substream(rep_seed, kOracleSalt, static_cast<std::uint64_t>(d));
            Rng gap_rng =
                Rng::substream(rep_seed, kOracleSalt + 1, static_cast<std::uint64_t>(d));
            const long long s = walk_terminal(cfg.increment_law, cfg.oracle_length, walk_rng);
            double gsum = 0.0;
            for (long long i = 0; i < cfg.oracle_length; ++i) gsum += cfg.gap_law.sample(gap_rng);
            const double walk_part = mu * (static_cast<double>(s) - m * nu) / std::pow(m, 1.0 / beta);
            const double gap_part = vfactor * (gsum - m * mu) / std::pow(m, 1.0 / alpha);
            oracle[static_cast<std::size_t>(d)] = walk_part + gap_part;
        });
        report.verdicts.push_back(ks_verdict("fluctuation_rep" + std::to_string(r), lhs, oracle,
                                             "(Y_n - n mu nu)/n^{1/beta} vs two-oracle sum"));
        write_samples_csv(w, "samples_rep" + std::to_string(r) + ".csv", lhs);
    }
}

void run_thm5a(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double alpha = cfg.gap_law.stable_index();
    const double beta = cfg.increment_law.stable_index();
    const CompositionSpec spec(StableLaw(alpha, 1.0, 1.0, 0.0),
                               StableLaw::gaussian(0.0, cfg.increment_law.second_moment),
                               cfg.compose_grid);
    const std::vector<double> times = {1.0};
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, r);
        EnsembleResult ens = annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at,
                                               n, cfg.replicas, rep_seed, cfg.workers);
        std::vector<double> lhs = ens.samples;
        for (double& x : lhs) x /= std::pow(n, 1.0 / (alpha * beta));
        std::vector<double> ref(static_cast<std::size_t>(cfg.reference_draws));
        parallel_for(cfg.reference_draws, cfg.workers, [&](long long d) {
            Rng rng = Rng::substream(rep_seed, kComposeSalt, static_cast<std::uint64_t>(d));
            ref[static_cast<std::size_t>(d)] = compose_marginals(spec, times, rng).front();
        });
        report.verdicts.push_back(ks_verdict(
            "subordination_rep" + std::to_string(r), studentized(lhs), studentized(ref),
            "studentized Y_n/n^{1/(alpha beta)} vs Z(W(1)) draws"));
        write_samples_csv(w, "samples_rep" + std::to_string(r) + ".csv", lhs);
    }
}

void run_thm5b(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double n = cfg.n_grid.at(0);
    const double alpha = cfg.gap_law.stable_index();
    const double nu = cfg.increment_law.drift;
    const double vfactor = (nu >= 0.0 ? 1.0 : -1.0) * std::pow(std::fabs(nu), 1.0 / alpha);
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, r);
        EnsembleResult ens = annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::y_at,
                                               n, cfg.replicas, rep_seed, cfg.workers);
        std::vector<double> lhs = ens.samples;
        for (double& x : lhs) x /= std::pow(n, 1.0 / alpha);
        // uncentered gap-sum oracle for the positive stable process Z_+
        std::vector<double> oracle(static_cast<std::size_t>(cfg.reference_draws));
        const double m = static_cast<double>(cfg.oracle_length);
        parallel_for(cfg.reference_draws, cfg.workers, [&](long long d) {
            Rng rng = Rng::substream(rep_seed, kOracleSalt, static_cast<std::uint64_t>(d));
            double sum = 0.0;
            for (long long i = 0; i < cfg.oracle_length; ++i) sum += cfg.gap_law.sample(rng);
            oracle[static_cast<std::size_t>(d)] = vfactor * sum / std::pow(m, 1.0 / alpha);
        });
        report.verdicts.push_back(ks_verdict("ballistic_rep" + std::to_string(r), lhs, oracle,
                                             "Y_n/n^{1/alpha} vs |nu|^{1/alpha} Z_+ oracle"));
        write_samples_csv(w, "samples_rep" + std::to_string(r) + ".csv", lhs);
    }
}

void run_thm6(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double t = cfg.t_grid.at(0);
    const double variance = cfg.gap_law.mean() * cfg.increment_law.second_moment /
                            cfg.increment_law.abs_moment;
    for (long long i = 0; i < cfg.media && !interrupt_requested(); ++i) {
        const std::uint64_t medium_seed = derive_seed(cfg.seed, kMediumSalt, i);
        EnsembleResult ens =
            quenched_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, t, cfg.replicas,
                              medium_seed, derive_seed(cfg.seed, kRepSalt, i), cfg.workers);
        std::vector<double> scaled = ens.samples;
        for (double& x : scaled) x /= std::sqrt(t);
        const std::vector<double> ref = gaussian_reference(
            variance, cfg.reference_draws, Rng::substream(cfg.seed, kRefSalt, i));
        report.verdicts.push_back(ks_verdict("gas_clt_medium" + std::to_string(i), scaled, ref,
                                             "X(t)/sqrt(t) vs N(0," + fmt(variance) + ")"));
        write_samples_csv(w, "samples_medium" + std::to_string(i) + ".csv", scaled);
    }
}

void run_thm7(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double t = cfg.t_grid.at(0);
    const double mu = cfg.gap_law.mean();
    auto os = w.open("moments.csv");
    os << "medium,q,estimate,expected\n";
    for (long long i = 0; i < cfg.media && !interrupt_requested(); ++i) {
        const std::uint64_t medium_seed = derive_seed(cfg.seed, kMediumSalt, i);
        EnsembleResult ens =
            quenched_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, t, cfg.replicas,
                              medium_seed, derive_seed(cfg.seed, kRepSalt, i), cfg.workers);
        for (const double q : cfg.q_grid) {
            const double est = empirical_abs_moment(ens.samples, q) / std::pow(t, 0.5 * q);
            const double expected = std::pow(mu, 0.5 * q) * gaussian_abs_moment(q);
            report.verdicts.push_back(tolerance_verdict(
                "moment_medium" + std::to_string(i) + "_q" + fmt(q), est, expected,
                0.10 * expected, "E_w|X(t)|^q/t^{q/2}"));
            char buf[96];
            std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", i, q, est, expected);
            os << buf;
        }
    }
}

void run_thm8(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double a = cfg.a_grid.at(0);
    const std::uint64_t medium_seed = derive_seed(cfg.seed, kMediumSalt, 0);
    const std::vector<RatePoint> rates =
        stretched_exp_rate(cfg.gap_law, cfg.increment_law, a, cfg.t_grid, cfg.replicas,
                           medium_seed, derive_seed(cfg.seed, kRepSalt, 0), cfg.workers);
    auto os = w.open("rates.csv");
    os << "t,exceedances,p_hat,rate\n";
    char buf[128];
    for (const RatePoint& pt : rates) {
        std::snprintf(buf, sizeof buf, "%.17g,%lld,%.17g,%.17g\n", pt.t, pt.exceedances, pt.p_hat,
                      pt.rate);
        os << buf;
    }
    bool negative = true;
    bool nonincreasing = true;
    long long floored = 0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        negative = negative && rates[i].rate < 0.0;
        if (rates[i].exceedances == 0) ++floored;
        if (i > 0) nonincreasing = nonincreasing && rates[i].rate <= rates[i - 1].rate + 1e-12;
    }
    const std::string floor_note =
        floored == 0 ? std::string()
                     : " (" + std::to_string(floored) + " of " + std::to_string(rates.size()) +
                           " points at the 1/replicas floor)";
    Verdict vn;
    vn.name = "rates_negative";
    vn.pass = negative;
    vn.estimate = rates.empty() ? 0.0 : rates.back().rate;
    vn.detail = "log p_hat / sqrt(at) < 0 at every t" + floor_note;
    report.verdicts.push_back(vn);
    Verdict vm;
    vm.name = "rates_nonincreasing";
    vm.pass = nonincreasing;
    vm.estimate = rates.size() > 1 ? rates.back().rate - rates.front().rate : 0.0;
    vm.detail = "rate(t) nonincreasing along the t-grid" + floor_note;
    report.verdicts.push_back(vm);
}

void run_thm9(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double alpha = cfg.gap_law.tail_index;
    const double mu = cfg.gap_law.mean();
    const double corner = 2.0 * alpha - 1.0;
    std::vector<std::vector<double>> abs_samples;
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        if (interrupt_requested()) return;
        const double t = cfg.t_grid[i];
        EnsembleResult ens =
            annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, t, cfg.replicas,
                              derive_seed(cfg.seed, kPointSalt, i), cfg.workers);
        for (double& x : ens.samples) x = std::fabs(x);
        write_samples_csv(w, "abs_samples_t" + std::to_string(i) + ".csv", ens.samples);
        abs_samples.push_back(std::move(ens.samples));
    }
    auto os = w.open("moments.csv");
    os << "q,t,moment,diffusive_term\n";
    for (const double q : cfg.q_grid) {
        std::vector<std::pair<double, double>> points;
        std::vector<std::pair<double, double>> corrected;
        bool corrected_ok = true;
        for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
            const double t = cfg.t_grid[i];
            const double moment = empirical_abs_moment(abs_samples[i], q);
            const double diffusive =
                gaussian_abs_moment(q) * std::pow(mu, 0.5 * q) * std::pow(t, 0.5 * q);
            points.emplace_back(t, moment);
            if (i > 0) {  // drop the smallest t, where the diffusive bulk dominates
                const double residual = moment - diffusive;
                if (residual > 0.0)
                    corrected.emplace_back(t, residual);
                else
                    corrected_ok = false;
            }
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", q, t, moment, diffusive);
            os << buf;
        }
        const double expected = gamma_exponent(alpha, q);
        const ExponentFit full = fit_exponent(points);
        if (q <= corner) {
            report.verdicts.push_back(tolerance_verdict(
                "gamma_q" + fmt(q), full.slope, expected, 0.15,
                "log-log fit of E|X(t)|^q over the full grid, stderr=" + fmt(full.slope_stderr)));
            continue;
        }
        // ballistic branch: remove the known diffusive term before fitting, per
        // the two-term asymptote; fall back to the top decade if the subtraction
        // goes negative
        Verdict v;
        if (corrected_ok && corrected.size() >= 3) {
            const ExponentFit fit = fit_exponent(corrected);
            v = tolerance_verdict("gamma_q" + fmt(q), fit.slope, expected, 0.15,
                                  "fit of E|X|^q minus the diffusive term, t >= " +
                                      fmt(corrected.front().first) +
                                      ", stderr=" + fmt(fit.slope_stderr));
        } else {
            std::vector<std::pair<double, double>> top;
            const double cutoff = cfg.t_grid.back() / 10.0;
            for (const auto& p : points)
                if (p.first >= cutoff * (1.0 - 1e-9)) top.push_back(p);
            const ExponentFit fit = fit_exponent(top);
            v = tolerance_verdict("gamma_q" + fmt(q), fit.slope, expected, 0.15,
                                  "top-decade fit of E|X(t)|^q, stderr=" + fmt(fit.slope_stderr));
        }
        report.verdicts.push_back(v);
        Verdict info;
        info.name = "gamma_q" + fmt(q) + "_plain_fit";
        info.pass = true;
        info.estimate = full.slope;
        info.expected = expected;
        info.detail = "uncorrected full-grid slope (bends below the corner exponent at desk scale)";
        report.info.push_back(info);
    }
}

void run_thm10(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double alpha = cfg.gap_law.tail_index;
    const double a = cfg.a_grid.at(0);
    auto os = w.open("tails.csv");
    os << "t,p_plus,plus_low,plus_high,p_minus,minus_low,minus_high\n";
    std::vector<std::pair<double, double>> points;
    bool symmetric = true;
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        if (interrupt_requested()) return;
        const double t = cfg.t_grid[i];
        EnsembleResult ens =
            annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, t, cfg.replicas,
                              derive_seed(cfg.seed, kPointSalt, i), cfg.workers);
        const TailEstimate plus = tail_probability(ens.samples, a * t);
        std::vector<double> negated = ens.samples;
        for (double& x : negated) x = -x;
        const TailEstimate minus = tail_probability(negated, a * t);
        char buf[192];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t,
                      plus.p_hat, plus.wilson_low, plus.wilson_high, minus.p_hat,
                      minus.wilson_low, minus.wilson_high);
        os << buf;
        const double widths = (plus.wilson_high - plus.wilson_low) +
                              (minus.wilson_high - minus.wilson_low);
        symmetric = symmetric && std::fabs(plus.p_hat - minus.p_hat) <= widths;
        // the smallest t is dominated by the Gaussian bulk; fit the rest
        if (i > 0) {
            const double guarded =
                std::max(plus.p_hat, 0.5 / static_cast<double>(cfg.replicas));
            points.emplace_back(t, guarded);
        }
    }
    const ExponentFit fit = fit_exponent(points);
    report.verdicts.push_back(tolerance_verdict(
        "tail_exponent", fit.slope, 0.5 - alpha, 0.2,
        "log-log slope of P(X(t) > at), t >= " + fmt(points.front().first) +
            ", stderr=" + fmt(fit.slope_stderr)));
    Verdict vs;
    vs.name = "tail_symmetry";
    vs.pass = symmetric;
    vs.detail = "|P(X>at) - P(X<-at)| within the summed Wilson interval widths at every t";
    report.verdicts.push_back(vs);
}

void run_thm11(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const double alpha = cfg.gap_law.tail_index;
    const double expected = 1.0 / (alpha + 1.0);
    std::vector<std::pair<double, double>> medians;
    std::vector<double> first_point_samples;
    auto os = w.open("medians.csv");
    os << "t,median_abs\n";
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        if (interrupt_requested()) return;
        const double t = cfg.t_grid[i];
        EnsembleResult ens =
            annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, t, cfg.replicas,
                              derive_seed(cfg.seed, kPointSalt, i), cfg.workers);
        std::vector<double> abs = ens.samples;
        for (double& x : abs) x = std::fabs(x);
        const double med = quantile(abs, 0.5);
        medians.emplace_back(t, med);
        if (i == 0) first_point_samples = ens.samples;
        write_samples_csv(w, "samples_t" + std::to_string(i) + ".csv", ens.samples);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, med);
        os << buf;
    }
    const ExponentFit fit = fit_exponent(medians);
    report.verdicts.push_back(tolerance_verdict(
        "median_exponent", fit.slope, expected, 0.05,
        "log-log slope of median|X(t)|, stderr=" + fmt(fit.slope_stderr)));

    // self-similarity of the marginals: X(4t)/4^{1/(alpha+1)} matches X(t).
    // The marginal's shape converges slowly (measured KS distortion ~ t^{-0.15}
    // for alpha = 1/2), so the comparison runs deep in the asymptotic regime;
    // walks in an infinite-mean medium reach such times in ~t^{2/3} steps.
    const double t0 = cfg.selfsim_t;
    const double scale = std::pow(4.0, expected);
    std::vector<double> asymptotic_samples;
    for (long long r = 0; r < cfg.repetitions && !interrupt_requested(); ++r) {
        const std::uint64_t rep_seed = derive_seed(cfg.seed, kRepSalt, 100 + r);
        EnsembleResult base =
            annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, t0,
                              cfg.reference_draws, derive_seed(rep_seed, kPointSalt, 0),
                              cfg.workers);
        EnsembleResult dilated =
            annealed_ensemble(cfg.gap_law, cfg.increment_law, Observable::x_at, 4.0 * t0,
                              cfg.reference_draws, derive_seed(rep_seed, kPointSalt, 1),
                              cfg.workers);
        for (double& x : dilated.samples) x /= scale;
        report.verdicts.push_back(ks_verdict("self_similarity_rep" + std::to_string(r),
                                             dilated.samples, base.samples,
                                             "X(4t)/4^{1/(alpha+1)} vs X(t), t=" + fmt(t0)));
        if (r == 0) asymptotic_samples = base.samples;
    }

    // informational cross-check against the discrete scenery construction,
    // both sides in their asymptotic regimes
    if (!interrupt_requested() && !asymptotic_samples.empty()) {
        const SceneryApproximation scenery(cfg.oracle_length, cfg.gap_law);
        std::vector<double> ref(static_cast<std::size_t>(cfg.reference_draws));
        parallel_for(cfg.reference_draws, cfg.workers, [&](long long d) {
            Rng rng = Rng::substream(cfg.seed, kScenerySalt, static_cast<std::uint64_t>(d));
            ref[static_cast<std::size_t>(d)] = ks_marginal(scenery, 1.0, rng);
        });
        std::vector<double> lhs = asymptotic_samples;
        const double norm = std::pow(t0, expected);
        for (double& x : lhs) x /= norm;
        const KSResult ks = ks_two_sample(studentized(lhs), studentized(ref));
        Verdict info;
        info.name = "scenery_cross_check";
        info.pass = ks.p_value >= 0.01;
        info.estimate = ks.p_value;
        info.expected = 0.01;
        info.detail = "studentized X(t)/t^{1/(alpha+1)} vs discrete scenery draws, D=" +
                      fmt(ks.statistic);
        report.info.push_back(info);
    }
}

void run_custom(const ScenarioConfig& cfg, ScenarioReport& report, const Writer& w) {
    const bool y_obs = cfg.observable == "y_at";
    const Observable obs = y_obs ? Observable::y_at : Observable::x_at;
    const std::vector<double>& grid = y_obs ? cfg.n_grid : cfg.t_grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (interrupt_requested()) return;
        EnsembleResult ens;
        if (cfg.protocol == "quenched")
            ens = quenched_ensemble(cfg.gap_law, cfg.increment_law, obs, grid[i], cfg.replicas,
                                    cfg.medium_seed, derive_seed(cfg.seed, kPointSalt, i),
                                    cfg.workers);
        else
            ens = annealed_ensemble(cfg.gap_law, cfg.increment_law, obs, grid[i], cfg.replicas,
                                    derive_seed(cfg.seed, kPointSalt, i), cfg.workers);
        write_samples_csv(w, "point" + std::to_string(i) + ".csv", ens.samples);
    }
    (void)report;
}

void write_summary(const ScenarioConfig& cfg, const ScenarioReport& report, const Writer& w) {
    ordered_json j;
    j["scenario"] = cfg.scenario;
    j["seed"] = cfg.seed;
    j["replicas"] = cfg.replicas;
    j["gap_law"] = cfg.gap_law.describe();
    j["increment_law"] = cfg.increment_law.describe();
    j["grids"] = {{"n", cfg.n_grid}, {"t", cfg.t_grid}, {"q", cfg.q_grid}, {"a", cfg.a_grid}};
    auto verdicts = ordered_json::array();
    for (const Verdict& v : report.verdicts) {
        ordered_json item;
        item["name"] = v.name;
        item["pass"] = v.pass;
        item["estimate"] = v.estimate;
        item["expected"] = v.expected;
        item["tolerance"] = v.tolerance;
        item["detail"] = v.detail;
        verdicts.push_back(item);
    }
    j["verdicts"] = verdicts;
    auto info = ordered_json::array();
    for (const Verdict& v : report.info) {
        ordered_json item;
        item["name"] = v.name;
        item["pass"] = v.pass;
        item["estimate"] = v.estimate;
        item["expected"] = v.expected;
        item["detail"] = v.detail;
        info.push_back(item);
    }
    j["info"] = info;
    j["pass"] = report.all_pass() && !report.interrupted;
    j["interrupted"] = report.interrupted;
    j["outputs"] = report.outputs;
    auto os = std::ofstream(w.dir / "summary.json");
    os << j.dump(2) << '\n';
}

}  // namespace

bool ScenarioReport::all_pass() const {
    for (const Verdict& v : verdicts)
        if (!v.pass) return false;
    return errors.empty();
}

void request_interrupt() { g_interrupt.store(true); }
bool interrupt_requested() { return g_interrupt.load(); }
void clear_interrupt() { g_interrupt.store(false); }

bool known_scenario(const std::string& id) {
    const auto& ids = all_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<std::string> scenario_ids() { return all_ids(); }

ScenarioReport run(const ScenarioConfig& cfg) {
    ScenarioReport report;
    report.scenario = cfg.scenario;
    if (!known_scenario(cfg.scenario)) {
        report.errors.push_back("unknown scenario id: " + cfg.scenario);
        report.exit_code = 2;
        return report;
    }
    const std::vector<std::string> violations = validate(cfg);
    if (!violations.empty()) {
        report.errors = violations;
        report.exit_code = 2;
        return report;
    }

    std::string base = cfg.out_dir;
    if (base.empty()) {
        const char* env = std::getenv("LEVYLAB_OUT");
        base = env && *env ? env : "out";
    }
    report.out_dir = fs::path(base) / cfg.scenario;
    fs::create_directories(report.out_dir);
    Writer writer{report.out_dir, &report.outputs};

    try {
        if (cfg.scenario == "thm1") run_thm1(cfg, report, writer);
        else if (cfg.scenario == "thm2") run_thm2(cfg, report, writer);
        else if (cfg.scenario == "thm3a") run_thm3a(cfg, report, writer);
        else if (cfg.scenario == "thm3b") run_thm3b(cfg, report, writer);
        else if (cfg.scenario == "thm4a") run_thm4a(cfg, report, writer);
        else if (cfg.scenario == "thm4b") run_thm4b(cfg, report, writer);
        else if (cfg.scenario == "thm4c") run_thm4c(cfg, report, writer);
        else if (cfg.scenario == "thm5a") run_thm5a(cfg, report, writer);
        else if (cfg.scenario == "thm5b") run_thm5b(cfg, report, writer);
        else if (cfg.scenario == "thm6") run_thm6(cfg, report, writer);
        else if (cfg.scenario == "thm7") run_thm7(cfg, report, writer);
        else if (cfg.scenario == "thm8") run_thm8(cfg, report, writer);
        else if (cfg.scenario == "thm9") run_thm9(cfg, report, writer);
        else if (cfg.scenario == "thm10") run_thm10(cfg, report, writer);
        else if (cfg.scenario == "thm11") run_thm11(cfg, report, writer);
        else run_custom(cfg, report, writer);
    } catch (const std::exception& e) {
        report.errors.push_back(e.what());
    }
    report.interrupted = interrupt_requested();
    write_summary(cfg, report, writer);
    if (!report.errors.empty())
        report.exit_code = 2;
    else
        report.exit_code = (report.all_pass() && !report.interrupted) ? 0 : 1;
    return report;
}

ScenarioConfig scenario_defaults(const std::string& id) {
    if (!known_scenario(id)) throw std::invalid_argument("unknown scenario id: " + id);
    ScenarioConfig cfg;
    cfg.scenario = id;
    const double t25 = std::pow(10.0, 2.5);
    const double t35 = std::pow(10.0, 3.5);
    const double t45 = std::pow(10.0, 4.5);
    if (id == "thm1") {
        cfg.n_grid = {1e4};
        cfg.replicas = 10000;
    } else if (id == "thm2") {
        cfg.n_grid = {1e4};
        cfg.q_grid = {1.0, 2.0, 3.0};
        cfg.replicas = 10000;
    } else if (id == "thm3a") {
        cfg.increment_law = IncrementLaw::symmetric_zeta(1.5);
        cfg.n_grid = {1e5};
        cfg.replicas = 2500;
        cfg.reference_draws = 2500;
    } else if (id == "thm3b") {
        cfg.increment_law = IncrementLaw::drifted_zeta(1.8, 0.4);
        cfg.n_grid = {1e5};
        cfg.replicas = 1000;
    } else if (id == "thm4a") {
        cfg.gap_law = GapLaw::shifted_exponential(1.0);
        cfg.increment_law = IncrementLaw::drifted_zeta(1.5, 0.4);
        cfg.n_grid = {1e5};
        cfg.replicas = 10000;
        cfg.reference_draws = 10000;
    } else if (id == "thm4b") {
        cfg.increment_law = IncrementLaw::drifted_zeta(1.8, 0.4);
        cfg.n_grid = {1e5};
        cfg.replicas = 3000;
        cfg.reference_draws = 3000;
    } else if (id == "thm4c") {
        cfg.increment_law = IncrementLaw::drifted_zeta(1.5, 0.4);
        cfg.n_grid = {2e5};
        cfg.replicas = 3000;
        cfg.reference_draws = 3000;
    } else if (id == "thm5a") {
        cfg.gap_law = GapLaw::pareto(0.5, 1.0);
        cfg.n_grid = {1e5};
        cfg.replicas = 5000;
        cfg.reference_draws = 5000;
    } else if (id == "thm5b") {
        cfg.gap_law = GapLaw::pareto(0.5, 1.0);
        cfg.increment_law = IncrementLaw::drifted_zeta(1.8, 0.4);
        cfg.n_grid = {1e5};
        cfg.replicas = 3000;
        cfg.reference_draws = 3000;
    } else if (id == "thm6") {
        cfg.t_grid = {1e4};
        cfg.replicas = 10000;
    } else if (id == "thm7") {
        cfg.t_grid = {1e4};
        cfg.q_grid = {1.0, 2.0};
        cfg.replicas = 10000;
    } else if (id == "thm8") {
        cfg.t_grid = {100.0, 400.0, 1600.0};
        cfg.a_grid = {0.5};
        cfg.replicas = 100000;
        cfg.media = 1;
    } else if (id == "thm9") {
        cfg.t_grid = {1e2, t25, 1e3, t35, 1e4};
        cfg.q_grid = {1.0, 4.0};
        cfg.replicas = 100000;
    } else if (id == "thm10") {
        cfg.t_grid = {1e2, t25, 1e3, t35, 1e4};
        cfg.a_grid = {0.5};
        cfg.replicas = 100000;
    } else if (id == "thm11") {
        cfg.gap_law = GapLaw::pareto(0.5, 1.0);
        cfg.t_grid = {1e3, t35, 1e4, t45};
        cfg.replicas = 10000;
        cfg.reference_draws = 4000;
        cfg.selfsim_t = 3e7;
    } else if (id == "custom") {
        cfg.t_grid = {100.0};
        cfg.replicas = 1000;
    }
    return cfg;
}

namespace {

bool needs_n_grid(const std::string& id) {
    return id == "thm1" || id == "thm2" || id == "thm3a" || id == "thm3b" || id == "thm4a" ||
           id == "thm4b" || id == "thm4c" || id == "thm5a" || id == "thm5b";
}

bool needs_t_grid(const std::string& id) {
    return id == "thm6" || id == "thm7" || id == "thm8" || id == "thm9" || id == "thm10" ||
           id == "thm11";
}

bool distributional(const std::string& id) {
    return id == "thm1" || id == "thm3a" || id == "thm4a" || id == "thm4b" || id == "thm4c" ||
           id == "thm5a" || id == "thm5b" || id == "thm6" || id == "thm11";
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& cfg) {
    std::vector<std::string> v;
    if (!known_scenario(cfg.scenario)) {
        v.push_back("unknown scenario id: " + cfg.scenario);
        return v;
    }
    const std::string& id = cfg.scenario;
    if (cfg.replicas < 1) v.push_back("replicas must be >= 1");
    if (distributional(id) && cfg.replicas < 100)
        v.push_back("distributional tests require replicas >= 100");
    if (needs_n_grid(id) && cfg.n_grid.empty()) v.push_back(id + " requires a nonempty n_grid");
    if (needs_t_grid(id) && cfg.t_grid.empty()) v.push_back(id + " requires a nonempty t_grid");
    if ((id == "thm2" || id == "thm7" || id == "thm9") && cfg.q_grid.empty())
        v.push_back(id + " requires a nonempty q_grid");
    if ((id == "thm8" || id == "thm10") && cfg.a_grid.empty())
        v.push_back(id + " requires a nonempty a_grid");

    const GapLaw& gap = cfg.gap_law;
    const IncrementLaw& inc = cfg.increment_law;
    const double alpha = gap.stable_index();
    const double beta = inc.stable_index();
    const bool gap_mean_finite = std::isfinite(gap.mean());
    const bool gap_pareto = gap.kind == GapLaw::Kind::pareto;
    // tail index exactly 2 sits in the Gaussian domain but outside its normal
    // basin; > 2 has finite variance and is fine
    const bool gap_normal_domain =
        gap.kind != GapLaw::Kind::pareto || gap.tail_index != 2.0;
    const bool gap_degenerate = gap.kind == GapLaw::Kind::deterministic;
    const bool drifted = inc.drift != 0.0;
    const bool beta_zero_drift_case = (beta > 0.0 && beta < 1.0) || !drifted;

    if (id == "thm1" || id == "thm2" || id == "thm6") {
        const std::string thm = id == "thm6" ? "Thm 6" : (id == "thm2" ? "Thm 2" : "Thm 1");
        if (!gap_mean_finite) v.push_back(thm + " requires a finite mean gap (mu < infinity)");
        if (!inc.symmetric_unimodal_finite_variance())
            v.push_back(thm + " assumes symmetric, unimodal, finite-variance increments");
    }
    if (id == "thm3a" || id == "thm3b" || id == "thm4a" || id == "thm4b" || id == "thm4c") {
        const std::string thm = id.substr(0, 4) == "thm3" ? "Thm 3" : "Thm 4";
        if (!(alpha > 1.0 && alpha <= 2.0) || !gap_normal_domain || !gap_mean_finite)
            v.push_back(thm +
                        " requires gaps in the normal domain of an alpha-stable law, alpha in (1,2]");
    }
    if (id == "thm3a" && !beta_zero_drift_case)
        v.push_back("Thm 3(a) requires beta in (0,1), or beta in (1,2] with zero drift");
    if (id == "thm3b" && (!drifted || !(beta > 1.0 && beta <= 2.0)))
        v.push_back("Thm 3(b) requires drifted increments with beta in (1,2]");
    if (id == "thm4a" || id == "thm4b" || id == "thm4c") {
        if (!drifted || !(beta > 1.0 && beta <= 2.0))
            v.push_back("Thm 4 requires drifted increments with beta in (1,2]");
        if (id == "thm4a" && !(beta < alpha)) v.push_back("Thm 4(a) requires beta < alpha");
        if (id == "thm4b" && !(beta > alpha)) v.push_back("Thm 4(b) requires beta > alpha");
        if (id == "thm4c" && beta != alpha) v.push_back("Thm 4(c) requires beta = alpha");
        if ((id == "thm4b" || id == "thm4c") && gap_degenerate)
            v.push_back("Thm 4(b,c) require a nondegenerate gap law");
    }
    if (id == "thm5a" || id == "thm5b") {
        if (!gap_pareto || !in_open_unit(gap.tail_index))
            v.push_back("Thm 5 requires alpha in (0,1)");
        if (id == "thm5a" && !beta_zero_drift_case)
            v.push_back("Thm 5(a) requires beta in (0,1), or beta in (1,2] with zero drift");
        if (id == "thm5b" && (!drifted || !(beta > 1.0 && beta <= 2.0)))
            v.push_back("Thm 5(b) requires drifted increments with beta in (1,2]");
    }
    if (id == "thm7" || id == "thm8") {
        const std::string thm = id == "thm7" ? "Thm 7" : "Thm 8";
        if (inc.kind != IncrementLaw::Kind::simple_symmetric)
            v.push_back(thm + " requires S simple symmetric");
        if (!gap_mean_finite) v.push_back(thm + " requires a finite mean gap (mu < infinity)");
        if (id == "thm8")
            for (const double a : cfg.a_grid)
                if (!(a > 0.0 && a <= 1.0)) v.push_back("Thm 8 requires a in (0,1]");
    }
    if (id == "thm9" || id == "thm10") {
        const std::string thm = id == "thm9" ? "Thm 9" : "Thm 10";
        if (inc.kind != IncrementLaw::Kind::simple_symmetric)
            v.push_back(thm + " assumes S is a simple symmetric RW");
        if (!gap_pareto)
            v.push_back(thm + " requires a regularly varying gap tail (pareto)");
        else if (!(gap.tail_index >= 1.0))
            v.push_back(thm + " requires tail index alpha >= 1");
        if (!gap_mean_finite) v.push_back(thm + " requires a finite mean gap (mu < infinity)");
        if (cfg.t_grid.size() >= 1 && cfg.t_grid.size() < 4)
            v.push_back(thm + " needs at least 4 grid points for the exponent fit");
        if (id == "thm10")
            for (const double a : cfg.a_grid)
                if (!(a > 0.0 && a <= 1.0)) v.push_back("Thm 10 requires a in (0,1]");
    }
    if (id == "thm11") {
        if (!gap_pareto || !in_open_unit(gap.tail_index))
            v.push_back("Thm 11 requires alpha in (0,1)");
        else if (inc.drift != 0.0 || !(inc.moment_ceiling > 2.0 / gap.tail_index))
            v.push_back(
                "Thm 11 requires centered increments with a finite moment of order q > 2/alpha");
        if (cfg.t_grid.size() >= 1 && cfg.t_grid.size() < 3)
            v.push_back("Thm 11 needs at least 3 grid points for the exponent fit");
        if (!(cfg.selfsim_t > 0.0)) v.push_back("Thm 11 self-similarity time must be > 0");
    }
    if (id == "custom") {
        if (cfg.observable != "y_at" && cfg.observable != "x_at")
            v.push_back("custom observable must be y_at or x_at");
        if (cfg.protocol != "annealed" && cfg.protocol != "quenched")
            v.push_back("custom protocol must be annealed or quenched");
        if (cfg.observable == "y_at" && cfg.n_grid.empty())
            v.push_back("custom y_at requires a nonempty n_grid");
        if (cfg.observable == "x_at" && cfg.t_grid.empty())
            v.push_back("custom x_at requires a nonempty t_grid");
    }
    return v;
}

namespace {

ordered_json gap_law_to_json(const GapLaw& law) {
    ordered_json j;
    switch (law.kind) {
        case GapLaw::Kind::pareto:
            j["type"] = "pareto";
            j["tail_index"] = law.tail_index;
            j["x_min"] = law.x_min;
            break;
        case GapLaw::Kind::shifted_exponential:
            j["type"] = "shifted_exponential";
            j["rate"] = law.rate;
            break;
        case GapLaw::Kind::deterministic:
            j["type"] = "deterministic";
            j["value"] = law.value;
            break;
    }
    return j;
}

GapLaw gap_law_from_json(const ordered_json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "pareto")
        return GapLaw::pareto(j.at("tail_index").get<double>(),
                              j.value("x_min", 1.0));
    if (type == "shifted_exponential")
        return GapLaw::shifted_exponential(j.at("rate").get<double>());
    if (type == "deterministic") return GapLaw::deterministic(j.at("value").get<double>());
    throw std::invalid_argument("unknown gap law type: " + type);
}

ordered_json increment_law_to_json(const IncrementLaw& law) {
    ordered_json j;
    switch (law.kind) {
        case IncrementLaw::Kind::simple_symmetric:
            j["type"] = "simple_symmetric";
            break;
        case IncrementLaw::Kind::lazy_symmetric:
            j["type"] = "lazy_symmetric";
            j["hold_prob"] = law.hold_prob;
            break;
        case IncrementLaw::Kind::symmetric_zeta:
            j["type"] = "symmetric_zeta";
            j["beta"] = law.beta;
            break;
        case IncrementLaw::Kind::drifted_zeta:
            j["type"] = "drifted_zeta";
            j["beta"] = law.beta;
            j["drift"] = law.drift;
            break;
    }
    return j;
}

IncrementLaw increment_law_from_json(const ordered_json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "simple_symmetric") return IncrementLaw::simple_symmetric();
    if (type == "lazy_symmetric")
        return IncrementLaw::lazy_symmetric(j.at("hold_prob").get<double>());
    if (type == "symmetric_zeta") return IncrementLaw::symmetric_zeta(j.at("beta").get<double>());
    if (type == "drifted_zeta")
        return IncrementLaw::drifted_zeta(j.at("beta").get<double>(), j.at("drift").get<double>());
    throw std::invalid_argument("unknown increment law type: " + type);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "scenario",  "gap_law",       "increment_law",   "n_grid",       "t_grid",
        "q_grid",    "a_grid",        "replicas",        "seed",         "workers",
        "out_dir",   "media",         "reference_draws", "oracle_length", "compose_grid",
        "repetitions", "observable",  "protocol",        "medium_seed",  "selfsim_t"};
    return keys;
}

}  // namespace

ScenarioConfig config_from_json(const std::string& json_text) {
    const ordered_json j = ordered_json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    const std::string id = j.at("scenario").get<std::string>();
    ScenarioConfig cfg = scenario_defaults(id);
    const auto& keys = config_keys();
    for (const auto& [key, value] : j.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw std::invalid_argument("unknown config key: " + key);
        (void)value;
    }
    if (j.contains("gap_law")) cfg.gap_law = gap_law_from_json(j.at("gap_law"));
    if (j.contains("increment_law"))
        cfg.increment_law = increment_law_from_json(j.at("increment_law"));
    if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<double>>();
    if (j.contains("t_grid")) cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
    if (j.contains("q_grid")) cfg.q_grid = j.at("q_grid").get<std::vector<double>>();
    if (j.contains("a_grid")) cfg.a_grid = j.at("a_grid").get<std::vector<double>>();
    if (j.contains("replicas")) cfg.replicas = j.at("replicas").get<long long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("media")) cfg.media = j.at("media").get<long long>();
    if (j.contains("reference_draws"))
        cfg.reference_draws = j.at("reference_draws").get<long long>();
    if (j.contains("oracle_length")) cfg.oracle_length = j.at("oracle_length").get<long long>();
    if (j.contains("compose_grid")) cfg.compose_grid = j.at("compose_grid").get<long long>();
    if (j.contains("repetitions")) cfg.repetitions = j.at("repetitions").get<long long>();
    if (j.contains("selfsim_t")) cfg.selfsim_t = j.at("selfsim_t").get<double>();
    if (j.contains("observable")) cfg.observable = j.at("observable").get<std::string>();
    if (j.contains("protocol")) cfg.protocol = j.at("protocol").get<std::string>();
    if (j.contains("medium_seed")) cfg.medium_seed = j.at("medium_seed").get<std::uint64_t>();
    return cfg;
}

std::string config_to_json(const ScenarioConfig& cfg) {
    ordered_json j;
    j["scenario"] = cfg.scenario;
    j["gap_law"] = gap_law_to_json(cfg.gap_law);
    j["increment_law"] = increment_law_to_json(cfg.increment_law);
    j["n_grid"] = cfg.n_grid;
    j["t_grid"] = cfg.t_grid;
    j["q_grid"] = cfg.q_grid;
    j["a_grid"] = cfg.a_grid;
    j["replicas"] = cfg.replicas;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["out_dir"] = cfg.out_dir;
    j["media"] = cfg.media;
    j["reference_draws"] = cfg.reference_draws;
    j["oracle_length"] = cfg.oracle_length;
    j["compose_grid"] = cfg.compose_grid;
    j["repetitions"] = cfg.repetitions;
    j["selfsim_t"] = cfg.selfsim_t;
    j["observable"] = cfg.observable;
    j["protocol"] = cfg.protocol;
    j["medium_seed"] = cfg.medium_seed;
    return j.dump(2);
}

}  // namespace levylab
