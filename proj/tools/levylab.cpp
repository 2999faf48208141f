#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "levylab/constants.hpp"
#include "levylab/scenario.hpp"

namespace {

void on_sigint(int) { levylab::request_interrupt(); }

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

levylab::ScenarioConfig build_config(const std::string& config_path, const std::string& scenario,
                                     bool has_seed, std::uint64_t seed, long long replicas,
                                     int workers, const std::string& out_dir) {
    levylab::ScenarioConfig cfg;
    if (!config_path.empty()) {
        cfg = levylab::config_from_json(read_file(config_path));
        if (!scenario.empty() && scenario != cfg.scenario)
            throw std::runtime_error("--scenario disagrees with the config file; drop one");
    } else {
        if (scenario.empty()) throw std::runtime_error("either --scenario or --config is required");
        cfg = levylab::scenario_defaults(scenario);
    }
    if (has_seed) cfg.seed = seed;
    if (replicas > 0) cfg.replicas = replicas;
    if (workers > 0) cfg.workers = workers;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    return cfg;
}

int cmd_run(const levylab::ScenarioConfig& cfg) {
    const auto violations = levylab::validate(cfg);
    if (!violations.empty()) {
        for (const auto& msg : violations) std::cerr << "config error: " << msg << '\n';
        return 2;
    }
    const levylab::ScenarioReport report = levylab::run(cfg);
    for (const auto& err : report.errors) std::cerr << "error: " << err << '\n';
    for (const auto& v : report.verdicts)
        std::printf("[%s] %s: estimate=%.6g expected=%.6g tol=%.6g  %s\n",
                    v.pass ? "PASS" : "FAIL", v.name.c_str(), v.estimate, v.expected, v.tolerance,
                    v.detail.c_str());
    for (const auto& v : report.info)
        std::printf("[info] %s: estimate=%.6g  %s\n", v.name.c_str(), v.estimate,
                    v.detail.c_str());
    if (report.interrupted) std::printf("interrupted; partial results in %s\n",
                                        report.out_dir.string().c_str());
    if (!report.out_dir.empty())
        std::printf("summary: %s/summary.json\n", report.out_dir.string().c_str());
    return report.exit_code;
}

int cmd_validate(const levylab::ScenarioConfig& cfg) {
    const auto violations = levylab::validate(cfg);
    if (violations.empty()) {
        std::printf("ok\n");
        return 0;
    }
    for (const auto& msg : violations) std::printf("violation: %s\n", msg.c_str());
    return 2;
}

int cmd_constants(const std::string& table, double mu) {
    using namespace levylab;
    if (table == "mq") {
        std::printf("q,m_q\n");
        for (double q = 0.0; q <= 8.0; q += 0.5)
            std::printf("%.17g,%.17g\n", q, gaussian_abs_moment(q));
        return 0;
    }
    if (table == "f") {
        std::printf("alpha,r,f\n");
        for (const double alpha : {1.0, 1.25, 1.5, 1.75, 2.0})
            for (const double r : {0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99})
                std::printf("%.17g,%.17g,%.17g\n", alpha, r, f_alpha(alpha, r));
        return 0;
    }
    if (table == "d") {
        std::printf("mu,alpha,q,d\n");
        for (const double alpha : {1.25, 1.5, 1.75}) {
            const double corner = 2.0 * alpha - 1.0;
            for (double dq = 0.0; dq <= 3.0; dq += 1.0) {
                const double q = corner + dq;
                std::printf("%.17g,%.17g,%.17g,%.17g\n", mu, alpha, q, d_const(mu, alpha, q));
            }
        }
        return 0;
    }
    if (table == "F") {
        std::printf("mu,alpha,a,F\n");
        for (const double alpha : {1.25, 1.5, 1.75})
            for (const double a : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0})
                std::printf("%.17g,%.17g,%.17g,%.17g\n", mu, alpha, a, F_const(mu, alpha, a));
        return 0;
    }
    if (table == "gamma") {
        std::printf("alpha,q,gamma\n");
        for (const double alpha : {1.25, 1.5, 1.75})
            for (double q = 0.5; q <= 6.0; q += 0.5)
                std::printf("%.17g,%.17g,%.17g\n", alpha, q, gamma_exponent(alpha, q));
        return 0;
    }
    std::cerr << "unknown table: " << table << " (expected mq|f|d|F|gamma)\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, on_sigint);

    CLI::App app{"Monte Carlo laboratory for random walks in 1D heavy-tailed random media"};
    app.require_subcommand(1);

    std::string config_path;
    std::string scenario;
    std::uint64_t seed = 0;
    long long replicas = 0;
    int workers = 0;
    std::string out_dir;

    auto* run_cmd = app.add_subcommand("run", "run a scenario and write CSV/JSON reports");
    run_cmd->add_option("--scenario", scenario, "scenario id (thm1..thm11, thm3a.., custom)");
    run_cmd->add_option("--config", config_path, "JSON config file");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "master seed");
    run_cmd->add_option("--replicas", replicas, "replica count override");
    run_cmd->add_option("--workers", workers, "worker thread count");
    run_cmd->add_option("--out", out_dir, "output directory (default $LEVYLAB_OUT or ./out)");

    auto* validate_cmd = app.add_subcommand("validate", "check a config against the theorem hypotheses");
    validate_cmd->add_option("--config", config_path, "JSON config file")->required();

    std::string table;
    double mu = 3.0;
    auto* constants_cmd = app.add_subcommand("constants", "dump constant tables as CSV");
    constants_cmd->add_option("--table", table, "mq|f|d|F|gamma")->required();
    constants_cmd->add_option("--mu", mu, "mean gap for the d/F tables (default 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(build_config(config_path, scenario, seed_opt->count() > 0, seed,
                                        replicas, workers, out_dir));
        if (validate_cmd->parsed())
            return cmd_validate(build_config(config_path, "", false, 0, 0, 0, ""));
        if (constants_cmd->parsed()) return cmd_constants(table, mu);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
