#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "levylab/medium.hpp"
#include "levylab/walks.hpp"

namespace levylab {

// One reproducible experiment. Every field has a scenario-specific default;
// verdicts are a pure function of (config, seed) and do not depend on the
// worker count.
struct ScenarioConfig {
    std::string scenario;

    GapLaw gap_law = GapLaw::pareto(1.5, 1.0);
    IncrementLaw increment_law = IncrementLaw::simple_symmetric();

    std::vector<double> n_grid;
    std::vector<double> t_grid;
    std::vector<double> q_grid;
    std::vector<double> a_grid;

    long long replicas = 10000;
    std::uint64_t seed = 12345;
    int workers = 0;          // 0 = hardware concurrency
    std::string out_dir;      // empty = $LEVYLAB_OUT or ./out

    long long media = 3;             // quenched scenarios: number of medium realizations
    long long reference_draws = 10000;
    long long oracle_length = 100000;   // partial-sum oracle horizon
    long long compose_grid = 100000;    // composition discretization
    long long repetitions = 3;          // independent-seed repetitions of KS verdicts
    double selfsim_t = 3e7;             // time for marginal self-similarity checks

    // custom scenario
    std::string observable = "x_at";    // y_at | x_at
    std::string protocol = "annealed";  // annealed | quenched
    std::uint64_t medium_seed = 777;
};

bool known_scenario(const std::string& id);
std::vector<std::string> scenario_ids();
ScenarioConfig scenario_defaults(const std::string& id);

// Enumerates every violated hypothesis of the scenario's theorem; empty when
// the configuration is admissible.
std::vector<std::string> validate(const ScenarioConfig& config);

struct Verdict {
    std::string name;
    bool pass = false;
    double estimate = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<Verdict> verdicts;
    std::vector<Verdict> info;  // reported, not gating
    std::vector<std::string> errors;
    std::vector<std::string> outputs;
    std::filesystem::path out_dir;
    bool interrupted = false;
    int exit_code = 2;  // 0 pass, 1 verdict failure, 2 usage/config error

    bool all_pass() const;
};

// Runs the scenario, writes per-point CSVs and summary.json under
// <out_dir>/<scenario>/, and returns the verdicts. Partial results are
// flushed when an interrupt is requested.
ScenarioReport run(const ScenarioConfig& config);

// JSON round trip; parsing starts from the scenario defaults and rejects
// unknown keys.
ScenarioConfig config_from_json(const std::string& json_text);
std::string config_to_json(const ScenarioConfig& config);

// Cooperative interrupt flag (wired to SIGINT by the CLI).
void request_interrupt();
bool interrupt_requested();
void clear_interrupt();

}  // namespace levylab
