#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsmax/optimizer.hpp"

namespace rsmax {

struct ScenarioConfig {
    enum class Scenario { Multicast, Poi };

    Scenario scenario = Scenario::Poi;
    int n = 45;  // processor count (multicast); the poi scenario is fixed at 45
    std::vector<double> budgets{120.0};
    double theta = 1.0;
    int k = 0;  // 0 = auto (ceil sqrt n)
    std::vector<std::uint64_t> seeds{1};
    double lambda = 1.0;
    std::vector<std::string> algos{"ours", "rand", "rmax"};
    int jobs = 1;

    void validate() const;
};

// Config file: key=value lines; `budgets` comma separated, `seeds` either a
// comma list or a `lo..hi` range, `k` an integer or `auto`.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

struct RunRecord {
    std::string algo;
    std::uint64_t seed = 0;
    double budget = 0.0;
    double value = 0.0;
    double cost = 0.0;
    double over_budget = 0.0;
    ItemSet selected;
    double travel_energy = 0.0;
    double collect_energy = 0.0;
    std::int64_t f_calls = 0;
    std::int64_t rho_calls = 0;
    double ms = 0.0;
    std::string error;  // nonempty when the run failed
};

// Complete delay graph on n processors plus the user root (delays uniform
// integers in [1,200]), cut-diversity objective over synthetic low-rank
// rating similarities, KMB cost oracle (theta = 1), zero visiting costs.
Instance gen_multicast_instance(int n, std::uint64_t seed, double budget, double lambda = 1.0,
                                int k = 0);

// 45 PoIs uniform in [0,35]x[0,40], depot at the (0,0) corner, travel rate
// 0.6, collection costs uniform in (0,2), squared-exponential covariance
// (sigma^2 = 1, l = 8) with a mutual-information objective, and an
// MST-double + two-opt cost oracle with exact fallback up to 15 items.
Instance gen_poi_instance(std::uint64_t seed, double budget = 120.0, int k = 0);

Instance make_instance(const ScenarioConfig& config, std::uint64_t seed, double budget);

// One record per (algorithm, seed, budget), sorted by that key. Per-run
// failures are recorded in the `error` field, not fatal. Throws
// std::logic_error if any run breaks the budget-safety invariant
// (over_budget <= theta for ours, == 0 for the baselines).
std::vector<RunRecord> run_experiment(const ScenarioConfig& config);

// Writes runs.csv (fixed header, byte-identical given equal records) plus
// value_vs_budget.svg (with the Rand error band), energy_split.svg, and for
// the poi scenario selection_overlay.svg, into `out_dir`.
void emit_report(const std::vector<RunRecord>& records, const ScenarioConfig& config,
                 const std::string& out_dir);

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace rsmax
