// Command-line front end: instance generation, single solves, benchmark
// sweeps, the verification suite, and routing-oracle audits.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rsmax/baselines.hpp"
#include "rsmax/harness.hpp"
#include "rsmax/matrix.hpp"
#include "rsmax/optimizer.hpp"
#include "rsmax/report.hpp"
#include "rsmax/verification.hpp"

namespace {

using namespace rsmax;

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> out;
    const auto range = spec.find("..");
    if (range != std::string::npos) {
        const auto lo = std::stoull(spec.substr(0, range));
        const auto hi = std::stoull(spec.substr(range + 2));
        if (hi < lo) throw std::runtime_error("bad seed range: " + spec);
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoull(part));
    if (out.empty()) throw std::runtime_error("no seeds in: " + spec);
    return out;
}

int parse_k(const std::string& spec) { return spec == "auto" ? 0 : std::stoi(spec); }

ScenarioConfig::Scenario parse_scenario(const std::string& s) {
    if (s == "poi") return ScenarioConfig::Scenario::Poi;
    if (s == "multicast") return ScenarioConfig::Scenario::Multicast;
    throw std::runtime_error("unknown scenario: " + s);
}

// Instance manifest written by `gen` and read back by `solve`: key=value
// lines naming the scenario, the data files (relative to the manifest), and
// the solve parameters.
void write_manifest_files(const Instance& inst, ScenarioConfig::Scenario scenario,
                          std::uint64_t seed, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    std::ofstream manifest(dir / "instance.txt");
    if (!manifest) throw std::runtime_error("cannot write manifest under " + out_dir);
    manifest.precision(17);
    manifest << "scenario=" << (scenario == ScenarioConfig::Scenario::Poi ? "poi" : "multicast")
             << "\nseed=" << seed << "\nn=" << inst.n << "\nbudget=" << inst.budget
             << "\ntheta=" << inst.theta << "\nk=" << inst.k << "\n";
    if (scenario == ScenarioConfig::Scenario::Poi) {
        manifest << "points=points.txt\ncovariance=covariance.txt\n";
        std::ofstream pf(dir / "points.txt");
        write_points(pf, *inst.cost.points(), inst.cost.visiting_costs());
        std::ofstream cf(dir / "covariance.txt");
        write_square_matrix(cf, inst.objective.covariance().entries);
    } else {
        manifest << "graph=graph.txt\nsimilarity=similarity.txt\nlambda=" << inst.objective.lambda()
                 << "\n";
        std::ofstream gf(dir / "graph.txt");
        write_graph(gf, *inst.cost.graph());
        std::ofstream sf(dir / "similarity.txt");
        write_square_matrix(sf, inst.objective.similarity().entries);
    }
}

Instance load_manifest(const std::string& path, const std::string& oracle_kind) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    const fs::path dir = fs::path(path).parent_path();
    std::string scenario, points_file, cov_file, graph_file, sim_file;
    double budget = 0.0, theta = 0.0, lambda = 1.0;
    int n = 0, k = 0;
    std::uint64_t seed = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("manifest: expected key=value: " + line);
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "scenario") scenario = value;
        else if (key == "seed") seed = std::stoull(value);
        else if (key == "n") n = std::stoi(value);
        else if (key == "budget") budget = std::stod(value);
        else if (key == "theta") theta = std::stod(value);
        else if (key == "k") k = std::stoi(value);
        else if (key == "lambda") lambda = std::stod(value);
        else if (key == "points") points_file = value;
        else if (key == "covariance") cov_file = value;
        else if (key == "graph") graph_file = value;
        else if (key == "similarity") sim_file = value;
        else throw std::runtime_error("manifest: unknown key " + key);
    }
    (void)seed;
    if (scenario == "poi") {
        PointsFile pf = read_points_file((dir / points_file).string());
        SquareMatrix cov = read_square_matrix_file((dir / cov_file).string());
        auto kind = CostOracle::Kind::TspTwoOpt;
        int fallback = 15;
        if (oracle_kind == "tsp-exact") {
            kind = CostOracle::Kind::TspExact;
            fallback = 0;
        } else if (oracle_kind == "tsp-mst-double") {
            kind = CostOracle::Kind::TspMstDouble;
            fallback = 0;
        } else if (!oracle_kind.empty() && oracle_kind != "tsp-two-opt") {
            throw std::runtime_error("oracle kind " + oracle_kind + " does not fit a point instance");
        }
        CostOracle cost = CostOracle::make_tsp(kind, std::move(pf.points),
                                               std::move(pf.visiting_costs), fallback);
        ObjectiveOracle obj = ObjectiveOracle::make_mutual_information(CovarianceMatrix(std::move(cov)));
        Instance inst{n, std::move(obj), std::move(cost), budget,
                      theta, k > 0 ? k : default_k(n)};
        if (inst.theta < inst.cost.theta()) inst.theta = inst.cost.theta();
        return inst;
    }
    if (scenario == "multicast") {
        WeightedGraph g = read_graph_file((dir / graph_file).string());
        SquareMatrix sim = read_square_matrix_file((dir / sim_file).string());
        auto kind = CostOracle::Kind::SteinerKmb;
        if (oracle_kind == "steiner-exact") kind = CostOracle::Kind::SteinerExact;
        else if (!oracle_kind.empty() && oracle_kind != "steiner-kmb")
            throw std::runtime_error("oracle kind " + oracle_kind + " does not fit a graph instance");
        CostOracle cost = CostOracle::make_steiner(kind, std::move(g));
        ObjectiveOracle obj =
            ObjectiveOracle::make_cut_diversity(SimilarityMatrix(std::move(sim)), lambda);
        Instance inst{n, std::move(obj), std::move(cost), budget,
                      theta, k > 0 ? k : default_k(n)};
        if (inst.theta < inst.cost.theta()) inst.theta = inst.cost.theta();
        return inst;
    }
    throw std::runtime_error("manifest: missing or unknown scenario");
}

void print_solution(const std::string& algo, const Solution& sol) {
    std::cout.precision(12);
    std::cout << "algo: " << algo << "\nvalue: " << sol.value << "\ncost: " << sol.cost
              << "\nover_budget: " << sol.over_budget_ratio << "\nitems:";
    for (Item it : sol.selected) std::cout << " " << it;
    std::cout << "\nf_calls: " << sol.f_calls << "\nrho_calls: " << sol.rho_calls << "\n";
    if (!sol.warning.empty()) std::cout << "warning: " << sol.warning << "\n";
}

int cmd_gen(const std::string& scenario, int n, std::uint64_t seed, double budget, double lambda,
            int k, const std::string& out_dir) {
    const auto sc = parse_scenario(scenario);
    Instance inst = sc == ScenarioConfig::Scenario::Poi
                        ? gen_poi_instance(seed, budget, k)
                        : gen_multicast_instance(n, seed, budget, lambda, k);
    write_manifest_files(inst, sc, seed, out_dir);
    std::cout << "wrote instance files to " << out_dir << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& scenario, int n,
              std::uint64_t seed, double budget, double theta, const std::string& k_spec,
              const std::string& algo, const std::string& oracle, bool trace,
              const std::string& out_dir) {
    Instance inst = !instance_path.empty()
                        ? load_manifest(instance_path, oracle)
                        : [&] {
                              ScenarioConfig cfg;
                              cfg.scenario = parse_scenario(scenario);
                              cfg.n = n;
                              cfg.budgets = {budget};
                              cfg.theta = theta;
                              cfg.k = parse_k(k_spec);
                              cfg.seeds = {seed};
                              return make_instance(cfg, seed, budget);
                          }();
    if (theta > inst.theta) inst.theta = theta;
    const int k = parse_k(k_spec);
    if (k > 0) inst.k = k;
    std::ostringstream trace_out;
    std::ostream* tr = trace ? &trace_out : nullptr;
    Solution sol;
    if (algo == "ours") sol = solve(inst, tr);
    else if (algo == "rand") sol = rand_baseline(inst, seed, tr);
    else if (algo == "rmax") sol = rmax_baseline(inst, tr);
    else throw std::runtime_error("unknown algorithm: " + algo);
    print_solution(algo, sol);
    if (trace) {
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            std::ofstream tf(fs::path(out_dir) / "trace.txt");
            tf << trace_out.str();
        } else {
            std::cout << trace_out.str();
        }
    }
    return kExitOk;
}

int cmd_bench(const std::string& config_path, const std::string& scenario, int n,
              const std::string& budgets_spec, double theta, const std::string& k_spec,
              const std::string& seeds_spec, const std::string& algos_spec, double lambda,
              int jobs, const std::string& out_dir) {
    ScenarioConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    if (!scenario.empty()) cfg.scenario = parse_scenario(scenario);
    if (n > 0) cfg.n = n;
    if (!budgets_spec.empty()) {
        cfg.budgets.clear();
        std::stringstream ss(budgets_spec);
        std::string part;
        while (std::getline(ss, part, ',')) cfg.budgets.push_back(std::stod(part));
    }
    if (theta >= 0.0) cfg.theta = theta;
    if (!k_spec.empty()) cfg.k = parse_k(k_spec);
    if (!seeds_spec.empty()) cfg.seeds = parse_seeds(seeds_spec);
    if (!algos_spec.empty()) {
        cfg.algos.clear();
        std::stringstream ss(algos_spec);
        std::string part;
        while (std::getline(ss, part, ',')) cfg.algos.push_back(part);
    }
    if (lambda > 0.0) cfg.lambda = lambda;
    if (jobs > 0) cfg.jobs = jobs;
    cfg.validate();
    const auto records = run_experiment(cfg);
    emit_report(records, cfg, out_dir);
    int failed = 0;
    for (const auto& r : records)
        if (!r.error.empty()) {
            ++failed;
            std::cerr << "run failed: " << r.algo << " seed " << r.seed << " budget " << r.budget
                      << ": " << r.error << "\n";
        }
    std::cout << records.size() << " runs, " << failed << " failed; report in " << out_dir << "\n";
    return kExitOk;
}

int cmd_verify(int n, int runs, int jobs, const std::string& out_dir) {
    std::vector<VerificationReport> reports;
    reports.push_back(check_bicriterion(
        [n](std::uint64_t seed) { return random_tsp_instance(n, seed); }, runs, jobs));
    reports.push_back(check_prefix_theorems(
        [n](std::uint64_t seed) { return random_tsp_instance(n, seed); }, runs, jobs));
    reports.push_back(check_prefix_containment_kmb(
        [](std::uint64_t seed) { return random_steiner_instance(6, seed); }, runs, jobs));
    reports.push_back(check_usm_guarantee(12, runs));
    reports.push_back(check_routing_envelopes(runs));
    reports.push_back(check_cost_monotonicity(
        [](std::uint64_t seed) { return random_tsp_instance(7, seed); }, std::min(runs, 50)));
    bool all_pass = true;
    for (const auto& rep : reports) {
        print_report(std::cout, rep);
        all_pass = all_pass && rep.passed();
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream csv(fs::path(out_dir) / "verification.csv");
        write_report_csv(csv, reports);
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_oracle_check(const std::string& oracle, int n, int runs) {
    // Envelope + monotonicity audit specialized to one oracle kind.
    VerificationReport rep;
    rep.property = "oracle-audit(" + oracle + ")";
    for (int t = 0; t < runs; ++t) {
        const std::uint64_t seed = static_cast<std::uint64_t>(t) + 1;
        const bool is_graph = oracle == "steiner-kmb" || oracle == "steiner-exact";
        Instance exact = is_graph ? random_steiner_instance(std::min(n, 7), seed)
                                  : random_tsp_instance(std::min(n, 10), seed);
        CostOracle heuristic = [&] {
            if (oracle == "tsp-exact") return CostOracle::make_tsp(
                CostOracle::Kind::TspExact, *exact.cost.points(), exact.cost.visiting_costs());
            if (oracle == "tsp-mst-double") return CostOracle::make_tsp(
                CostOracle::Kind::TspMstDouble, *exact.cost.points(), exact.cost.visiting_costs());
            if (oracle == "steiner-kmb") return CostOracle::make_steiner(
                CostOracle::Kind::SteinerKmb, *exact.cost.graph(), exact.cost.visiting_costs());
            if (oracle == "steiner-exact") return CostOracle::make_steiner(
                CostOracle::Kind::SteinerExact, *exact.cost.graph(), exact.cost.visiting_costs());
            throw std::runtime_error("unknown oracle kind: " + oracle);
        }();
        std::mt19937_64 rng(seed * 97 + 13);
        for (int q = 0; q < 20; ++q) {
            ItemSet s;
            for (int i = 0; i < exact.n; ++i)
                if (rng() & 1) s.push_back(i);
            const double lo = exact.cost.route_cost(s).cost;
            const double hi = heuristic.route_cost(s).cost;
            ++rep.instances_checked;
            if (hi < lo - 1e-9 || hi > heuristic.guarantee_factor() * lo + 1e-9)
                rep.add_violation({seed, s, {}, hi, heuristic.guarantee_factor() * lo,
                                   "approximation envelope breached"});
            for (int i = 0; i < exact.n; ++i) {
                if (set_contains(s, i)) continue;
                const double mc = heuristic.marginal_cost(s, i);
                if (mc < heuristic.c_min() - 1e-9)
                    rep.add_violation({seed, s, {i}, mc, heuristic.c_min(),
                                       "marginal cost below c_min"});
            }
        }
    }
    print_report(std::cout, rep);
    return rep.passed() ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Submodular maximization under routing budgets: solver, baselines, benchmarks, "
                 "and theorem verification"};
    app.require_subcommand(1);

    std::string scenario = "poi", k_spec = "auto", out_dir, instance_path, algo = "ours";
    std::string oracle, seeds_spec, budgets_spec, algos_spec, config_path;
    int n = 45, runs = 100, jobs = 1;
    std::uint64_t seed = 1;
    double budget = 120.0, theta = -1.0, lambda = 1.0;
    bool trace = false;

    auto* gen = app.add_subcommand("gen", "Generate instance files from scenario parameters");
    gen->add_option("--scenario", scenario, "poi or multicast");
    gen->add_option("--n", n, "processor count (multicast only)");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--budget", budget, "routing budget");
    gen->add_option("--lambda", lambda, "cut-diversity tradeoff in (0,1]");
    gen->add_option("--k", k_spec, "iteration count, integer or auto");
    gen->add_option("--out", out_dir, "output directory")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Run one algorithm on one instance");
    solve_cmd->add_option("--instance", instance_path, "manifest written by gen");
    solve_cmd->add_option("--scenario", scenario, "poi or multicast (when no --instance)");
    solve_cmd->add_option("--n", n, "processor count (multicast only)");
    solve_cmd->add_option("--seed", seed, "generator / baseline seed");
    solve_cmd->add_option("--budget", budget, "routing budget");
    solve_cmd->add_option("--theta", theta, "budget-relaxation parameter override");
    solve_cmd->add_option("--k", k_spec, "iteration count, integer or auto");
    solve_cmd->add_option("--algo", algo, "ours, rand, or rmax");
    solve_cmd->add_option("--oracle", oracle,
                          "tsp-exact, tsp-mst-double, steiner-kmb, or steiner-exact");
    solve_cmd->add_flag("--trace", trace, "emit per-iteration trace");
    solve_cmd->add_option("--out", out_dir, "directory for the trace file");

    auto* bench = app.add_subcommand("bench", "Run an experiment sweep and emit the report");
    bench->add_option("--config", config_path, "key=value config file");
    bench->add_option("--scenario", scenario, "poi or multicast")->default_str("");
    bench->add_option("--n", n, "processor count (multicast only)")->default_val(0);
    bench->add_option("--budget,--budgets", budgets_spec, "comma-separated budgets");
    bench->add_option("--theta", theta, "budget-relaxation parameter");
    bench->add_option("--k", k_spec, "iteration count, integer or auto")->default_str("");
    bench->add_option("--seed,--seeds", seeds_spec, "comma list or lo..hi range");
    bench->add_option("--algo,--algos", algos_spec, "comma list from {ours,rand,rmax}");
    bench->add_option("--lambda", lambda, "cut-diversity tradeoff")->default_val(0.0);
    bench->add_option("--jobs", jobs, "parallel workers")->default_val(0);
    bench->add_option("--out", out_dir, "report directory")->required();

    auto* verify = app.add_subcommand("verify", "Run the theorem verification suite");
    verify->add_option("--n", n, "instance size for exhaustive checks")->default_val(8);
    verify->add_option("--seeds", runs, "number of seeded instances per property");
    verify->add_option("--jobs", jobs, "parallel workers");
    verify->add_option("--out", out_dir, "optional directory for verification.csv");

    auto* ocheck = app.add_subcommand("oracle-check",
                                      "Approximation and monotonicity audit of a cost oracle");
    ocheck->add_option("--oracle", oracle,
                       "tsp-exact, tsp-mst-double, steiner-kmb, or steiner-exact")
        ->required();
    ocheck->add_option("--n", n, "instance size cap")->default_val(8);
    ocheck->add_option("--seeds", runs, "number of seeded instances");

    // Subcommand flags shadow the shared variables above; bench clears its
    // own defaults so "flag absent" is distinguishable from "flag given".
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(scenario, n, seed, budget, lambda, parse_k(k_spec), out_dir);
        if (solve_cmd->parsed())
            return cmd_solve(instance_path, scenario, n, seed, budget, theta, k_spec, algo, oracle,
                             trace, out_dir);
        if (bench->parsed())
            return cmd_bench(config_path, scenario, n, budgets_spec, theta, k_spec, seeds_spec,
                             algos_spec, lambda, jobs, out_dir);
        if (verify->parsed()) return cmd_verify(n, runs, jobs, out_dir);
        if (ocheck->parsed()) return cmd_oracle_check(oracle, n, runs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
