#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsmax/harness.hpp"

using namespace rsmax;

TEST_CASE("config parsing") {
    std::istringstream in(
        "# comment\n"
        "scenario=multicast\n"
        "n=12\n"
        "budgets=100,160,240\n"
        "theta=1.0\n"
        "k=auto\n"
        "seeds=1..4\n"
        "lambda=0.8\n"
        "algos=ours,rmax\n"
        "jobs=2\n");
    const ScenarioConfig cfg = parse_config(in);
    CHECK(cfg.scenario == ScenarioConfig::Scenario::Multicast);
    CHECK(cfg.n == 12);
    CHECK(cfg.budgets == std::vector<double>{100, 160, 240});
    CHECK(cfg.k == 0);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(cfg.lambda == doctest::Approx(0.8));
    CHECK(cfg.algos == std::vector<std::string>{"ours", "rmax"});
    CHECK(cfg.jobs == 2);

    std::istringstream bad("scenario=poi\nbogus=1\n");
    CHECK_THROWS(parse_config(bad));
    std::istringstream empty_budget("scenario=poi\nbudgets=\n");
    CHECK_THROWS(parse_config(empty_budget));
}

TEST_CASE("poi generator constants") {
    const Instance inst = gen_poi_instance(3);
    CHECK(inst.n == 45);
    CHECK(inst.budget == doctest::Approx(120.0));
    const PointSet& pts = *inst.cost.points();
    CHECK(pts.travel_rate == doctest::Approx(0.6));
    CHECK(pts.depot.x == doctest::Approx(0.0));
    CHECK(pts.depot.y == doctest::Approx(0.0));
    for (const auto& p : pts.coords) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 35.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 40.0);
    }
    for (double c : inst.cost.visiting_costs()) {
        CHECK(c > 0.0);
        CHECK(c < 2.0);
    }
    CHECK(inst.k == default_k(45));

    // Pure function of the seed.
    const Instance again = gen_poi_instance(3);
    CHECK(again.cost.points()->coords[7].x == doctest::Approx(pts.coords[7].x));
    CHECK(gen_poi_instance(4).cost.points()->coords[7].x != doctest::Approx(pts.coords[7].x));
}

TEST_CASE("multicast generator constants") {
    const Instance inst = gen_multicast_instance(10, 5, 300.0);
    CHECK(inst.n == 10);
    const WeightedGraph& g = *inst.cost.graph();
    CHECK(g.items() == 10);
    for (int u = 0; u < g.vertices(); ++u)
        for (int v = u + 1; v < g.vertices(); ++v) {
            CHECK(g.edge(u, v) >= 1.0);
            CHECK(g.edge(u, v) <= 200.0);
            CHECK(g.edge(u, v) == doctest::Approx(std::floor(g.edge(u, v))));  // integer delays
        }
    CHECK(inst.cost.visiting_sum({0, 1, 2}) == doctest::Approx(0.0));
    CHECK(inst.theta == doctest::Approx(1.0));
    CHECK_THROWS_AS(gen_multicast_instance(1, 1, 10.0), std::invalid_argument);

    const Instance again = gen_multicast_instance(10, 5, 300.0);
    CHECK(again.cost.graph()->edge(0, 3) == doctest::Approx(g.edge(0, 3)));
}

TEST_CASE("run experiment") {
    ScenarioConfig cfg;
    cfg.scenario = ScenarioConfig::Scenario::Multicast;
    cfg.n = 8;
    cfg.budgets = {80.0, 200.0};
    cfg.seeds = {1, 2};
    cfg.jobs = 4;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 3 * 2 * 2);

    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& a = records[i - 1];
        const auto& b = records[i];
        CHECK(std::tie(a.algo, a.seed, a.budget) <= std::tie(b.algo, b.seed, b.budget));
    }
    for (const auto& r : records) {
        CHECK(r.error.empty());
        // Energy accounting identity and budget safety.
        CHECK(r.travel_energy + r.collect_energy == doctest::Approx(r.cost));
        if (r.algo == "ours")
            CHECK(r.over_budget <= cfg.theta + 1e-9);
        else
            CHECK(r.over_budget == doctest::Approx(0.0));
    }

    // Empty algorithm list yields an empty record list.
    ScenarioConfig none = cfg;
    none.algos.clear();
    CHECK(run_experiment(none).empty());
}

TEST_CASE("csv and report emission") {
    ScenarioConfig cfg;
    cfg.scenario = ScenarioConfig::Scenario::Multicast;
    cfg.n = 6;
    cfg.budgets = {60.0, 120.0};
    cfg.seeds = {1};
    const auto records = run_experiment(cfg);

    std::ostringstream a, b;
    write_records_csv(a, records);
    write_records_csv(b, records);
    const std::string csv = a.str();
    CHECK(csv == b.str());  // byte-identical re-emission
    CHECK(csv.rfind("algo,seed,budget,value,cost,over_budget,items,travel_energy,"
                    "collect_energy,f_calls,rho_calls,ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(records.size()) + 1);

    const auto dir = std::filesystem::temp_directory_path() / "rsmax_report_test";
    std::filesystem::remove_all(dir);
    emit_report(records, cfg, dir.string());
    CHECK(std::filesystem::exists(dir / "runs.csv"));
    CHECK(std::filesystem::exists(dir / "value_vs_budget.svg"));
    CHECK(std::filesystem::exists(dir / "energy_split.svg"));
    std::ifstream svg(dir / "value_vs_budget.svg");
    std::stringstream body;
    body << svg.rdbuf();
    CHECK(body.str().find("<svg") != std::string::npos);
    CHECK(body.str().find("</svg>") != std::string::npos);
    std::filesystem::remove_all(dir);

    CHECK_THROWS(emit_report({}, cfg, dir.string()));
}
