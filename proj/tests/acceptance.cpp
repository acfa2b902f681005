// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here and must not be loosened to make a run green.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rsmax/baselines.hpp"
#include "rsmax/harness.hpp"
#include "rsmax/verification.hpp"

using namespace rsmax;

namespace {

constexpr double kTol = 1e-9;
int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, bool pass, const std::string& what, const std::string& detail = "") {
    std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " - " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

std::string count_detail(const VerificationReport& r, double secs) {
    return std::to_string(r.instances_checked) + " checked, " +
           std::to_string(r.violations.size()) + " violations, " + std::to_string(secs) + " s";
}

// 1. Bicriterion bound on 300 seeded n=8 exact-TSP instances, under 60 s.
void criterion1() {
    Timer t;
    const auto rep = check_bicriterion(
        [](std::uint64_t seed) { return random_tsp_instance(8, seed); }, 300, 8);
    const double secs = t.seconds();
    report(1, rep.passed() && secs < 60.0,
           "bicriterion value/budget bounds on 300 seeds, n=8", count_detail(rep, secs));
}

// 2. USM 1/3 guarantee on 500 random submodular tables, n <= 12, under 30 s.
void criterion2() {
    Timer t;
    const auto rep = check_usm_guarantee(12, 500);
    const double secs = t.seconds();
    report(2, rep.passed() && secs < 30.0, "USM 1/3-approximation on 500 random tables",
           count_detail(rep, secs));
}

// 3. Prefix containment and gap bounds over 200 seeds, exact oracle,
//    theta in {c_min/(2c)} and {r*c_min/c : r in 1..3}.
void criterion3() {
    Timer t;
    const auto rep = check_prefix_theorems(
        [](std::uint64_t seed) { return random_tsp_instance(8, seed); }, 200, 8);
    report(3, rep.passed(), "prefix containment and |gap| <= r on 200 seeds",
           count_detail(rep, t.seconds()));
}

// 4. Routing envelopes: KMB <= 2x exact Steiner, MST-double <= 2x Held-Karp,
//    two-opt never increases cost; 200 random instances each.
void criterion4() {
    Timer t;
    const auto rep = check_routing_envelopes(200);
    report(4, rep.passed(), "routing-oracle approximation envelopes on 200 seeds",
           count_detail(rep, t.seconds()));
}

// 5. Exhaustive submodularity at n=6 for all three shipped objectives.
void criterion5() {
    Timer t;
    long long checked = 0, violations = 0;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> sd(0.0, 5.0);

    for (const double lambda : {0.5, 1.0}) {
        SquareMatrix s(6);
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) s(i, j) = s(j, i) = sd(rng);
        auto f = ObjectiveOracle::make_cut_diversity(SimilarityMatrix(s), lambda);
        const auto rep = check_submodularity(f, 0, 1);
        checked += rep.instances_checked;
        violations += static_cast<long long>(rep.violations.size());
    }
    {
        SquareMatrix d(6);
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) d(i, j) = d(j, i) = sd(rng);
        auto f = ObjectiveOracle::make_summarization(SimilarityMatrix(d));
        const auto rep = check_submodularity(f, 0, 1);
        checked += rep.instances_checked;
        violations += static_cast<long long>(rep.violations.size());
    }
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_real_distribution<double> gd(-1.0, 1.0);
        SquareMatrix a(6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) a(i, j) = gd(rng);
        SquareMatrix b(6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                double acc = i == j ? 0.5 : 0.0;
                for (int k = 0; k < 6; ++k) acc += a(i, k) * a(j, k);
                b(i, j) = acc;
            }
        auto f = ObjectiveOracle::make_mutual_information(CovarianceMatrix(b));
        const auto rep = check_submodularity(f, 0, 1);
        checked += rep.instances_checked;
        violations += static_cast<long long>(rep.violations.size());
    }
    report(5, violations == 0, "exhaustive submodularity (n=6) for all shipped objectives",
           std::to_string(checked) + " pairs, " + std::to_string(violations) + " violations, " +
               std::to_string(t.seconds()) + " s");
}

// 6. Complexity counters: f-calls <= 3kn^2 and rho-calls <= 3kn per solve,
//    at n in {20, 45, 100}.
void criterion6() {
    Timer t;
    bool pass = true;
    std::string detail;
    const auto check_one = [&](const char* tag, const Instance& inst) {
        const Solution sol = solve(inst);
        const long long n = inst.n, k = inst.k;
        const bool ok = sol.f_calls <= 3 * k * n * n && sol.rho_calls <= 3 * k * n;
        pass = pass && ok;
        detail += std::string(tag) + " f=" + std::to_string(sol.f_calls) + "/" +
                  std::to_string(3 * k * n * n) + " rho=" + std::to_string(sol.rho_calls) + "/" +
                  std::to_string(3 * k * n) + "; ";
    };
    check_one("n=20", gen_multicast_instance(20, 1, 400.0));
    check_one("n=45", gen_poi_instance(1, 120.0));
    check_one("n=100", gen_multicast_instance(100, 1, 400.0));
    report(6, pass, "oracle-call counters within 3kn^2 / 3kn",
           detail + std::to_string(t.seconds()) + " s");
}

// 7. Scenario constants: poi = 45 PoIs in [0,35]x[0,40], rate 0.6, collection
//    costs in (0,2); multicast delays in [1,200]; default budget 120 solves.
void criterion7() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = gen_poi_instance(seed);
        const PointSet& pts = *inst.cost.points();
        if (inst.n != 45 || pts.travel_rate != 0.6 || inst.budget != 120.0) pass = false;
        for (const auto& p : pts.coords)
            if (p.x < 0 || p.x > 35 || p.y < 0 || p.y > 40) pass = false;
        for (double c : inst.cost.visiting_costs())
            if (!(c > 0.0 && c < 2.0)) pass = false;
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = gen_multicast_instance(20, seed, 400.0);
        const WeightedGraph& g = *inst.cost.graph();
        for (int u = 0; u < g.vertices(); ++u)
            for (int v = u + 1; v < g.vertices(); ++v)
                if (g.edge(u, v) < 1.0 || g.edge(u, v) > 200.0) pass = false;
        if (inst.objective.lambda() != 1.0) pass = false;
    }
    // Default budget 120 runs end-to-end.
    const Solution sol = solve(gen_poi_instance(1));
    if (!(sol.value > 0.0) || sol.selected.empty()) {
        pass = false;
        detail = "default-budget solve degenerate";
    }
    report(7, pass, "published scenario constants and default-budget end-to-end run", detail);
}

// 8. Qualitative nonmonotonicity: some Rand seed's mutual information
//    strictly decreases between consecutive budgets in {240, 320, 400}.
void criterion8() {
    Timer t;
    const std::vector<double> budgets{240.0, 320.0, 400.0};
    bool found = false;
    int saturated_runs = 0, total_runs = 0;
    for (std::uint64_t seed = 1; seed <= 20 && !found; ++seed) {
        double prev = -1.0;
        bool first = true;
        for (const double b : budgets) {
            const Instance inst = gen_poi_instance(seed, b);
            const Solution sol = rand_baseline(inst, seed);
            ++total_runs;
            if (static_cast<int>(sol.selected.size()) == inst.n) ++saturated_runs;
            if (!first && sol.value < prev - kTol) found = true;
            prev = sol.value;
            first = false;
        }
    }
    report(8, found,
           "Rand mutual information decreases with budget on some seed (240/320/400)",
           std::to_string(saturated_runs) + "/" + std::to_string(total_runs) +
               " runs selected the full PoI set (no decrease is possible once Rand "
               "saturates; the published collection-cost range makes every budget here "
               "cover all 45 PoIs), " +
               std::to_string(t.seconds()) + " s");
}

// 9. Budget safety asserted mechanically on every benchmark RunRecord.
void criterion9() {
    Timer t;
    ScenarioConfig poi;
    poi.scenario = ScenarioConfig::Scenario::Poi;
    poi.budgets = {80.0, 120.0, 160.0};
    poi.seeds = {1, 2, 3};
    poi.jobs = 8;
    ScenarioConfig mc;
    mc.scenario = ScenarioConfig::Scenario::Multicast;
    mc.n = 20;
    mc.budgets = {150.0, 300.0};
    mc.seeds = {1, 2, 3};
    mc.jobs = 8;

    long long checked = 0, bad = 0;
    for (const auto& cfg : {poi, mc}) {
        for (const auto& r : run_experiment(cfg)) {
            ++checked;
            if (!r.error.empty()) {
                ++bad;
                continue;
            }
            const bool ok = r.algo == "ours" ? r.over_budget <= cfg.theta + kTol
                                             : r.over_budget == 0.0;
            if (!ok) ++bad;
        }
    }
    report(9, bad == 0, "budget-safety invariant on every benchmark record",
           std::to_string(checked) + " records, " + std::to_string(bad) + " bad, " +
               std::to_string(t.seconds()) + " s");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : std::to_string(g_failures) +
                                                              " CRITERIA FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
