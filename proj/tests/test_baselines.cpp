#include <doctest.h>

#include <bit>
#include <sstream>
#include <vector>

#include "rsmax/baselines.hpp"
#include "rsmax/verification.hpp"

using namespace rsmax;

namespace {

ObjectiveOracle modular_objective(const std::vector<double>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<double> table(std::size_t{1} << n, 0.0);
    for (std::size_t mask = 0; mask < table.size(); ++mask)
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) table[mask] += w[i];
    return ObjectiveOracle::make_tabulated(n, std::move(table));
}

CostOracle uniform_cost(int n, double unit) {
    std::vector<double> table(std::size_t{1} << n, 0.0);
    for (std::size_t mask = 0; mask < table.size(); ++mask)
        table[mask] = unit * std::popcount(mask);
    return CostOracle::make_tabulated(n, std::move(table), std::vector<double>(n, unit), true);
}

}  // namespace

TEST_CASE("rand baseline") {
    SUBCASE("budget below every singleton") {
        const Instance inst{3, modular_objective({1, 1, 1}), uniform_cost(3, 5.0), 1.0, 0.0, 1};
        const Solution sol = rand_baseline(inst, 1);
        CHECK(sol.selected.empty());
        CHECK(sol.value == doctest::Approx(0.0));
    }

    SUBCASE("budget admitting everything") {
        const Instance inst{4, modular_objective({1, 2, 3, 4}), uniform_cost(4, 1.0), 100.0, 0.0, 1};
        const Solution sol = rand_baseline(inst, 7);
        CHECK(sol.selected == ItemSet{0, 1, 2, 3});
        CHECK(sol.over_budget_ratio == doctest::Approx(0.0));
    }

    SUBCASE("fixed seed is deterministic") {
        const Instance inst = random_tsp_instance(9, 4);
        const Solution a = rand_baseline(inst, 99);
        const Solution b = rand_baseline(inst, 99);
        CHECK(a.selected == b.selected);
        CHECK(a.value == b.value);
    }

    SUBCASE("never exceeds the original budget") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Instance inst = random_tsp_instance(8, seed);
            const Solution sol = rand_baseline(inst, seed * 31);
            CHECK(sol.cost <= inst.budget + 1e-9);
            CHECK(sol.over_budget_ratio == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("rmax baseline") {
    SUBCASE("all gains negative at the start") {
        const Instance inst{3, modular_objective({-1, -2, -3}), uniform_cost(3, 1.0), 100.0, 0.0, 1};
        const Solution sol = rmax_baseline(inst);
        CHECK(sol.selected.empty());
        CHECK(sol.value == doctest::Approx(0.0));
    }

    SUBCASE("modular f with uniform costs selects in descending order") {
        const Instance inst{5, modular_objective({2, 5, 1, 4, 3}), uniform_cost(5, 1.0), 3.0, 0.0, 1};
        std::ostringstream tr;
        const Solution sol = rmax_baseline(inst, &tr);
        CHECK(sol.selected == ItemSet{1, 3, 4});  // three best items fit budget 3
        CHECK(sol.value == doctest::Approx(12.0));
        // Trace records insertion order: 1 (gain 5), then 3 (4), then 4 (3).
        const std::string t = tr.str();
        CHECK(t.find("item 1") < t.find("item 3"));
        CHECK(t.find("item 3") < t.find("item 4"));
    }

    SUBCASE("never exceeds the original budget") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Instance inst = random_tsp_instance(8, seed);
            const Solution sol = rmax_baseline(inst);
            CHECK(sol.cost <= inst.budget + 1e-9);
            CHECK(sol.over_budget_ratio == doctest::Approx(0.0));
        }
    }
}
