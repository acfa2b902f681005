#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsmax/core.hpp"
#include "rsmax/objectives.hpp"
#include "rsmax/routing.hpp"

namespace rsmax {

// One problem instance. Owns its oracle copies, so each solve run has
// independent counters and caches. `theta` is the budget-relaxation error
// parameter; it must be at least the cost oracle's declared theta (an exact
// oracle trivially satisfies any (1+theta) guarantee, which is how the
// small-theta regime is exercised).
struct Instance {
    int n = 0;
    ObjectiveOracle objective;
    CostOracle cost;
    double budget = 0.0;
    double theta = 0.0;
    int k = 1;

    void validate() const;
};

struct Solution {
    ItemSet selected;
    double value = 0.0;
    double cost = 0.0;
    double over_budget_ratio = 0.0;
    RouteWitness witness;
    std::int64_t f_calls = 0;
    std::int64_t rho_calls = 0;
    long long candidate_pool = 0;
    std::string warning;
};

// Stage-1 output: the admitted sequence X, its over-original-budget suffix Y,
// the not-yet-examined items, and the (chain-clamped) cost after each
// admission.
struct StageOneState {
    std::vector<Item> x;
    std::vector<Item> y;
    ItemSet remaining;
    std::vector<double> prefix_costs;

    double final_cost() const { return prefix_costs.empty() ? 0.0 : prefix_costs.back(); }
};

// f(S), with a domain error (summarization at S = Omega) mapped to -infinity
// so such sets are never selected.
double safe_value(const ObjectiveOracle& objective, const ItemSet& s);

// Budget-relaxed greedy growth: repeatedly admit the highest-marginal-gain
// item (lowest index on ties, negative gains included) while the
// chain-clamped rho~(X + s*) stays within (1+theta)*budget; break at the
// first failed admission. Y collects items admitted after the unrelaxed
// budget was first exceeded.
StageOneState stage_one(const ItemSet& s_i, const ObjectiveOracle& objective,
                        const CostOracle& cost, double budget, double theta,
                        std::ostream* trace = nullptr, int iter = 1);

// Single-pass 1/3-approximation for unconstrained nonmonotone submodular
// maximization; items examined in the given order. Uses 2|X|+2 evaluations.
ItemSet deterministic_usm(const std::vector<Item>& x, const ObjectiveOracle& objective);

// k = ceil(sqrt(n)), the practical stand-in for the true system parameter.
int default_k(int n);

// The iterated two-stage greedy. Deterministic for a fixed instance.
Solution solve(const Instance& instance, std::ostream* trace = nullptr);

}  // namespace rsmax
