#include "rsmax/baselines.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace rsmax {

namespace {

constexpr double kBudgetTol = 1e-9;

Solution finish(const Instance& instance, const ItemSet& selected, double cost,
                std::int64_t f0, std::int64_t rho0) {
    Solution sol;
    sol.selected = selected;
    sol.cost = cost;
    sol.over_budget_ratio = 0.0;  // admission is against the original budget
    if (!selected.empty()) {
        sol.value = safe_value(instance.objective, selected);
        sol.witness = instance.cost.route_cost(selected).witness;
    }
    sol.f_calls = instance.objective.calls() - f0;
    sol.rho_calls = instance.cost.calls() - rho0;
    return sol;
}

}  // namespace

Solution rand_baseline(const Instance& instance, std::uint64_t seed, std::ostream* trace) {
    instance.validate();
    const std::int64_t f0 = instance.objective.calls();
    const std::int64_t rho0 = instance.cost.calls();
    std::mt19937_64 rng(seed);
    ItemSet selected;
    ItemSet rest = full_set(instance.n);
    double cost = 0.0;
    while (!rest.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, rest.size() - 1);
        const Item x = rest[pick(rng)];
        const ItemSet next = set_insert(selected, x);
        const double c = instance.cost.route_cost(next).cost;
        if (c > instance.budget + kBudgetTol) break;  // first rejection ends the run
        selected = next;
        cost = c;
        rest = set_erase(rest, x);
        if (trace)
            *trace << "rand | item " << x << " | cost " << c << " | over_budget 0\n";
    }
    return finish(instance, selected, cost, f0, rho0);
}

Solution rmax_baseline(const Instance& instance, std::ostream* trace) {
    instance.validate();
    const std::int64_t f0 = instance.objective.calls();
    const std::int64_t rho0 = instance.cost.calls();
    ItemSet selected;
    ItemSet rest = full_set(instance.n);
    double cost = 0.0;
    int iter = 0;
    while (!rest.empty()) {
        Item best = -1;
        double best_ratio = 0.0;
        double best_gain = 0.0;
        double best_cost = 0.0;
        for (Item x : rest) {
            const ItemSet next = set_insert(selected, x);
            const double c = instance.cost.route_cost(next).cost;
            if (c > instance.budget + kBudgetTol) continue;
            const double gain = instance.objective.marginal_gain(selected, x);
            // c_min clamp keeps the denominator positive; a zero-visiting-cost
            // instance still needs a floor for the division.
            const double denom = std::max(instance.cost.marginal_cost(selected, x), 1e-12);
            const double ratio = gain / denom;
            if (best == -1 || ratio > best_ratio) {
                best = x;
                best_ratio = ratio;
                best_gain = gain;
                best_cost = c;
            }
        }
        if (best == -1 || best_gain <= 0.0) break;
        selected = set_insert(selected, best);
        cost = best_cost;
        rest = set_erase(rest, best);
        ++iter;
        if (trace)
            *trace << "rmax | iter " << iter << " | item " << best << " | gain " << best_gain
                   << " | cost " << best_cost << " | over_budget 0\n";
    }
    return finish(instance, selected, cost, f0, rho0);
}

}  // namespace rsmax
