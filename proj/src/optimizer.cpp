#include "rsmax/optimizer.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace rsmax {

namespace {
constexpr double kBudgetTol = 1e-9;
}

void Instance::validate() const {
    if (n < 1) throw std::invalid_argument("Instance: empty ground set");
    if (objective.n() != n || cost.n() != n)
        throw std::invalid_argument("Instance: oracle ground-set size mismatch");
    if (!(budget > 0.0)) throw std::invalid_argument("Instance: budget must be positive");
    if (theta < 0.0) throw std::invalid_argument("Instance: theta must be nonnegative");
    if (theta + 1e-12 < cost.theta())
        throw std::invalid_argument(
            "Instance: theta below the cost oracle's declared guarantee factor - 1");
    if (k < 1) throw std::invalid_argument("Instance: k must be at least 1");
}

double safe_value(const ObjectiveOracle& objective, const ItemSet& s) {
    try {
        return objective.eval(s);
    } catch (const std::domain_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

StageOneState stage_one(const ItemSet& s_i, const ObjectiveOracle& objective,
                        const CostOracle& cost, double budget, double theta, std::ostream* trace,
                        int iter) {
    StageOneState state;
    state.remaining = s_i;
    const double relaxed = (1.0 + theta) * budget;
    ItemSet x_set;
    CostChain chain(cost);
    bool over_budget = false;
    while (!state.remaining.empty()) {
        // argmax marginal gain, lowest index wins ties; negative gains are
        // admitted too (the admission check is budget-only).
        Item best = -1;
        double best_gain = 0.0;
        for (Item s : state.remaining) {
            const double g = objective.eval(set_insert(x_set, s)) - objective.eval(x_set);
            if (best == -1 || g > best_gain) {
                best = s;
                best_gain = g;
            }
        }
        const ItemSet extended = set_insert(x_set, best);
        const double c = chain.extension_cost(extended);
        if (c > relaxed + kBudgetTol) break;
        chain.accept(extended, c);
        x_set = extended;
        state.x.push_back(best);
        state.prefix_costs.push_back(c);
        state.remaining = set_erase(state.remaining, best);
        if (!over_budget && c > budget + kBudgetTol) over_budget = true;
        if (over_budget) state.y.push_back(best);
        if (trace)
            *trace << "iter " << iter << " | item " << best << " | gain " << best_gain
                   << " | cost " << c << " | over_budget " << (over_budget ? 1 : 0) << "\n";
    }
    return state;
}

ItemSet deterministic_usm(const std::vector<Item>& x, const ObjectiveOracle& objective) {
    if (x.empty()) throw std::invalid_argument("deterministic_usm: empty input");
    ItemSet keep;                       // grows left to right
    ItemSet rest = set_canonical(ItemSet(x.begin(), x.end()));  // Y_i, shrinks
    double f_keep = safe_value(objective, keep);
    double f_rest = safe_value(objective, rest);
    for (Item u : x) {
        const double fx = safe_value(objective, set_insert(keep, u));
        const double fy = safe_value(objective, set_erase(rest, u));
        const double a = fx - f_keep;
        const double b = fy - f_rest;
        if (a >= b) {
            keep = set_insert(keep, u);
            f_keep = fx;
        } else {
            rest = set_erase(rest, u);
            f_rest = fy;
        }
    }
    return keep;
}

int default_k(int n) {
    if (n < 1) throw std::invalid_argument("default_k: n must be positive");
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
}

Solution solve(const Instance& instance, std::ostream* trace) {
    instance.validate();
    const ObjectiveOracle& f = instance.objective;
    const CostOracle& rho = instance.cost;
    const double budget = instance.budget;
    const double relaxed = (1.0 + instance.theta) * budget;
    const std::int64_t f0 = f.calls();
    const std::int64_t rho0 = rho.calls();

    Solution sol;
    // Screen out singletons that cannot fit even the relaxed budget.
    ItemSet s_i;
    int dropped = 0;
    for (Item x : full_set(instance.n)) {
        if (rho.route_cost({x}).cost <= relaxed + kBudgetTol) {
            s_i.push_back(x);
        } else {
            ++dropped;
        }
    }
    if (dropped > 0)
        sol.warning = std::to_string(dropped) + " singleton(s) above the relaxed budget, excluded";
    if (s_i.empty()) {
        if (sol.warning.empty()) sol.warning = "no feasible singleton";
        sol.f_calls = f.calls() - f0;
        sol.rho_calls = rho.calls() - rho0;
        return sol;
    }

    // Candidate pool T: set -> (value, cost), deduplicated.
    std::map<ItemSet, std::pair<double, double>> pool;
    auto store = [&](const ItemSet& t) {
        if (pool.count(t)) return;
        if (t.empty()) {
            pool.emplace(t, std::make_pair(0.0, 0.0));
            return;
        }
        const double cost = rho.route_cost(t).cost;
        if (cost > relaxed + kBudgetTol) return;  // heuristic rho~ on a subset came out worse
        pool.emplace(t, std::make_pair(safe_value(f, t), cost));
    };

    for (int i = 1; i <= instance.k; ++i) {
        StageOneState st = stage_one(s_i, f, rho, budget, instance.theta, trace, i);
        if (st.x.empty()) break;
        s_i = st.remaining;  // items admitted to X_i are consumed for later iterations

        const ItemSet t_star = deterministic_usm(st.x, f);
        std::vector<Item> x = st.x;
        std::vector<Item> y = st.y;
        while (!y.empty()) {
            x.pop_back();
            y.pop_back();
            const ItemSet t_y = x.empty() ? ItemSet{} : deterministic_usm(x, f);
            store(t_y.empty() ? ItemSet{} : t_y);
            if (trace)
                *trace << "iter " << i << " | prefix_len " << x.size() << " | value "
                       << (t_y.empty() ? 0.0 : safe_value(f, t_y)) << "\n";
        }
        store(t_star.empty() ? ItemSet{} : t_star);
        if (trace)
            *trace << "iter " << i << " | prefix_len " << st.x.size() << " | value "
                   << (t_star.empty() ? 0.0 : safe_value(f, t_star)) << "\n";
    }

    // Final scan of the pool; ties go to the lexicographically smallest set,
    // which std::map ordering provides.
    bool have = false;
    for (const auto& [set, vc] : pool) {
        if (!have || vc.first > sol.value) {
            have = true;
            sol.selected = set;
            sol.value = vc.first;
            sol.cost = vc.second;
        }
    }
    if (!sol.selected.empty()) sol.witness = rho.route_cost(sol.selected).witness;
    sol.over_budget_ratio = std::max(sol.cost / budget - 1.0, 0.0);
    sol.candidate_pool = static_cast<long long>(pool.size());
    sol.f_calls = f.calls() - f0;
    sol.rho_calls = rho.calls() - rho0;
    return sol;
}

}  // namespace rsmax
