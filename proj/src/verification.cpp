#include "rsmax/verification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rsmax/parallel.hpp"

namespace rsmax {

namespace {

constexpr double kTol = 1e-9;

void require_exact(const Instance& instance, const char* who) {
    if (!instance.cost.is_exact())
        throw std::invalid_argument(std::string(who) + ": needs an exact cost oracle");
}

// Feasibility table over all subsets (exact oracle), indexed by mask.
std::vector<double> all_subset_costs(const Instance& instance) {
    if (instance.n > 20) throw std::invalid_argument("subset enumeration: n > 20");
    const std::uint32_t total = 1u << instance.n;
    std::vector<double> cost(total);
    for (std::uint32_t m = 0; m < total; ++m)
        cost[m] = instance.cost.route_cost(set_from_mask(m)).cost;
    return cost;
}

// Merge per-seed sub-reports deterministically.
VerificationReport merge(const char* property, std::vector<VerificationReport> parts) {
    VerificationReport out;
    out.property = property;
    for (auto& p : parts) {
        out.instances_checked += p.instances_checked;
        out.skipped += p.skipped;
        for (auto& v : p.violations) out.violations.push_back(std::move(v));
        for (auto& n : p.notices) out.notices.push_back(std::move(n));
    }
    return out;
}

}  // namespace

std::pair<ItemSet, double> brute_force_opt(const Instance& instance) {
    require_exact(instance, "brute_force_opt");
    const std::vector<double> cost = all_subset_costs(instance);
    ItemSet best_set;
    double best_val = 0.0;
    bool have = false;
    for (std::uint32_t m = 0; m < cost.size(); ++m) {
        if (cost[m] > instance.budget + kTol) continue;
        const ItemSet s = set_from_mask(m);
        const double v = safe_value(instance.objective, s);
        if (!have || v > best_val || (v == best_val && s < best_set)) {
            have = true;
            best_val = v;
            best_set = s;
        }
    }
    return {best_set, have ? best_val : 0.0};
}

int compute_k_parameter(const Instance& instance) {
    require_exact(instance, "compute_k_parameter");
    const std::vector<double> cost = all_subset_costs(instance);
    const std::uint32_t total = static_cast<std::uint32_t>(cost.size());
    auto feasible = [&](std::uint32_t m) { return cost[m] <= instance.budget + kTol; };
    int min_base = instance.n + 1, max_base = -1;
    for (std::uint32_t m = 0; m < total; ++m) {
        if (!feasible(m)) continue;
        bool maximal = true;
        for (int x = 0; x < instance.n && maximal; ++x)
            if (!(m >> x & 1u) && feasible(m | (1u << x))) maximal = false;
        if (!maximal) continue;
        const int size = std::popcount(m);
        min_base = std::min(min_base, size);
        max_base = std::max(max_base, size);
    }
    if (max_base <= 0) return 1;  // bases degenerate to {empty}
    if (min_base == 0) return max_base;
    return (max_base + min_base - 1) / min_base;
}

VerificationReport check_bicriterion(const InstanceGenerator& gen, int runs, int jobs) {
    std::vector<VerificationReport> parts(static_cast<std::size_t>(runs));
    parallel_for(runs, jobs, [&](int t) {
        const std::uint64_t seed = static_cast<std::uint64_t>(t) + 1;
        VerificationReport& r = parts[static_cast<std::size_t>(t)];
        Instance inst = gen(seed);
        const int k_true = compute_k_parameter(inst);
        const auto [opt_set, opt_val] = brute_force_opt(inst);
        inst.k = std::max(inst.k, k_true);
        const Solution sol = solve(inst);
        const double bound =
            static_cast<double>(k_true) / (4.0 * (k_true + 1.0) * (k_true + 1.0)) * opt_val;
        ++r.instances_checked;
        if (sol.value < bound - kTol)
            r.add_violation({seed, sol.selected, opt_set, sol.value, bound, "value below bound"});
        const double relaxed = (1.0 + inst.theta) * inst.budget;
        if (sol.cost > relaxed + kTol)
            r.add_violation({seed, sol.selected, {}, sol.cost, relaxed, "cost above relaxed budget"});
    });
    return merge("bicriterion (value and budget bounds)", std::move(parts));
}

VerificationReport check_prefix_theorems(const InstanceGenerator& gen, int runs, int jobs) {
    std::vector<VerificationReport> parts(static_cast<std::size_t>(runs));
    parallel_for(runs, jobs, [&](int t) {
        const std::uint64_t seed = static_cast<std::uint64_t>(t) + 1;
        VerificationReport& r = parts[static_cast<std::size_t>(t)];
        const Instance inst = gen(seed);
        require_exact(inst, "check_prefix_theorems");
        const double c_min = inst.cost.c_min();
        if (!(c_min > 0.0)) {
            ++r.skipped;
            r.notices.push_back("seed " + std::to_string(seed) + ": c_min = 0, skipped");
            return;
        }
        const ItemSet all = full_set(inst.n);
        const StageOneState rho_loop =
            stage_one(all, inst.objective, inst.cost, inst.budget, 0.0);
        const ItemSet x_rho(rho_loop.x.begin(), rho_loop.x.end());
        struct Regime {
            double theta;
            int r;
        };
        const Regime regimes[] = {{c_min / (2.0 * inst.budget), 1},
                                  {c_min / inst.budget, 1},
                                  {2.0 * c_min / inst.budget, 2},
                                  {3.0 * c_min / inst.budget, 3}};
        for (const auto& reg : regimes) {
            const StageOneState tilde_loop =
                stage_one(all, inst.objective, inst.cost, inst.budget, reg.theta);
            ++r.instances_checked;
            const bool prefix =
                rho_loop.x.size() <= tilde_loop.x.size() &&
                std::equal(rho_loop.x.begin(), rho_loop.x.end(), tilde_loop.x.begin());
            if (!prefix) {
                r.add_violation({seed, x_rho, ItemSet(tilde_loop.x.begin(), tilde_loop.x.end()),
                                 static_cast<double>(rho_loop.x.size()),
                                 static_cast<double>(tilde_loop.x.size()),
                                 "X^rho not an ordered prefix of X^rho~"});
                continue;
            }
            const long long gap =
                static_cast<long long>(tilde_loop.x.size()) - static_cast<long long>(rho_loop.x.size());
            if (gap > reg.r)
                r.add_violation({seed, x_rho, ItemSet(tilde_loop.x.begin(), tilde_loop.x.end()),
                                 static_cast<double>(gap), static_cast<double>(reg.r),
                                 "|X^rho~ \\ X^rho| above r at theta = " + std::to_string(reg.theta)});
        }
    });
    return merge("prefix theorems (containment and gap bound)", std::move(parts));
}

VerificationReport check_prefix_containment_kmb(const InstanceGenerator& exact_gen, int runs,
                                                int jobs) {
    std::vector<VerificationReport> parts(static_cast<std::size_t>(runs));
    parallel_for(runs, jobs, [&](int t) {
        const std::uint64_t seed = static_cast<std::uint64_t>(t) + 1;
        VerificationReport& r = parts[static_cast<std::size_t>(t)];
        const Instance inst = exact_gen(seed);
        require_exact(inst, "check_prefix_containment_kmb");
        if (inst.cost.graph() == nullptr)
            throw std::invalid_argument("check_prefix_containment_kmb: needs a Steiner instance");
        const CostOracle kmb = CostOracle::make_steiner(CostOracle::Kind::SteinerKmb,
                                                        *inst.cost.graph(),
                                                        inst.cost.visiting_costs());
        const ItemSet all = full_set(inst.n);
        const StageOneState rho_loop =
            stage_one(all, inst.objective, inst.cost, inst.budget, 0.0);
        const StageOneState tilde_loop =
            stage_one(all, inst.objective, kmb, inst.budget, kmb.theta());
        // The theorems presuppose rho~ <= (1+theta) * rho pointwise; verify the
        // promise on every prefix the rho~-loop evaluated before asserting.
        ItemSet prefix_set;
        for (Item x : tilde_loop.x) {
            prefix_set = set_insert(prefix_set, x);
            const double tilde = kmb.route_cost(prefix_set).cost;
            const double exact = inst.cost.route_cost(prefix_set).cost;
            if (tilde > kmb.guarantee_factor() * exact + kTol) {
                ++r.skipped;
                r.notices.push_back("seed " + std::to_string(seed) +
                                    ": KMB factor promise violated pointwise, skipped");
                return;
            }
        }
        ++r.instances_checked;
        const bool prefix = rho_loop.x.size() <= tilde_loop.x.size() &&
                            std::equal(rho_loop.x.begin(), rho_loop.x.end(), tilde_loop.x.begin());
        if (!prefix)
            r.add_violation({seed, ItemSet(rho_loop.x.begin(), rho_loop.x.end()),
                             ItemSet(tilde_loop.x.begin(), tilde_loop.x.end()),
                             static_cast<double>(rho_loop.x.size()),
                             static_cast<double>(tilde_loop.x.size()),
                             "X^rho not an ordered prefix of X^kmb"});
    });
    return merge("prefix containment (KMB vs exact Steiner)", std::move(parts));
}

VerificationReport check_usm_guarantee(int max_n, int runs, std::uint64_t seed0) {
    VerificationReport r;
    r.property = "USM 1/3 guarantee";
    for (int t = 0; t < runs; ++t) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(t);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> nd(2, max_n);
        const int n = nd(rng);
        const auto table = random_submodular_table(n, seed * 7919 + 1);
        const ObjectiveOracle oracle = ObjectiveOracle::make_tabulated(n, table);
        std::vector<Item> order = full_set(n);
        std::shuffle(order.begin(), order.end(), rng);
        const ItemSet result = deterministic_usm(order, oracle);
        const double got = oracle.eval(result);
        double best = 0.0;
        for (std::uint32_t m = 0; m < (1u << n); ++m) best = std::max(best, table[m]);
        ++r.instances_checked;
        if (got < best / 3.0 - kTol)
            r.add_violation({seed, result, full_set(n), got, best / 3.0, "below 1/3 of optimum"});
    }
    return r;
}

VerificationReport check_routing_envelopes(int runs, std::uint64_t seed0) {
    VerificationReport r;
    r.property = "routing-oracle envelopes";
    for (int t = 0; t < runs; ++t) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(t);
        std::mt19937_64 rng(seed);

        // Steiner: KMB within 2x of exact on a random connected graph.
        {
            std::uniform_int_distribution<int> nd(2, 9);  // vertices = items + 1 <= 10
            const int items = nd(rng);
            const Instance inst = random_steiner_instance(items, seed * 31 + 7);
            const WeightedGraph& g = *inst.cost.graph();
            ItemSet s;
            std::bernoulli_distribution coin(0.5);
            for (int i = 0; i < items; ++i)
                if (coin(rng)) s.push_back(i);
            const double exact = exact_steiner(g, s).cost;
            const double kmb = kmb_steiner(g, s).cost;
            ++r.instances_checked;
            if (exact > kmb + kTol || kmb > 2.0 * exact + kTol)
                r.add_violation({seed, s, {}, kmb, 2.0 * exact, "KMB outside [exact, 2*exact]"});
        }

        // TSP: MST-double within 2x of Held-Karp; two-opt never worse.
        {
            std::uniform_int_distribution<int> md(1, 12);
            const int m = md(rng);
            PointSet pts;
            pts.depot = {0.0, 0.0};
            pts.travel_rate = 1.0;
            std::uniform_real_distribution<double> coord(0.0, 10.0);
            for (int i = 0; i < m; ++i) pts.coords.push_back({coord(rng), coord(rng)});
            const ItemSet s = full_set(m);
            const RouteResult exact = exact_tsp(pts, s);
            const RouteResult doubled = mst_double_tsp(pts, s);
            ++r.instances_checked;
            if (exact.cost > doubled.cost + kTol || doubled.cost > 2.0 * exact.cost + kTol)
                r.add_violation(
                    {seed, s, {}, doubled.cost, 2.0 * exact.cost, "MST-double outside [exact, 2*exact]"});
            const RouteWitness improved = two_opt_improve(doubled.witness, pts);
            ++r.instances_checked;
            if (improved.route_cost > doubled.witness.route_cost + kTol)
                r.add_violation({seed, s, {}, improved.route_cost, doubled.witness.route_cost,
                                 "two-opt increased the tour cost"});
            ItemSet visited = set_canonical(ItemSet(improved.tour.begin(), improved.tour.end()));
            if (visited != s)
                r.add_violation({seed, s, visited, 0.0, 0.0, "two-opt changed the visited set"});
        }
    }
    return r;
}

VerificationReport check_cost_monotonicity(const InstanceGenerator& gen, int runs) {
    VerificationReport r;
    r.property = "exact-oracle monotonicity, gradient, heredity";
    for (int t = 0; t < runs; ++t) {
        const std::uint64_t seed = static_cast<std::uint64_t>(t) + 1;
        const Instance inst = gen(seed);
        require_exact(inst, "check_cost_monotonicity");
        if (inst.n > 10) throw std::invalid_argument("check_cost_monotonicity: n too large");
        const std::vector<double> cost = all_subset_costs(inst);
        const double c_min = inst.cost.c_min();
        for (std::uint32_t m = 0; m < cost.size(); ++m) {
            for (int x = 0; x < inst.n; ++x) {
                if (m >> x & 1u) continue;
                const std::uint32_t mx = m | (1u << x);
                ++r.instances_checked;
                if (cost[mx] < cost[m] + c_min - kTol)
                    r.add_violation({seed, set_from_mask(m), set_from_mask(mx), cost[mx],
                                     cost[m] + c_min, "gradient below c_min"});
                // Heredity of {S : rho(S) <= budget} follows from monotonicity;
                // assert it directly as well.
                if (cost[mx] <= inst.budget + kTol && cost[m] > inst.budget + kTol)
                    r.add_violation({seed, set_from_mask(m), set_from_mask(mx), cost[m],
                                     inst.budget, "feasible set with infeasible subset"});
            }
        }
    }
    return r;
}

std::vector<double> random_submodular_table(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) w[static_cast<std::size_t>(i) * n + j] = weight(rng);
    const double beta = weight(rng);
    std::vector<double> table(std::size_t{1} << n, 0.0);
    for (std::uint32_t m = 0; m < table.size(); ++m) {
        double cut = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!(m >> i & 1u)) continue;
            for (int j = 0; j < n; ++j)
                if (!(m >> j & 1u)) cut += w[static_cast<std::size_t>(i) * n + j];
        }
        table[m] = cut + beta * std::sqrt(static_cast<double>(std::popcount(m)));
    }
    table[0] = 0.0;
    return table;
}

namespace {

ObjectiveOracle random_cut_objective(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> sd(0.0, 1.0);
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = sd(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    return ObjectiveOracle::make_cut_diversity(SimilarityMatrix(std::move(m)), 1.0);
}

double draw_budget(const CostOracle& oracle, int n, std::mt19937_64& rng) {
    double cheapest = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x)
        cheapest = std::min(cheapest, oracle.route_cost({x}).cost);
    const double full = oracle.route_cost(full_set(n)).cost;
    std::uniform_real_distribution<double> u(0.2, 0.9);
    return cheapest + u(rng) * std::max(full - cheapest, 0.0);
}

}  // namespace

Instance random_tsp_instance(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PointSet pts;
    pts.depot = {0.0, 0.0};
    pts.travel_rate = 1.0;
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    std::uniform_real_distribution<double> vc(0.5, 1.5);
    std::vector<double> costs;
    for (int i = 0; i < n; ++i) {
        pts.coords.push_back({coord(rng), coord(rng)});
        costs.push_back(vc(rng));
    }
    CostOracle oracle = CostOracle::make_tsp(CostOracle::Kind::TspExact, pts, costs);
    const double budget = draw_budget(oracle, n, rng);
    return Instance{n, random_cut_objective(n, rng), std::move(oracle), budget, 0.0, default_k(n)};
}

Instance random_steiner_instance(int n_items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    WeightedGraph g(n_items);
    std::uniform_real_distribution<double> wd(1.0, 10.0);
    std::bernoulli_distribution edge(0.5);
    // Random spanning tree first so the graph is always connected.
    for (int v = 1; v < g.vertices(); ++v) {
        std::uniform_int_distribution<int> pd(0, v - 1);
        g.add_edge(pd(rng), v, wd(rng));
    }
    for (int u = 0; u < g.vertices(); ++u)
        for (int v = u + 1; v < g.vertices(); ++v)
            if (edge(rng)) g.add_edge(u, v, wd(rng));
    std::uniform_real_distribution<double> vc(0.1, 0.5);
    std::vector<double> costs;
    for (int i = 0; i < n_items; ++i) costs.push_back(vc(rng));
    CostOracle oracle = CostOracle::make_steiner(CostOracle::Kind::SteinerExact, std::move(g), costs);
    const double budget = draw_budget(oracle, n_items, rng);
    return Instance{n_items, random_cut_objective(n_items, rng), std::move(oracle), budget, 0.0,
                    default_k(n_items)};
}

}  // namespace rsmax
