#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rsmax/baselines.hpp"
#include "rsmax/optimizer.hpp"
#include "rsmax/report.hpp"

namespace rsmax {

// Exhaustive optimum of max{f(S) | rho(S) <= budget} over all 2^n subsets.
// Requires an exact cost oracle and n <= 20 (callers should stay at
// desk scale: ~12 for TSP, ~10 for Steiner). Ties go to the
// lexicographically smallest set.
std::pair<ItemSet, double> brute_force_opt(const Instance& instance);

// True k-system parameter of {S : rho(S) <= budget}: enumerate the bases of
// Omega (maximal feasible sets) and return ceil(max base size / min base
// size). Degenerate family {empty} yields 1.
int compute_k_parameter(const Instance& instance);

using InstanceGenerator = std::function<Instance(std::uint64_t seed)>;

// Bicriterion-guarantee sweep: per seed, computes the brute-forced OPT and
// true k, runs the solver with loop count >= k_true, and asserts
// f(T*) >= k/(4(k+1)^2) * f(OPT) - 1e-9 and rho~(T*) <= (1+theta) * budget.
VerificationReport check_bicriterion(const InstanceGenerator& gen, int runs, int jobs = 1);

// Prefix containment and gap bounds: runs the rho-whileloop (budget c) and the
// rho~-whileloop (budget (1+theta)c) side by side over the same S_i for
// theta in {c_min/2c, r*c_min/c : r in 1..3}, asserting ordered-prefix
// containment always and |X^rho~ \ X^rho| <= r in the small-theta regimes.
// Requires exact cost oracles with positive visiting costs.
VerificationReport check_prefix_theorems(const InstanceGenerator& gen, int runs, int jobs = 1);

// Prefix containment with a genuine heuristic: KMB as rho~ against exact
// Steiner as rho at theta = 1. Seeds where KMB misses its pointwise
// 2-approximation promise on an evaluated set are skipped with a notice.
VerificationReport check_prefix_containment_kmb(const InstanceGenerator& exact_gen, int runs,
                                                int jobs = 1);

// USM 1/3 guarantee over random nonnegative submodular tabulated functions:
// f(USM output) >= (1/3) * max_{T subset of Omega} f(T) - 1e-9.
VerificationReport check_usm_guarantee(int max_n, int runs, std::uint64_t seed0 = 1);

// Heuristic-vs-exact envelopes: KMB <= 2x exact Steiner, MST-double <= 2x
// Held-Karp, two-opt never increases a tour's cost.
VerificationReport check_routing_envelopes(int runs, std::uint64_t seed0 = 1);

// Exhaustive small-n properties of exact oracles: monotone costs, gradient
// >= c_min, and subset-closure (heredity) of {S : rho(S) <= budget}.
VerificationReport check_cost_monotonicity(const InstanceGenerator& gen, int runs);

// --- seeded generators for the checks above (pure functions of the seed) ---

// Random nonnegative submodular table: weighted directed cut function plus a
// concave-of-cardinality term.
std::vector<double> random_submodular_table(int n, std::uint64_t seed);

// Euclidean instance with an exact TSP oracle (theta declared 0), positive
// visiting costs, and a cut-diversity objective; the budget is drawn between
// the cheapest singleton and the full tour.
Instance random_tsp_instance(int n, std::uint64_t seed);

// Random connected graph instance with an exact Steiner oracle and a
// cut-diversity objective; unit-free delays in [1, 10].
Instance random_steiner_instance(int n_items, std::uint64_t seed);

}  // namespace rsmax
