#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rsmax/core.hpp"

namespace rsmax {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double euclid(const Point& a, const Point& b);

// Euclidean TSP instance: item coordinates plus a depot every tour is
// anchored at, and an energy-per-distance rate.
struct PointSet {
    std::vector<Point> coords;
    Point depot;
    double travel_rate = 1.0;

    int n() const { return static_cast<int>(coords.size()); }
    void validate() const;
};

// Undirected weighted graph over one root (vertex 0) plus `items()` item
// vertices; item i maps to vertex i + 1. Edge weights are delays.
class WeightedGraph {
public:
    explicit WeightedGraph(int item_count);

    int items() const { return items_; }
    int vertices() const { return items_ + 1; }
    void add_edge(int u, int v, double w);  // vertex ids
    double edge(int u, int v) const { return w_[idx(u, v)]; }
    bool connected() const;

    // All-pairs shortest-path distance / path (computed on first use).
    double dist(int u, int v) const;
    std::vector<int> path(int u, int v) const;

private:
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * vertices() + v; }
    void ensure_apsp() const;

    int items_;
    std::vector<double> w_;
    mutable bool apsp_done_ = false;
    mutable std::vector<double> d_;
    mutable std::vector<int> next_;
};

// Route witness: either a depot-anchored closed tour (TSP kinds; `tour`
// lists item ids in visit order, depot implicit at both ends) or a tree
// (Steiner kinds; `tree_edges` in graph vertex ids, 0 = root).
struct RouteWitness {
    ItemSet covered;                            // items the route serves
    std::vector<Item> tour;                     // TSP order
    std::vector<std::pair<int, int>> tree_edges;  // Steiner edges
    double route_cost = 0.0;                    // edge/travel part only
    double total_cost = 0.0;                    // route_cost + visiting costs
};

struct RouteResult {
    double cost = 0.0;  // == witness.total_cost
    RouteWitness witness;
};

double tour_length(const PointSet& points, const std::vector<Item>& tour);

// Optimal closed tour over depot + S by Held-Karp over subsets; |S| <= 15.
// Returned cost is travel energy only (travel_rate * length).
RouteResult exact_tsp(const PointSet& points, const ItemSet& s);

// MST preorder shortcut tour; at most twice the optimal tour on Euclidean
// instances.
RouteResult mst_double_tsp(const PointSet& points, const ItemSet& s);

// First-improvement 2-opt passes until no improving swap. Never increases
// the tour cost and preserves the visited vertex multiset.
RouteWitness two_opt_improve(const RouteWitness& witness, const PointSet& points);

// KMB 2-approximation: metric-closure MST over root + S, expanded to
// shortest paths, re-MST'd, then pruned of non-terminal leaves.
RouteResult kmb_steiner(const WeightedGraph& graph, const ItemSet& s);

// Optimal Steiner tree by minimization of MST(G[terminals u X]) over all
// Steiner-vertex subsets X; requires vertices() <= 14.
RouteResult exact_steiner(const WeightedGraph& graph, const ItemSet& s);

// Set-to-cost oracle rho~(S) = sum_{s in S} c_s + route(S), with a declared
// guarantee factor (1 + theta), set-keyed memoization, and call counters.
// Copies share backing data but carry independent counters and caches.
class CostOracle {
public:
    enum class Kind { TspExact, TspMstDouble, TspTwoOpt, SteinerExact, SteinerKmb, Tabulated };

    // exact_fallback_limit > 0 routes sets of at most that size through the
    // exact solver even for heuristic kinds.
    static CostOracle make_tsp(Kind kind, PointSet points, std::vector<double> visiting_costs,
                               int exact_fallback_limit = 0);
    static CostOracle make_steiner(Kind kind, WeightedGraph graph,
                                   std::vector<double> visiting_costs = {});
    // Total cost per subset mask (n <= 20); `exact` declares factor 1.
    static CostOracle make_tabulated(int n, std::vector<double> costs,
                                     std::vector<double> visiting_costs, bool exact);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    bool is_exact() const { return guarantee_factor_ == 1.0; }
    double guarantee_factor() const { return guarantee_factor_; }
    double theta() const { return guarantee_factor_ - 1.0; }
    double visiting_cost(Item x) const { return visiting_costs_[x]; }
    const std::vector<double>& visiting_costs() const { return visiting_costs_; }
    double visiting_sum(const ItemSet& s) const;
    double c_min() const { return c_min_; }

    // Backing data (null when the oracle is of another family).
    const PointSet* points() const { return points_.get(); }
    const WeightedGraph* graph() const { return graph_.get(); }

    // rho~(S), memoized by canonical set key. Every request increments the
    // logical call counter; requests served from the cache also increment
    // cache_hits so memoization never distorts the complexity accounting.
    RouteResult route_cost(const ItemSet& s) const;

    // route_cost(S + x) - route_cost(S), clamped below at c_min.
    double marginal_cost(const ItemSet& s, Item x) const;

    std::int64_t calls() const { return calls_; }
    std::int64_t cache_hits() const { return cache_hits_; }
    void reset_counters() const { calls_ = 0; cache_hits_ = 0; }

private:
    CostOracle(Kind kind, int n) : kind_(kind), n_(n) {}
    RouteResult compute(const ItemSet& s) const;

    Kind kind_;
    int n_;
    double guarantee_factor_ = 1.0;
    std::vector<double> visiting_costs_;
    double c_min_ = 0.0;
    int exact_fallback_limit_ = 0;
    std::shared_ptr<const PointSet> points_;
    std::shared_ptr<const WeightedGraph> graph_;
    std::shared_ptr<const std::vector<double>> table_;
    mutable std::map<ItemSet, RouteResult> cache_;
    mutable std::int64_t calls_ = 0;
    mutable std::int64_t cache_hits_ = 0;
};

// Running-max monotonization along one greedy run's nested evaluation chain:
// a heuristic rho~ is not guaranteed nondecreasing, so the chain reports
// cost >= previous accepted cost (+ c_min when visiting costs are positive).
// Raw oracle values stay available through `raw` for diagnostics.
class CostChain {
public:
    explicit CostChain(const CostOracle& oracle) : oracle_(&oracle) {}

    // Clamped cost of extending the chain's accepted set to `s`.
    double extension_cost(const ItemSet& s) const;
    // Commit `s` (with its clamped cost) as the chain's accepted set.
    void accept(const ItemSet& s, double clamped_cost);

    double accepted_cost() const { return accepted_cost_; }
    const CostOracle& oracle() const { return *oracle_; }

private:
    const CostOracle* oracle_;
    double accepted_cost_ = 0.0;
};

// Points file: line `n`, line `depot_x depot_y rate`, then n lines `x y c_s`.
struct PointsFile {
    PointSet points;
    std::vector<double> visiting_costs;
};
PointsFile read_points(std::istream& in);
PointsFile read_points_file(const std::string& path);
void write_points(std::ostream& out, const PointSet& points,
                  const std::vector<double>& visiting_costs);

// Graph file: line `n m` (n = vertex count including the root, which is
// vertex 1), then m lines `u v w` with 1-based vertex ids.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& graph);

}  // namespace rsmax
