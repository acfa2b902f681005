#include "rsmax/routing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace rsmax {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double euclid(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void PointSet::validate() const {
    if (!(travel_rate > 0.0)) throw std::invalid_argument("PointSet: travel_rate must be > 0");
    auto finite = [](const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
    if (!finite(depot)) throw std::invalid_argument("PointSet: non-finite depot");
    for (const Point& p : coords)
        if (!finite(p)) throw std::invalid_argument("PointSet: non-finite coordinate");
}

WeightedGraph::WeightedGraph(int item_count) : items_(item_count) {
    if (item_count < 1) throw std::invalid_argument("WeightedGraph: need at least one item");
    w_.assign(static_cast<std::size_t>(vertices()) * vertices(), kInf);
    for (int v = 0; v < vertices(); ++v) w_[idx(v, v)] = 0.0;
}

void WeightedGraph::add_edge(int u, int v, double w) {
    if (u < 0 || v < 0 || u >= vertices() || v >= vertices() || u == v)
        throw std::invalid_argument("WeightedGraph: bad edge endpoints");
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("WeightedGraph: edge weight must be positive and finite");
    // Parallel edges keep the cheaper weight.
    if (w < w_[idx(u, v)]) {
        w_[idx(u, v)] = w;
        w_[idx(v, u)] = w;
        apsp_done_ = false;
    }
}

void WeightedGraph::ensure_apsp() const {
    if (apsp_done_) return;
    const int m = vertices();
    d_ = w_;
    next_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
            if (std::isfinite(w_[idx(u, v)])) next_[idx(u, v)] = v;
    for (int k = 0; k < m; ++k)
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                if (d_[idx(u, k)] + d_[idx(k, v)] < d_[idx(u, v)]) {
                    d_[idx(u, v)] = d_[idx(u, k)] + d_[idx(k, v)];
                    next_[idx(u, v)] = next_[idx(u, k)];
                }
    apsp_done_ = true;
}

bool WeightedGraph::connected() const {
    ensure_apsp();
    for (int v = 0; v < vertices(); ++v)
        if (!std::isfinite(d_[idx(0, v)])) return false;
    return true;
}

double WeightedGraph::dist(int u, int v) const {
    ensure_apsp();
    return d_[idx(u, v)];
}

std::vector<int> WeightedGraph::path(int u, int v) const {
    ensure_apsp();
    if (!std::isfinite(d_[idx(u, v)]))
        throw std::runtime_error("WeightedGraph: no path, graph disconnected");
    std::vector<int> p{u};
    while (u != v) {
        u = next_[idx(u, v)];
        p.push_back(u);
    }
    return p;
}

double tour_length(const PointSet& points, const std::vector<Item>& tour) {
    if (tour.empty()) return 0.0;
    double len = euclid(points.depot, points.coords[tour.front()]);
    for (std::size_t i = 0; i + 1 < tour.size(); ++i)
        len += euclid(points.coords[tour[i]], points.coords[tour[i + 1]]);
    len += euclid(points.coords[tour.back()], points.depot);
    return len;
}

namespace {

RouteResult make_tour_result(const PointSet& points, const ItemSet& s, std::vector<Item> tour) {
    RouteResult r;
    r.witness.covered = s;
    r.witness.tour = std::move(tour);
    r.witness.route_cost = points.travel_rate * tour_length(points, r.witness.tour);
    r.witness.total_cost = r.witness.route_cost;
    r.cost = r.witness.route_cost;
    return r;
}

}  // namespace

RouteResult exact_tsp(const PointSet& points, const ItemSet& s) {
    require_subset_of_ground(s, points.n(), "exact_tsp");
    const int m = static_cast<int>(s.size());
    if (m == 0) return make_tour_result(points, s, {});
    if (m > 15)
        throw std::invalid_argument(
            "exact_tsp: |S| > 15; use the mst-double or two-opt oracle kinds");
    // Local distance table: index 0 = depot, 1..m = items of S in order.
    std::vector<double> d(static_cast<std::size_t>(m + 1) * (m + 1));
    auto at = [&](int i) { return i == 0 ? points.depot : points.coords[s[i - 1]]; };
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) d[static_cast<std::size_t>(i) * (m + 1) + j] = euclid(at(i), at(j));
    auto dd = [&](int i, int j) { return d[static_cast<std::size_t>(i) * (m + 1) + j]; };

    const std::uint32_t full = (1u << m) - 1;
    std::vector<double> dp(static_cast<std::size_t>(full + 1) * m, kInf);
    std::vector<int> parent(static_cast<std::size_t>(full + 1) * m, -1);
    auto dpi = [&](std::uint32_t mask, int j) { return static_cast<std::size_t>(mask) * m + j; };
    for (int j = 0; j < m; ++j) dp[dpi(1u << j, j)] = dd(0, j + 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        for (int j = 0; j < m; ++j) {
            if (!(mask >> j & 1u)) continue;
            const double cur = dp[dpi(mask, j)];
            if (cur == kInf) continue;
            for (int t = 0; t < m; ++t) {
                if (mask >> t & 1u) continue;
                const std::uint32_t nm = mask | (1u << t);
                const double cand = cur + dd(j + 1, t + 1);
                if (cand < dp[dpi(nm, t)]) {
                    dp[dpi(nm, t)] = cand;
                    parent[dpi(nm, t)] = j;
                }
            }
        }
    }
    int best_end = 0;
    double best = kInf;
    for (int j = 0; j < m; ++j) {
        const double cand = dp[dpi(full, j)] + dd(j + 1, 0);
        if (cand < best) {
            best = cand;
            best_end = j;
        }
    }
    std::vector<Item> tour(static_cast<std::size_t>(m));
    std::uint32_t mask = full;
    int j = best_end;
    for (int pos = m - 1; pos >= 0; --pos) {
        tour[pos] = s[j];
        const int pj = parent[dpi(mask, j)];
        mask &= ~(1u << j);
        j = pj;
    }
    return make_tour_result(points, s, std::move(tour));
}

namespace {

// Prim MST over an explicit vertex list with a callable weight; lowest-index
// tie-break. Returns parent indices into `verts` (parent[0] == -1), or an
// empty vector when the restricted graph is disconnected.
template <typename WeightFn>
std::vector<int> prim_parents(int count, WeightFn w) {
    std::vector<int> parent(static_cast<std::size_t>(count), -1);
    std::vector<double> best(static_cast<std::size_t>(count), kInf);
    std::vector<int> from(static_cast<std::size_t>(count), -1);
    std::vector<char> used(static_cast<std::size_t>(count), 0);
    best[0] = 0.0;
    for (int step = 0; step < count; ++step) {
        int pick = -1;
        for (int v = 0; v < count; ++v)
            if (!used[v] && (pick == -1 || best[v] < best[pick])) pick = v;
        if (pick == -1 || best[pick] == kInf) return {};
        used[pick] = 1;
        parent[pick] = from[pick];
        for (int v = 0; v < count; ++v) {
            if (used[v]) continue;
            const double cand = w(pick, v);
            if (cand < best[v]) {
                best[v] = cand;
                from[v] = pick;
            }
        }
    }
    return parent;
}

}  // namespace

RouteResult mst_double_tsp(const PointSet& points, const ItemSet& s) {
    require_subset_of_ground(s, points.n(), "mst_double_tsp");
    const int m = static_cast<int>(s.size());
    if (m == 0) return make_tour_result(points, s, {});
    auto at = [&](int i) { return i == 0 ? points.depot : points.coords[s[i - 1]]; };
    auto parent = prim_parents(m + 1, [&](int a, int b) { return euclid(at(a), at(b)); });
    std::vector<std::vector<int>> children(static_cast<std::size_t>(m + 1));
    for (int v = 1; v <= m; ++v) children[parent[v]].push_back(v);
    std::vector<Item> tour;
    tour.reserve(static_cast<std::size_t>(m));
    // Preorder walk; children already in ascending index order by construction.
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (v != 0) tour.push_back(s[v - 1]);
        for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
    return make_tour_result(points, s, std::move(tour));
}

RouteWitness two_opt_improve(const RouteWitness& witness, const PointSet& points) {
    RouteWitness out = witness;
    auto& tour = out.tour;
    const int m = static_cast<int>(tour.size());
    if (m >= 2) {
        auto pt = [&](int pos) { return pos < 0 || pos >= m ? points.depot : points.coords[tour[pos]]; };
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < m - 1 && !improved; ++i) {
                for (int j = i + 1; j < m; ++j) {
                    // Reversing tour[i..j] replaces edges (i-1,i) and (j,j+1).
                    const double before = euclid(pt(i - 1), pt(i)) + euclid(pt(j), pt(j + 1));
                    const double after = euclid(pt(i - 1), pt(j)) + euclid(pt(i), pt(j + 1));
                    if (after < before - 1e-12) {
                        std::reverse(tour.begin() + i, tour.begin() + j + 1);
                        improved = true;
                        break;
                    }
                }
            }
        }
    }
    const double visiting = witness.total_cost - witness.route_cost;
    out.route_cost = points.travel_rate * tour_length(points, tour);
    if (out.route_cost > witness.route_cost) return witness;  // paranoia: never worse
    out.total_cost = out.route_cost + visiting;
    return out;
}

namespace {

std::vector<int> terminal_vertices(const ItemSet& s) {
    std::vector<int> t{0};
    for (Item x : s) t.push_back(x + 1);
    return t;
}

double tree_weight(const std::vector<std::pair<int, int>>& edges, const WeightedGraph& g) {
    double w = 0.0;
    for (auto [u, v] : edges) w += g.edge(u, v);
    return w;
}

// Drop non-terminal leaves until none remain.
void prune_leaves(std::vector<std::pair<int, int>>& edges, const std::vector<int>& terminals,
                  int vertex_count) {
    std::vector<char> is_term(static_cast<std::size_t>(vertex_count), 0);
    for (int t : terminals) is_term[t] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> degree(static_cast<std::size_t>(vertex_count), 0);
        for (auto [u, v] : edges) {
            ++degree[u];
            ++degree[v];
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if ((degree[u] == 1 && !is_term[u]) || (degree[v] == 1 && !is_term[v])) {
                edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
}

RouteResult make_tree_result(const WeightedGraph& g, const ItemSet& s,
                             std::vector<std::pair<int, int>> edges) {
    RouteResult r;
    r.witness.covered = s;
    r.witness.route_cost = tree_weight(edges, g);
    r.witness.total_cost = r.witness.route_cost;
    r.witness.tree_edges = std::move(edges);
    r.cost = r.witness.route_cost;
    return r;
}

}  // namespace

RouteResult kmb_steiner(const WeightedGraph& graph, const ItemSet& s) {
    require_subset_of_ground(s, graph.items(), "kmb_steiner");
    if (s.empty()) return make_tree_result(graph, s, {});
    if (!graph.connected()) throw std::runtime_error("kmb_steiner: graph disconnected");
    const std::vector<int> terms = terminal_vertices(s);
    const int t = static_cast<int>(terms.size());
    // MST of the metric closure over the terminals.
    auto closure_parent =
        prim_parents(t, [&](int a, int b) { return graph.dist(terms[a], terms[b]); });
    // Expand closure edges to shortest paths; collect the union of edges.
    std::vector<std::pair<int, int>> expanded;
    auto add_edge = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        for (auto [a, b] : expanded)
            if (a == u && b == v) return;
        expanded.emplace_back(u, v);
    };
    for (int v = 1; v < t; ++v) {
        const auto p = graph.path(terms[closure_parent[v]], terms[v]);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) add_edge(p[i], p[i + 1]);
    }
    // Re-MST the expanded subgraph (restricted to its vertices and edges).
    std::vector<int> verts;
    for (auto [u, v] : expanded) {
        verts.push_back(u);
        verts.push_back(v);
    }
    verts = set_canonical(std::move(verts));
    const int vc = static_cast<int>(verts.size());
    auto weight = [&](int a, int b) {
        const int u = verts[a], v = verts[b];
        for (auto [x, y] : expanded)
            if ((x == u && y == v) || (x == v && y == u)) return graph.edge(u, v);
        return kInf;
    };
    auto mst_parent = prim_parents(vc, weight);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < vc; ++v) edges.emplace_back(verts[mst_parent[v]], verts[v]);
    prune_leaves(edges, terms, graph.vertices());
    return make_tree_result(graph, s, std::move(edges));
}

RouteResult exact_steiner(const WeightedGraph& graph, const ItemSet& s) {
    require_subset_of_ground(s, graph.items(), "exact_steiner");
    if (graph.vertices() > 14)
        throw std::invalid_argument("exact_steiner: graph has more than 14 vertices");
    if (s.empty()) return make_tree_result(graph, s, {});
    if (!graph.connected()) throw std::runtime_error("exact_steiner: graph disconnected");
    const std::vector<int> terms = terminal_vertices(s);
    std::vector<char> is_term(static_cast<std::size_t>(graph.vertices()), 0);
    for (int t : terms) is_term[t] = 1;
    std::vector<int> steiner;
    for (int v = 0; v < graph.vertices(); ++v)
        if (!is_term[v]) steiner.push_back(v);
    const int sc = static_cast<int>(steiner.size());

    double best = kInf;
    std::vector<std::pair<int, int>> best_edges;
    // The optimum is the cheapest MST of G restricted to terminals plus some
    // subset of Steiner vertices.
    for (std::uint32_t mask = 0; mask < (1u << sc); ++mask) {
        std::vector<int> verts = terms;
        for (int i = 0; i < sc; ++i)
            if (mask >> i & 1u) verts.push_back(steiner[i]);
        std::sort(verts.begin(), verts.end());
        const int vc = static_cast<int>(verts.size());
        auto parent = prim_parents(vc, [&](int a, int b) { return graph.edge(verts[a], verts[b]); });
        if (parent.empty()) continue;  // restricted subgraph disconnected
        std::vector<std::pair<int, int>> edges;
        double w = 0.0;
        for (int v = 1; v < vc; ++v) {
            edges.emplace_back(verts[parent[v]], verts[v]);
            w += graph.edge(verts[parent[v]], verts[v]);
        }
        if (w < best - 1e-15) {
            best = w;
            best_edges = std::move(edges);
        }
    }
    prune_leaves(best_edges, terms, graph.vertices());
    return make_tree_result(graph, s, std::move(best_edges));
}

CostOracle CostOracle::make_tsp(Kind kind, PointSet points, std::vector<double> visiting_costs,
                                int exact_fallback_limit) {
    if (kind != Kind::TspExact && kind != Kind::TspMstDouble && kind != Kind::TspTwoOpt)
        throw std::invalid_argument("CostOracle::make_tsp: not a TSP kind");
    points.validate();
    if (static_cast<int>(visiting_costs.size()) != points.n())
        throw std::invalid_argument("CostOracle: visiting_costs size mismatch");
    CostOracle o(kind, points.n());
    o.points_ = std::make_shared<PointSet>(std::move(points));
    o.visiting_costs_ = std::move(visiting_costs);
    o.exact_fallback_limit_ = exact_fallback_limit;
    o.guarantee_factor_ = (kind == Kind::TspExact) ? 1.0 : 2.0;
    o.c_min_ = o.visiting_costs_.empty()
                   ? 0.0
                   : *std::min_element(o.visiting_costs_.begin(), o.visiting_costs_.end());
    for (double c : o.visiting_costs_)
        if (c < 0.0) throw std::invalid_argument("CostOracle: negative visiting cost");
    return o;
}

CostOracle CostOracle::make_steiner(Kind kind, WeightedGraph graph,
                                    std::vector<double> visiting_costs) {
    if (kind != Kind::SteinerExact && kind != Kind::SteinerKmb)
        throw std::invalid_argument("CostOracle::make_steiner: not a Steiner kind");
    if (visiting_costs.empty()) visiting_costs.assign(static_cast<std::size_t>(graph.items()), 0.0);
    if (static_cast<int>(visiting_costs.size()) != graph.items())
        throw std::invalid_argument("CostOracle: visiting_costs size mismatch");
    CostOracle o(kind, graph.items());
    o.graph_ = std::make_shared<WeightedGraph>(std::move(graph));
    o.visiting_costs_ = std::move(visiting_costs);
    o.guarantee_factor_ = (kind == Kind::SteinerExact) ? 1.0 : 2.0;
    o.c_min_ = *std::min_element(o.visiting_costs_.begin(), o.visiting_costs_.end());
    for (double c : o.visiting_costs_)
        if (c < 0.0) throw std::invalid_argument("CostOracle: negative visiting cost");
    return o;
}

CostOracle CostOracle::make_tabulated(int n, std::vector<double> costs,
                                      std::vector<double> visiting_costs, bool exact) {
    if (n < 1 || n > 20) throw std::invalid_argument("tabulated cost oracle: n must be in [1,20]");
    if (costs.size() != (std::size_t{1} << n))
        throw std::invalid_argument("tabulated cost oracle: costs.size() != 2^n");
    if (static_cast<int>(visiting_costs.size()) != n)
        throw std::invalid_argument("CostOracle: visiting_costs size mismatch");
    CostOracle o(Kind::Tabulated, n);
    o.table_ = std::make_shared<std::vector<double>>(std::move(costs));
    o.visiting_costs_ = std::move(visiting_costs);
    o.guarantee_factor_ = exact ? 1.0 : 2.0;
    o.c_min_ = *std::min_element(o.visiting_costs_.begin(), o.visiting_costs_.end());
    return o;
}

double CostOracle::visiting_sum(const ItemSet& s) const {
    double sum = 0.0;
    for (Item x : s) sum += visiting_costs_[x];
    return sum;
}

RouteResult CostOracle::compute(const ItemSet& s) const {
    RouteResult r;
    switch (kind_) {
        case Kind::Tabulated:
            require_subset_of_ground(s, n_, "tabulated cost oracle");
            r.cost = (*table_)[mask_from_set(s)];
            r.witness.covered = s;
            r.witness.route_cost = r.cost - visiting_sum(s);
            r.witness.total_cost = r.cost;
            return r;
        case Kind::TspExact:
            r = exact_tsp(*points_, s);
            break;
        case Kind::TspMstDouble:
        case Kind::TspTwoOpt:
            if (static_cast<int>(s.size()) <= exact_fallback_limit_ && s.size() <= 15) {
                r = exact_tsp(*points_, s);
            } else {
                r = mst_double_tsp(*points_, s);
                if (kind_ == Kind::TspTwoOpt) {
                    r.witness = two_opt_improve(r.witness, *points_);
                    r.cost = r.witness.route_cost;
                }
            }
            break;
        case Kind::SteinerExact:
            r = exact_steiner(*graph_, s);
            break;
        case Kind::SteinerKmb:
            r = kmb_steiner(*graph_, s);
            break;
    }
    const double visiting = visiting_sum(s);
    r.cost += visiting;
    r.witness.total_cost = r.witness.route_cost + visiting;
    return r;
}

RouteResult CostOracle::route_cost(const ItemSet& s) const {
    ++calls_;
    if (s.empty()) return {};
    auto it = cache_.find(s);
    if (it != cache_.end()) {
        ++cache_hits_;
        return it->second;
    }
    RouteResult r = compute(s);
    cache_.emplace(s, r);
    return r;
}

double CostOracle::marginal_cost(const ItemSet& s, Item x) const {
    if (set_contains(s, x)) throw std::invalid_argument("marginal_cost: x already in S");
    const double diff = route_cost(set_insert(s, x)).cost - route_cost(s).cost;
    return std::max(diff, c_min_);
}

double CostChain::extension_cost(const ItemSet& s) const {
    const double raw = oracle_->route_cost(s).cost;
    const double floor = accepted_cost_ + (oracle_->c_min() > 0.0 ? oracle_->c_min() : 0.0);
    return std::max(raw, floor);
}

void CostChain::accept(const ItemSet&, double clamped_cost) {
    accepted_cost_ = clamped_cost;
}

PointsFile read_points(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n <= 0) throw std::runtime_error("points file: bad size line");
    PointsFile pf;
    if (!(in >> pf.points.depot.x >> pf.points.depot.y >> pf.points.travel_rate))
        throw std::runtime_error("points file: bad depot line");
    pf.points.coords.resize(static_cast<std::size_t>(n));
    pf.visiting_costs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (!(in >> pf.points.coords[i].x >> pf.points.coords[i].y >> pf.visiting_costs[i]))
            throw std::runtime_error("points file: bad point line " + std::to_string(i + 1));
    pf.points.validate();
    return pf;
}

PointsFile read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path);
    return read_points(in);
}

void write_points(std::ostream& out, const PointSet& points,
                  const std::vector<double>& visiting_costs) {
    out.precision(17);
    out << points.n() << "\n"
        << points.depot.x << " " << points.depot.y << " " << points.travel_rate << "\n";
    for (int i = 0; i < points.n(); ++i)
        out << points.coords[i].x << " " << points.coords[i].y << " " << visiting_costs[i] << "\n";
}

WeightedGraph read_graph(std::istream& in) {
    int n = 0;
    long long m = 0;
    if (!(in >> n >> m) || n < 2 || m < 0) throw std::runtime_error("graph file: bad header line");
    WeightedGraph g(n - 1);
    for (long long e = 0; e < m; ++e) {
        int u, v;
        double w;
        if (!(in >> u >> v >> w)) throw std::runtime_error("graph file: bad edge line");
        if (u < 1 || v < 1 || u > n || v > n) throw std::runtime_error("graph file: vertex out of range");
        g.add_edge(u - 1, v - 1, w);
    }
    return g;
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& graph) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int u = 0; u < graph.vertices(); ++u)
        for (int v = u + 1; v < graph.vertices(); ++v)
            if (std::isfinite(graph.edge(u, v))) edges.emplace_back(u, v, graph.edge(u, v));
    out.precision(17);
    out << graph.vertices() << " " << edges.size() << "\n";
    for (auto [u, v, w] : edges) out << u + 1 << " " << v + 1 << " " << w << "\n";
}

}  // namespace rsmax
