#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include "rsmax/routing.hpp"

using namespace rsmax;

namespace {

PointSet make_points(std::vector<Point> coords, Point depot = {0, 0}, double rate = 1.0) {
    PointSet p;
    p.coords = std::move(coords);
    p.depot = depot;
    p.travel_rate = rate;
    return p;
}

// Independent oracle: brute-force best tour over all permutations of S.
double brute_tour(const PointSet& pts, ItemSet s) {
    std::sort(s.begin(), s.end());
    double best = s.empty() ? 0.0 : 1e300;
    do {
        best = std::min(best, tour_length(pts, s));
    } while (std::next_permutation(s.begin(), s.end()));
    return best * pts.travel_rate;
}

PointSet random_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(0.0, 10.0);
    PointSet p;
    for (int i = 0; i < n; ++i) p.coords.push_back({d(rng), d(rng)});
    return p;
}

WeightedGraph random_connected_graph(int items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    WeightedGraph g(items);
    std::uniform_real_distribution<double> wd(1.0, 5.0);
    for (int v = 1; v < g.vertices(); ++v) {
        std::uniform_int_distribution<int> pd(0, v - 1);
        g.add_edge(pd(rng), v, wd(rng));
    }
    for (int u = 0; u < g.vertices(); ++u)
        for (int v = u + 1; v < g.vertices(); ++v)
            if (rng() % 2 == 0) g.add_edge(u, v, wd(rng));
    return g;
}

}  // namespace

TEST_CASE("exact tsp") {
    const PointSet single = make_points({{3, 4}});
    CHECK(exact_tsp(single, {}).cost == doctest::Approx(0.0));
    CHECK(exact_tsp(single, {0}).cost == doctest::Approx(10.0));  // out-and-back, distance 5

    const PointSet line = make_points({{1, 0}, {2, 0}});
    CHECK(exact_tsp(line, {0, 1}).cost == doctest::Approx(4.0));

    ItemSet too_big;
    for (int i = 0; i < 16; ++i) too_big.push_back(i);
    CHECK_THROWS_AS(exact_tsp(random_points(16, 1), too_big), std::invalid_argument);

    // Held-Karp vs permutation brute force on random 7-point instances.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PointSet pts = random_points(7, seed);
        const ItemSet all{0, 1, 2, 3, 4, 5, 6};
        CHECK(exact_tsp(pts, all).cost == doctest::Approx(brute_tour(pts, all)));
    }
}

TEST_CASE("mst double tsp envelope") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const PointSet pts = random_points(10, seed);
        ItemSet all;
        for (int i = 0; i < 10; ++i) all.push_back(i);
        const double exact = exact_tsp(pts, all).cost;
        const double heur = mst_double_tsp(pts, all).cost;
        CHECK(heur >= exact - 1e-9);
        CHECK(heur <= 2.0 * exact + 1e-9);
    }
    const PointSet single = make_points({{3, 4}});
    CHECK(mst_double_tsp(single, {0}).cost == doctest::Approx(10.0));
    CHECK(mst_double_tsp(single, {}).cost == doctest::Approx(0.0));
}

TEST_CASE("two opt") {
    // Crossing tour over a unit square: 0-2-1-3 crosses, 0-1-2-3 does not.
    const PointSet sq = make_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {0, 0});
    RouteWitness crossing;
    crossing.covered = {0, 1, 2, 3};
    crossing.tour = {0, 2, 1, 3};
    crossing.route_cost = tour_length(sq, crossing.tour);
    crossing.total_cost = crossing.route_cost;
    const RouteWitness improved = two_opt_improve(crossing, sq);
    CHECK(improved.route_cost < crossing.route_cost - 1e-9);
    ItemSet visited = improved.tour;
    std::sort(visited.begin(), visited.end());
    CHECK(visited == crossing.covered);

    // Already-optimal triangle is a fixed point.
    const PointSet tri = make_points({{1, 0}, {0, 1}}, {0, 0});
    RouteWitness opt = exact_tsp(tri, {0, 1}).witness;
    CHECK(two_opt_improve(opt, tri).route_cost == doctest::Approx(opt.route_cost));
}

TEST_CASE("steiner trees") {
    // Path root - a - b, weights 1 and 1.
    WeightedGraph path(2);
    path.add_edge(0, 1, 1.0);
    path.add_edge(1, 2, 1.0);
    CHECK(exact_steiner(path, {1}).cost == doctest::Approx(2.0));
    CHECK(kmb_steiner(path, {1}).cost == doctest::Approx(2.0));
    CHECK(kmb_steiner(path, {}).cost == doctest::Approx(0.0));
    // Single terminal: shortest-path distance from root.
    CHECK(kmb_steiner(path, {0}).cost == doctest::Approx(1.0));

    WeightedGraph disc(2);
    disc.add_edge(0, 1, 1.0);
    CHECK_THROWS(kmb_steiner(disc, {1}));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const WeightedGraph g = random_connected_graph(7, seed);
        std::mt19937_64 rng(seed + 100);
        ItemSet s;
        for (int i = 0; i < 7; ++i)
            if (rng() % 2 == 0) s.push_back(i);
        const double exact = exact_steiner(g, s).cost;
        const double heur = kmb_steiner(g, s).cost;
        CHECK(heur >= exact - 1e-9);
        CHECK(heur <= 2.0 * exact + 1e-9);
    }

    // Unit weights on small graphs: KMB matches exact.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        WeightedGraph g(4);
        std::mt19937_64 rng(seed);
        for (int v = 1; v < g.vertices(); ++v) {
            std::uniform_int_distribution<int> pd(0, v - 1);
            g.add_edge(pd(rng), v, 1.0);
        }
        CHECK(kmb_steiner(g, {0, 2, 3}).cost == doctest::Approx(exact_steiner(g, {0, 2, 3}).cost));
    }
}

TEST_CASE("cost oracle semantics") {
    const PointSet pts = make_points({{3, 4}, {6, 8}});
    auto oracle = CostOracle::make_tsp(CostOracle::Kind::TspExact, pts, {1.0, 2.0});
    CHECK(oracle.is_exact());
    CHECK(oracle.theta() == doctest::Approx(0.0));
    CHECK(oracle.c_min() == doctest::Approx(1.0));
    CHECK(oracle.route_cost({0}).cost == doctest::Approx(11.0));  // 1 + 2 * 5
    CHECK(oracle.route_cost({}).cost == doctest::Approx(0.0));

    // Memoization: logical counter keeps counting, hits tracked separately.
    oracle.reset_counters();
    oracle.route_cost({0, 1});
    oracle.route_cost({0, 1});
    CHECK(oracle.calls() == 2);
    CHECK(oracle.cache_hits() == 1);

    // Witness re-costs to the reported value and covers exactly S.
    const RouteResult r = oracle.route_cost({0, 1});
    CHECK(r.witness.covered == ItemSet{0, 1});
    CHECK(r.witness.route_cost ==
          doctest::Approx(tour_length(pts, r.witness.tour) * pts.travel_rate));
    CHECK(r.cost == doctest::Approx(r.witness.route_cost + 3.0));

    // Marginal cost clamps at c_min.
    CHECK(oracle.marginal_cost({1}, 0) >= oracle.c_min() - 1e-12);

    auto heur = CostOracle::make_tsp(CostOracle::Kind::TspMstDouble, pts, {1.0, 2.0});
    CHECK_FALSE(heur.is_exact());
    CHECK(heur.guarantee_factor() == doctest::Approx(2.0));
}

TEST_CASE("exact fallback") {
    const PointSet pts = random_points(6, 9);
    auto exact = CostOracle::make_tsp(CostOracle::Kind::TspExact, pts, std::vector<double>(6, 0.5));
    auto two_opt = CostOracle::make_tsp(CostOracle::Kind::TspTwoOpt, pts,
                                        std::vector<double>(6, 0.5), 15);
    ItemSet all{0, 1, 2, 3, 4, 5};
    // Everything fits under the fallback limit, so the costs agree exactly.
    CHECK(two_opt.route_cost(all).cost == doctest::Approx(exact.route_cost(all).cost));
}

TEST_CASE("cost chain clamp") {
    // Tabulated oracle that dips: rho({0,1}) < rho({0}).
    auto oracle = CostOracle::make_tabulated(2, {0.0, 10.0, 4.0, 6.0}, {1.0, 1.0}, false);
    CostChain chain(oracle);
    const double c0 = chain.extension_cost({0});
    CHECK(c0 == doctest::Approx(10.0));
    chain.accept({0}, c0);
    // Raw extension cost 6 is below the accepted 10; clamp to 10 + c_min.
    CHECK(chain.extension_cost({0, 1}) == doctest::Approx(11.0));
}

TEST_CASE("points and graph io") {
    std::stringstream ss("2\n0 0 0.6\n3 4 1.5\n1 2 0.25\n");
    const PointsFile pf = read_points(ss);
    CHECK(pf.points.n() == 2);
    CHECK(pf.points.travel_rate == doctest::Approx(0.6));
    CHECK(pf.points.coords[1].x == doctest::Approx(1.0));
    CHECK(pf.visiting_costs[1] == doctest::Approx(0.25));

    std::stringstream out;
    write_points(out, pf.points, pf.visiting_costs);
    std::stringstream back(out.str());
    const PointsFile pf2 = read_points(back);
    CHECK(pf2.points.coords[0].y == doctest::Approx(4.0));

    std::stringstream gs("3 2\n1 2 5\n2 3 7\n");
    const WeightedGraph g = read_graph(gs);
    CHECK(g.vertices() == 3);
    CHECK(g.edge(0, 1) == doctest::Approx(5.0));
    CHECK(g.edge(1, 2) == doctest::Approx(7.0));
    std::stringstream gout;
    write_graph(gout, g);
    std::stringstream gback(gout.str());
    const WeightedGraph g2 = read_graph(gback);
    CHECK(g2.edge(1, 2) == doctest::Approx(7.0));

    std::stringstream bad("2 1\n1 3 5\n");
    CHECK_THROWS(read_graph(bad));
}
