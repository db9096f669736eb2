#include <udist/bounds.hpp>
#include <udist/constructions.hpp>
#include <udist/drawings.hpp>

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

using namespace udist;

namespace
{
    auto rp(long x, long y) -> RationalPoint
    {
        return { Rational(x), Rational(y) };
    }

    auto square_k4() -> StraightLineDrawing<Rational>
    {
        return { { rp(0, 0), rp(1, 0), rp(1, 1), rp(0, 1) }, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 0, 3 }, { 0, 2 }, { 1, 3 } } };
    }

    // regular-ish convex pentagon with integer coordinates
    auto convex_k5() -> StraightLineDrawing<Rational>
    {
        StraightLineDrawing<Rational> d;
        d.positions = { rp(0, 0), rp(4, 0), rp(5, 3), rp(2, 5), rp(-1, 3) };
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                d.edges.emplace_back(i, j);
        return d;
    }

    // exact in doubles: integer coordinates below 2^20
    auto orient_double(const RationalPoint & a, const RationalPoint & b, const RationalPoint & c) -> int
    {
        double v = (b.x.get_d() - a.x.get_d()) * (c.y.get_d() - a.y.get_d())
            - (b.y.get_d() - a.y.get_d()) * (c.x.get_d() - a.x.get_d());
        return (v > 0) - (v < 0);
    }

    auto oracle_crossings(const StraightLineDrawing<Rational> & d) -> std::int64_t
    {
        std::int64_t total = 0;
        const auto & P = d.positions;
        for (size_t e = 0; e < d.edges.size(); ++e)
            for (size_t f = e + 1; f < d.edges.size(); ++f) {
                auto [a, b] = d.edges[e];
                auto [c, g] = d.edges[f];
                if (a == c || a == g || b == c || b == g)
                    continue;
                if (orient_double(P[a], P[b], P[c]) * orient_double(P[a], P[b], P[g]) < 0
                    && orient_double(P[c], P[g], P[a]) * orient_double(P[c], P[g], P[b]) < 0)
                    ++total;
            }
        return total;
    }

    // chords of points in convex position cross iff their endpoints interleave
    auto interleave_crossings(const std::vector<Edge> & edges) -> std::int64_t
    {
        auto inside = [](int lo, int hi, int v) { return lo < v && v < hi; };
        std::int64_t total = 0;
        for (size_t e = 0; e < edges.size(); ++e)
            for (size_t f = e + 1; f < edges.size(); ++f) {
                auto [a, b] = edges[e];
                auto [c, g] = edges[f];
                int lo = std::min(a, b), hi = std::max(a, b);
                if (a == c || a == g || b == c || b == g)
                    continue;
                if (inside(lo, hi, c) != inside(lo, hi, g))
                    ++total;
            }
        return total;
    }

    auto catalog() -> const std::vector<ConstructionRecord> &
    {
        static const auto records = load_catalog(default_catalog_path());
        return records;
    }

    auto certified_graph(const std::string & id) -> UnitDistanceGraph
    {
        auto r = realize_exact(find_record(catalog(), id));
        REQUIRE(r.status == RealizationStatus::exact_certified);
        return *r.graph;
    }

    auto unit_triangle() -> UnitDistanceGraph
    {
        auto h = sqrt_extend(ConstructibleNumber(3)).root * ConstructibleNumber(Rational(1, 2));
        return unit_distance_graph(std::vector<ExactPoint>{ to_exact(rp(0, 0)), to_exact(rp(1, 0)),
            { ConstructibleNumber(Rational(1, 2)), h } });
    }
}

TEST_CASE("straight-line crossing examples")
{
    auto k4 = count_crossings_straightline(square_k4());
    CHECK(k4.total == 1);
    CHECK(k4.per_edge == std::vector<std::int64_t>{ 0, 0, 0, 0, 1, 1 });

    StraightLineDrawing<Rational> tri{ { rp(0, 0), rp(3, 0), rp(1, 2) }, { { 0, 1 }, { 1, 2 }, { 0, 2 } } };
    CHECK(count_crossings_straightline(tri).total == 0);

    auto k5 = convex_k5();
    CHECK(count_crossings_straightline(k5).total == 5);
    CHECK(oracle_crossings(k5) == 5);
    CHECK(interleave_crossings(k5.edges) == 5);
}

TEST_CASE("degenerate drawings are rejected with witnesses")
{
    StraightLineDrawing<Rational> triple{ { rp(-1, 0), rp(1, 0), rp(0, -1), rp(0, 1), rp(-1, -1), rp(1, 1) },
        { { 0, 1 }, { 2, 3 }, { 4, 5 } } };
    try {
        (void) count_crossings_straightline(triple);
        FAIL("triple crossing accepted");
    } catch (const DrawingError & e) {
        CHECK(e.kind == DrawingError::Kind::triple_crossing);
        std::set<int> w(e.witnesses.begin(), e.witnesses.end());
        CHECK(w.size() == 3);
    }

    StraightLineDrawing<Rational> through{ { rp(0, 0), rp(2, 0), rp(1, 0), rp(1, 1) }, { { 0, 1 }, { 2, 3 } } };
    try {
        (void) count_crossings_straightline(through);
        FAIL("vertex on edge accepted");
    } catch (const DrawingError & e) {
        CHECK(e.kind == DrawingError::Kind::vertex_on_edge);
        CHECK(e.witnesses == std::vector<int>{ 2, 0, 1 });
    }

    StraightLineDrawing<Rational> twin{ { rp(0, 0), rp(0, 0) }, { { 0, 1 } } };
    CHECK_THROWS_AS(count_crossings_straightline(twin), DrawingError);

    StraightLineDrawing<Rational> repeated{ { rp(0, 0), rp(1, 0) }, { { 0, 1 }, { 1, 0 } } };
    CHECK_THROWS_AS(count_crossings_straightline(repeated), DrawingError);

    // collinear but disjoint segments are fine
    StraightLineDrawing<Rational> apart{ { rp(0, 0), rp(1, 0), rp(2, 0), rp(3, 0) }, { { 0, 1 }, { 2, 3 } } };
    CHECK(count_crossings_straightline(apart).total == 0);
}

TEST_CASE("crossings with irrational coordinates")
{
    auto d = parse_drawing(R"J({"positions": [[0, 0], ["sqrt(2)", 0], [0.5, -1], ["1/2", "sqrt(3)"]],
                              "edges": [[0, 1], [2, 3]]})J");
    CHECK(count_crossings_straightline(d).total == 1);
    CHECK_THROWS(parse_drawing(R"({"positions": [[0]], "edges": []})"));
}

TEST_CASE("harmonic sum examples")
{
    StraightLineDrawing<Rational> tri{ { rp(0, 0), rp(3, 0), rp(1, 2) }, { { 0, 1 }, { 1, 2 }, { 0, 2 } } };
    CHECK(harmonic_sum(count_crossings_straightline(tri).per_edge) == 3);
    CHECK(harmonic_sum(count_crossings_straightline(square_k4()).per_edge) == 5);
    CHECK(harmonic_sum({}) == 0);
}

TEST_CASE("straight-line counts agree with the oracle on random drawings")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        int m = static_cast<int>(rng() % (n * (n - 1) / 2 + 1));
        auto d = random_drawing(n, m, rng);
        auto c = count_crossings_straightline(d);
        CHECK(c.total == oracle_crossings(d));
        std::int64_t sum = 0;
        for (auto x : c.per_edge)
            sum += x;
        CHECK(sum == 2 * c.total);

        auto chain = harmonic_chain(n, c);
        CHECK(chain.harmonic_bound);
        CHECK(chain.holds);
        if (c.total == 0)
            CHECK(harmonic_sum(c.per_edge) == m);
    }
}

TEST_CASE("crossing-free spanning path keeps the harmonic sum at least n - 1")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 9);
        auto d = convex_drawing(n, static_cast<int>(rng() % 20), rng);
        auto c = count_crossings_straightline(d);
        CHECK(c.total == interleave_crossings(d.edges));
        for (int i = 0; i + 1 < n; ++i)
            CHECK(c.per_edge[i] == 0);
        CHECK(harmonic_sum(c.per_edge) >= n - 1);
        CHECK(harmonic_sum(c.per_edge) <= 3 * n - 6);
    }
}

TEST_CASE("Caro-Wei planarization")
{
    auto k4 = square_k4();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto kept = caro_wei_planar_subgraph(k4, seed);
        CHECK(kept.size() == 5);
    }

    StraightLineDrawing<Rational> tri{ { rp(0, 0), rp(3, 0), rp(1, 2) }, { { 0, 1 }, { 1, 2 }, { 0, 2 } } };
    CHECK(caro_wei_planar_subgraph(tri, 99).size() == 3);

    std::mt19937_64 rng(3);
    auto d = random_drawing(10, 25, rng);
    auto c = count_crossings_straightline(d);
    std::set<Edge> crossing(c.pairs.begin(), c.pairs.end());
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto kept = caro_wei_planar_subgraph(c, seed);
        CHECK(kept == caro_wei_planar_subgraph(c, seed));
        for (size_t i = 0; i < kept.size(); ++i)
            for (size_t j = i + 1; j < kept.size(); ++j)
                CHECK_FALSE(crossing.count({ kept[i], kept[j] }));
    }

    // Monte Carlo mean against the exact expectation
    const int trials = 10000;
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < trials; ++s) {
        double size = static_cast<double>(caro_wei_planar_subgraph(c, 1000 + s).size());
        sum += size;
        sum_sq += size * size;
    }
    double mean = sum / trials;
    double sigma = std::sqrt((sum_sq / trials - mean * mean) / trials);
    double expected = harmonic_sum(c.per_edge).get_d();
    CHECK(std::abs(mean - expected) <= 3 * sigma + 1e-12);
}

TEST_CASE("thickening multiplies crossings by k squared")
{
    AbstractDrawing one{ 4, { { 0, 1 }, { 2, 3 } }, { { { 0, 1 }, 1 } } };
    auto t3 = thicken(one, 3);
    CHECK(t3.total_crossings() == 9);
    CHECK(t3.edges.size() == 6);
    CHECK(t3.max_multiplicity() == 3);

    auto ident = thicken(one, 1);
    CHECK(ident.edges == one.edges);
    CHECK(ident.crossings == one.crossings);

    auto k5 = convex_k5();
    auto a = abstract_from(k5, count_crossings_straightline(k5));
    auto t2 = thicken(a, 2);
    CHECK(t2.total_crossings() == 20);
    CHECK(t2.edges.size() == 20);
    CHECK(2 * 20 - 12 * 5 + 24 == 4);
    auto bound = cr_multi2_even(5, 20);
    REQUIRE(bound.value);
    CHECK(*bound.value <= 20);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        AbstractDrawing r;
        r.n = 3 + static_cast<int>(rng() % 8);
        int m = 1 + static_cast<int>(rng() % 12);
        for (int e = 0; e < m; ++e) {
            int u = static_cast<int>(rng() % r.n), v = static_cast<int>((u + 1 + rng() % (r.n - 1)) % r.n);
            r.edges.emplace_back(u, v);
        }
        for (int e = 0; e < m; ++e)
            for (int f = e + 1; f < m; ++f)
                if (rng() % 3 == 0)
                    r.crossings[{ e, f }] = static_cast<std::int64_t>(rng() % 4);
        for (int k : { 1, 2, 3, 5 })
            CHECK(thicken(r, k).total_crossings() == k * k * r.total_crossings());
    }

    CHECK_THROWS(thicken(one, 0));
    AbstractDrawing loop{ 2, { { 1, 1 } }, {} };
    CHECK_THROWS_AS(loop.validate(), DrawingError);
}

TEST_CASE("circle crossing statistics examples")
{
    auto two = unit_distance_graph(std::vector<ExactPoint>{ to_exact(rp(0, 0)), to_exact(rp(1, 0)) });
    auto s2 = circle_crossing_stats(two);
    CHECK(s2.intersection_points == 2);
    CHECK(s2.at_vertices == 0);

    auto s3 = circle_crossing_stats(unit_triangle());
    CHECK(s3.intersection_points == 6);
    CHECK(s3.at_vertices == 3);
    CHECK(s3.sum_pairs == 3);
    CHECK(s3.vertex_count_matches());

    // tangent circles touching at a vertex, and touching away from vertices
    auto line = unit_distance_graph(std::vector<ExactPoint>{ to_exact(rp(0, 0)), to_exact(rp(1, 0)), to_exact(rp(2, 0)) });
    auto sl = circle_crossing_stats(line);
    CHECK(sl.at_vertices == 1);
    CHECK(sl.tangencies == 0);
    auto apart = unit_distance_graph(std::vector<ExactPoint>{ to_exact(rp(0, 0)), to_exact(rp(2, 0)) });
    auto sa = circle_crossing_stats(apart);
    CHECK(sa.intersection_points == 1);
    CHECK(sa.tangencies == 1);
    CHECK(sa.crossings == 0);
}

TEST_CASE("arc multigraph examples")
{
    auto h7 = build_arc_multigraph(certified_graph("n7"));
    CHECK(h7.m == 12);
    CHECK(h7.arcs.size() == 24);
    CHECK(h7.arc_count_ok());

    auto g15 = certified_graph("n15");
    auto h15 = build_arc_multigraph(g15);
    CHECK(h15.arcs.size() == 74);
    CHECK(h15.min_degree_ok);
    CHECK(h15.max_multiplicity <= 2);
    CHECK(h15.stats.intersection_points <= 210);
    CHECK(h15.stats.vertex_count_matches());

    auto tri = build_arc_multigraph(unit_triangle());
    CHECK_FALSE(tri.min_degree_ok);
    CHECK(tri.arcs.size() == 6);
    CHECK(tri.max_multiplicity == 2);
}

TEST_CASE("arc multigraph invariants on every certified construction")
{
    for (const auto & rec : catalog()) {
        CAPTURE(rec.id);
        auto r = realize_exact(rec);
        if (r.status != RealizationStatus::exact_certified)
            continue;
        auto h = build_arc_multigraph(*r.graph);
        CHECK(h.stats.vertex_count_matches());
        CHECK(h.stats.within_pair_bound());
        if (! h.min_degree_ok)
            continue;
        CHECK(h.arc_count_ok());
        CHECK(h.max_multiplicity <= 2);

        std::int64_t n = h.n, edges = 2 * static_cast<std::int64_t>(h.m);
        for (const auto & ev : { cr_multi2_even(n, edges), cr_multi2_large(n, edges), cr_multi_general(n, edges, 2),
                 cr_multi_convex(n, edges, 2, ackerman_value, "ackerman") }) {
            CAPTURE(ev.formula_id);
            if (ev.applicable && ev.value)
                CHECK(*ev.value <= Rational(h.stats.crossings));
        }
    }
}

TEST_CASE("proposition inequality")
{
    auto g15 = certified_graph("n15");
    auto p = check_proposition_inequality(g15);
    CHECK(p.left == 210);
    CHECK(p.right == 4 * 37 - 12 * 15 + 24 + degree_stats(g15.graph).sum_pairs);
    CHECK(p.holds);
    CHECK(p.precondition_ok);

    auto hyp = check_proposition_values(22, 73, jensen_degree_floor(22, 73), true);
    CHECK(hyp.right == 466);
    CHECK(hyp.left == 462);
    CHECK_FALSE(hyp.holds);

    auto tri = check_proposition_inequality(unit_triangle());
    CHECK_FALSE(tri.precondition_ok);
}
