#pragma once

#include <udist/udg.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace udist
{
    class DrawingError : public std::invalid_argument
    {
    public:
        enum class Kind
        {
            coincident_vertices,
            vertex_on_edge,
            overlap,
            triple_crossing,
            bad_edge
        };

        DrawingError(Kind kind, std::vector<int> witnesses, const std::string & what);

        Kind kind;
        /// vertex indices for coincident_vertices and vertex_on_edge (vertex first, then
        /// the edge endpoints); edge indices otherwise
        std::vector<int> witnesses;
    };

    template <typename T>
    struct StraightLineDrawing
    {
        std::vector<Point2<T>> positions;
        std::vector<Edge> edges;
    };

    struct CrossingCount
    {
        std::int64_t total = 0;
        std::vector<std::int64_t> per_edge;
        /// crossing edge pairs by edge index, first < second
        std::vector<Edge> pairs;
    };

    namespace detail
    {
        template <typename T>
        auto orient(const Point2<T> & a, const Point2<T> & b, const Point2<T> & c) -> int
        {
            return sign(cross(b - a, c - a));
        }

        template <typename T>
        auto lex_compare(const Point2<T> & a, const Point2<T> & b) -> int
        {
            if (int s = sign(a.x - b.x); s != 0)
                return s;
            return sign(a.y - b.y);
        }

        auto edge_name(const Edge & e) -> std::string;
    }

    /// Counts proper crossings over all edge pairs. Degenerate drawings raise DrawingError.
    template <typename T>
    auto count_crossings_straightline(const StraightLineDrawing<T> & d) -> CrossingCount
    {
        using detail::orient;
        int n = static_cast<int>(d.positions.size());
        int m = static_cast<int>(d.edges.size());
        const auto & P = d.positions;

        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (P[i] == P[j])
                    throw DrawingError(DrawingError::Kind::coincident_vertices, { i, j },
                        "vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

        for (int e = 0; e < m; ++e) {
            auto [a, b] = d.edges[e];
            if (a < 0 || b < 0 || a >= n || b >= n || a == b)
                throw DrawingError(DrawingError::Kind::bad_edge, { e }, "edge " + std::to_string(e) + " is invalid");
            for (int f = 0; f < e; ++f) {
                auto [c, g] = d.edges[f];
                if ((a == c && b == g) || (a == g && b == c))
                    throw DrawingError(DrawingError::Kind::bad_edge, { f, e }, "edge " + detail::edge_name(d.edges[e]) + " is repeated");
            }
            for (int v = 0; v < n; ++v) {
                if (v == a || v == b || orient(P[a], P[b], P[v]) != 0)
                    continue;
                if (sign(dot(P[v] - P[a], P[v] - P[b])) < 0)
                    throw DrawingError(DrawingError::Kind::vertex_on_edge, { v, a, b },
                        "vertex " + std::to_string(v) + " lies inside edge " + detail::edge_name(d.edges[e]));
            }
        }

        CrossingCount out;
        out.per_edge.assign(m, 0);
        struct Hit
        {
            Point2<T> point;
            int e, f;
        };
        std::vector<Hit> hits;

        for (int e = 0; e < m; ++e)
            for (int f = e + 1; f < m; ++f) {
                auto [a, b] = d.edges[e];
                auto [c, g] = d.edges[f];
                if (a == c || a == g || b == c || b == g) {
                    int shared = (a == c || a == g) ? a : b;
                    int x = shared == a ? b : a;
                    int y = (c == shared) ? g : c;
                    if (orient(P[shared], P[x], P[y]) == 0 && sign(dot(P[x] - P[shared], P[y] - P[shared])) > 0)
                        throw DrawingError(DrawingError::Kind::overlap, { e, f },
                            "edges " + detail::edge_name(d.edges[e]) + " and " + detail::edge_name(d.edges[f]) + " overlap");
                    continue;
                }
                int o1 = orient(P[a], P[b], P[c]), o2 = orient(P[a], P[b], P[g]);
                int o3 = orient(P[c], P[g], P[a]), o4 = orient(P[c], P[g], P[b]);
                if (o1 * o2 < 0 && o3 * o4 < 0) {
                    ++out.total;
                    ++out.per_edge[e];
                    ++out.per_edge[f];
                    out.pairs.emplace_back(e, f);
                    T t = cross(P[c] - P[a], P[g] - P[c]) / cross(P[b] - P[a], P[g] - P[c]);
                    hits.push_back({ P[a] + (P[b] - P[a]) * t, e, f });
                }
            }

        std::sort(hits.begin(), hits.end(), [](const Hit & x, const Hit & y) { return detail::lex_compare(x.point, y.point) < 0; });
        for (size_t i = 1; i < hits.size(); ++i)
            if (hits[i].point == hits[i - 1].point)
                throw DrawingError(DrawingError::Kind::triple_crossing,
                    { hits[i - 1].e, hits[i - 1].f, hits[i].e, hits[i].f }, "three or more edges cross at one point");
        return out;
    }

    /// Sum over edges of 1 / (x(e) + 1).
    auto harmonic_sum(const std::vector<std::int64_t> & per_edge) -> Rational;

    /// The chain m/(3n-6) <= m/H <= sum(x(e)+1)/m <= (2 cr + m)/m, evaluated exactly.
    struct HarmonicChain
    {
        Rational planar_ratio, harmonic_ratio, arithmetic_mean, crossing_ratio;
        bool harmonic_bound = false;  // H <= 3n - 6
        bool holds = false;
    };

    auto harmonic_chain(int n, const CrossingCount & c) -> HarmonicChain;

    /// Edges that precede all their crossing partners in a random order drawn from `seed`.
    auto caro_wei_planar_subgraph(const CrossingCount & c, std::uint64_t seed) -> std::vector<int>;

    template <typename T>
    auto caro_wei_planar_subgraph(const StraightLineDrawing<T> & d, std::uint64_t seed) -> std::vector<int>
    {
        return caro_wei_planar_subgraph(count_crossings_straightline(d), seed);
    }

    struct AbstractDrawing
    {
        int n = 0;
        std::vector<Edge> edges;
        /// crossing counts keyed by edge-index pairs (first < second)
        std::map<Edge, std::int64_t> crossings;

        auto validate() const -> void;
        [[nodiscard]] auto total_crossings() const -> std::int64_t;
        [[nodiscard]] auto multiplicities() const -> std::map<Edge, int>;
        [[nodiscard]] auto max_multiplicity() const -> int;
    };

    /// Replaces every edge by k close parallel copies; copies of one edge do not cross.
    auto thicken(const AbstractDrawing & a, int k) -> AbstractDrawing;

    auto abstract_from(const StraightLineDrawing<Rational> & d, const CrossingCount & c) -> AbstractDrawing;

    struct Arc
    {
        int circle;  // centre vertex
        int from, to;
    };

    struct CircleStats
    {
        std::int64_t intersection_points = 0;
        std::int64_t at_vertices = 0;
        std::int64_t tangencies = 0;          // tangent pairs whose touching point is not a vertex
        std::int64_t crossings = 0;           // transversal intersections away from vertices
        std::int64_t sum_pairs = 0;           // sum of C(deg, 2)
        std::int64_t pair_bound = 0;          // n^2 - n
        [[nodiscard]] auto vertex_count_matches() const -> bool { return at_vertices == sum_pairs; }
        [[nodiscard]] auto within_pair_bound() const -> bool { return intersection_points <= pair_bound; }
    };

    struct ArcMultigraph
    {
        int n = 0, m = 0;
        std::vector<Arc> arcs;
        std::map<Edge, int> multiplicity;
        int max_multiplicity = 0;
        std::vector<int> circles_without_arcs;
        bool min_degree_ok = false;  // every degree >= 3
        CircleStats stats;

        [[nodiscard]] auto arc_count_ok() const -> bool { return static_cast<int>(arcs.size()) == 2 * m; }
    };

    auto circle_crossing_stats(const UnitDistanceGraph & g) -> CircleStats;
    auto build_arc_multigraph(const UnitDistanceGraph & g) -> ArcMultigraph;

    struct PropositionCheck
    {
        std::int64_t n = 0, m = 0, sum_pairs = 0;
        std::int64_t left = 0, right = 0;  // n^2 - n and 4m - 12n + 24 + sum C(deg,2)
        bool holds = false;
        bool precondition_ok = false;  // min degree >= 3
        [[nodiscard]] auto slack() const -> std::int64_t { return left - right; }
    };

    auto check_proposition_inequality(const UnitDistanceGraph & g) -> PropositionCheck;
    auto check_proposition_values(std::int64_t n, std::int64_t m, std::int64_t sum_pairs, bool precondition_ok)
        -> PropositionCheck;

    /// Reads {"positions": [[x, y], ...], "edges": [[i, j], ...]}; coordinates are
    /// numbers, decimal strings or expressions with sqrt.
    auto load_drawing(const std::string & path) -> StraightLineDrawing<ConstructibleNumber>;
    auto parse_drawing(std::string_view text) -> StraightLineDrawing<ConstructibleNumber>;

    /// Random non-degenerate straight-line drawing with integer coordinates in [0, grid).
    auto random_drawing(int n, int m, std::mt19937_64 & rng, int grid = 64) -> StraightLineDrawing<Rational>;

    /// n points in convex position on the unit circle (rational), edges: the hull path
    /// 0-1-...-(n-1) plus `chords` random chords. The path edges are never crossed.
    auto convex_drawing(int n, int chords, std::mt19937_64 & rng) -> StraightLineDrawing<Rational>;
}
