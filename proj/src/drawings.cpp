#include <udist/drawings.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace udist
{
    DrawingError::DrawingError(Kind kind, std::vector<int> witnesses, const std::string & what)
        : std::invalid_argument(what), kind(kind), witnesses(std::move(witnesses))
    {
    }

    auto detail::edge_name(const Edge & e) -> std::string
    {
        return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
    }

    auto harmonic_sum(const std::vector<std::int64_t> & per_edge) -> Rational
    {
        Rational total = 0;
        for (auto x : per_edge)
            total += Rational(1, x + 1);
        total.canonicalize();
        return total;
    }

    auto harmonic_chain(int n, const CrossingCount & c) -> HarmonicChain
    {
        HarmonicChain out;
        auto m = static_cast<std::int64_t>(c.per_edge.size());
        if (n < 3 || m == 0) {
            out.holds = true;
            out.harmonic_bound = true;
            return out;
        }
        Rational h = harmonic_sum(c.per_edge);
        Rational planar_count(3 * n - 6);
        std::int64_t shifted = 0;
        for (auto x : c.per_edge)
            shifted += x + 1;

        out.planar_ratio = Rational(m) / planar_count;
        out.harmonic_ratio = Rational(m) / h;
        out.arithmetic_mean = Rational(shifted, m);
        out.crossing_ratio = Rational(2 * c.total + m, m);
        out.arithmetic_mean.canonicalize();
        out.crossing_ratio.canonicalize();
        out.harmonic_bound = h <= planar_count;
        out.holds = out.planar_ratio <= out.harmonic_ratio && out.harmonic_ratio <= out.arithmetic_mean
            && out.arithmetic_mean <= out.crossing_ratio;
        return out;
    }

    auto caro_wei_planar_subgraph(const CrossingCount & c, std::uint64_t seed) -> std::vector<int>
    {
        int m = static_cast<int>(c.per_edge.size());
        std::vector<int> rank(m);
        std::iota(rank.begin(), rank.end(), 0);
        std::mt19937_64 rng(seed);
        std::shuffle(rank.begin(), rank.end(), rng);

        std::vector<bool> keep(m, true);
        for (auto [e, f] : c.pairs) {
            if (rank[e] < rank[f])
                keep[f] = false;
            else
                keep[e] = false;
        }
        std::vector<int> out;
        for (int e = 0; e < m; ++e)
            if (keep[e])
                out.push_back(e);
        return out;
    }

    auto AbstractDrawing::validate() const -> void
    {
        int m = static_cast<int>(edges.size());
        for (int e = 0; e < m; ++e) {
            auto [a, b] = edges[e];
            if (a < 0 || b < 0 || a >= n || b >= n || a == b)
                throw DrawingError(DrawingError::Kind::bad_edge, { e }, "edge " + detail::edge_name(edges[e]) + " is invalid");
        }
        for (const auto & [pair, count] : crossings) {
            auto [e, f] = pair;
            if (e < 0 || f >= m || e >= f)
                throw DrawingError(DrawingError::Kind::bad_edge, { e, f }, "crossing key " + detail::edge_name(pair) + " is invalid");
            if (count < 0)
                throw DrawingError(DrawingError::Kind::bad_edge, { e, f }, "negative crossing count");
        }
    }

    auto AbstractDrawing::total_crossings() const -> std::int64_t
    {
        std::int64_t total = 0;
        for (const auto & entry : crossings)
            total += entry.second;
        return total;
    }

    auto AbstractDrawing::multiplicities() const -> std::map<Edge, int>
    {
        std::map<Edge, int> out;
        for (auto [a, b] : edges)
            ++out[{ std::min(a, b), std::max(a, b) }];
        return out;
    }

    auto AbstractDrawing::max_multiplicity() const -> int
    {
        int best = 0;
        for (const auto & entry : multiplicities())
            best = std::max(best, entry.second);
        return best;
    }

    auto thicken(const AbstractDrawing & a, int k) -> AbstractDrawing
    {
        if (k < 1)
            throw std::invalid_argument("thickening factor must be positive");
        a.validate();
        AbstractDrawing out;
        out.n = a.n;
        out.edges.reserve(a.edges.size() * k);
        for (const auto & e : a.edges)
            for (int c = 0; c < k; ++c)
                out.edges.push_back(e);
        for (const auto & [pair, count] : a.crossings) {
            if (count == 0)
                continue;
            for (int ci = 0; ci < k; ++ci)
                for (int cj = 0; cj < k; ++cj)
                    out.crossings[{ pair.first * k + ci, pair.second * k + cj }] = count;
        }
        return out;
    }

    auto abstract_from(const StraightLineDrawing<Rational> & d, const CrossingCount & c) -> AbstractDrawing
    {
        AbstractDrawing out;
        out.n = static_cast<int>(d.positions.size());
        out.edges = d.edges;
        for (const auto & p : c.pairs)
            out.crossings[p] = 1;
        return out;
    }

    namespace
    {
        auto require_exact(const UnitDistanceGraph & g) -> const std::vector<ExactPoint> &
        {
            if (! g.is_exact())
                throw std::invalid_argument("arc multigraph needs exact coordinates");
            return g.exact_points();
        }

        class VertexLocator
        {
        public:
            explicit VertexLocator(const std::vector<ExactPoint> & points) : _points(points)
            {
                for (const auto & p : points)
                    _approx.emplace_back(p.x.approx(), p.y.approx());
            }

            [[nodiscard]] auto find(const ExactPoint & q) const -> int
            {
                double qx = q.x.approx(), qy = q.y.approx();
                for (size_t i = 0; i < _points.size(); ++i) {
                    if (std::abs(_approx[i].first - qx) > 1e-9 || std::abs(_approx[i].second - qy) > 1e-9)
                        continue;
                    if (_points[i] == q)
                        return static_cast<int>(i);
                }
                return -1;
            }

        private:
            const std::vector<ExactPoint> & _points;
            std::vector<std::pair<double, double>> _approx;
        };
    }

    auto circle_crossing_stats(const UnitDistanceGraph & g) -> CircleStats
    {
        const auto & P = require_exact(g);
        int n = g.n();
        CircleStats out;
        out.sum_pairs = degree_stats(g.graph).sum_pairs;
        out.pair_bound = static_cast<std::int64_t>(n) * n - n;

        VertexLocator locate(P);
        ConstructibleNumber four(4);
        ConstructibleNumber half(Rational(1, 2));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int s = sign(squared_distance(P[i], P[j]) - four);
                if (s > 0)
                    continue;
                if (s == 0) {
                    out.intersection_points += 1;
                    if (locate.find((P[i] + P[j]) * half) >= 0)
                        ++out.at_vertices;
                    else
                        ++out.tangencies;
                    continue;
                }
                auto common = common_unit_neighbors(P[i], P[j]);
                out.intersection_points += common.count;
                for (const auto & w : common.witnesses) {
                    if (locate.find(w) >= 0)
                        ++out.at_vertices;
                    else
                        ++out.crossings;
                }
            }
        return out;
    }

    auto build_arc_multigraph(const UnitDistanceGraph & g) -> ArcMultigraph
    {
        const auto & P = require_exact(g);
        ArcMultigraph out;
        out.n = g.n();
        out.m = g.m();
        out.min_degree_ok = out.n > 0;

        for (int v = 0; v < out.n; ++v) {
            auto around = g.graph.neighbours(v);
            if (around.size() < 3)
                out.min_degree_ok = false;
            if (around.size() < 2) {
                out.circles_without_arcs.push_back(v);
                continue;
            }
            std::sort(around.begin(), around.end(), [&](int a, int b) { return angle_less(P[a] - P[v], P[b] - P[v]); });
            for (size_t i = 0; i + 1 < around.size(); ++i)
                if (! angle_less(P[around[i]] - P[v], P[around[i + 1]] - P[v]))
                    throw std::logic_error("angular tie around vertex " + std::to_string(v));
            for (size_t i = 0; i < around.size(); ++i) {
                int a = around[i], b = around[(i + 1) % around.size()];
                out.arcs.push_back({ v, a, b });
                int c = ++out.multiplicity[{ std::min(a, b), std::max(a, b) }];
                out.max_multiplicity = std::max(out.max_multiplicity, c);
            }
        }
        out.stats = circle_crossing_stats(g);
        return out;
    }

    auto check_proposition_values(std::int64_t n, std::int64_t m, std::int64_t sum_pairs, bool precondition_ok)
        -> PropositionCheck
    {
        PropositionCheck out;
        out.n = n;
        out.m = m;
        out.sum_pairs = sum_pairs;
        out.left = n * n - n;
        out.right = 4 * m - 12 * n + 24 + sum_pairs;
        out.holds = out.left >= out.right;
        out.precondition_ok = precondition_ok;
        return out;
    }

    auto check_proposition_inequality(const UnitDistanceGraph & g) -> PropositionCheck
    {
        auto stats = degree_stats(g.graph);
        bool pre = g.n() > 0 && stats.min_degree >= 3;
        return check_proposition_values(g.n(), g.m(), stats.sum_pairs, pre);
    }

    namespace
    {
        auto coordinate(const nlohmann::json & v) -> ConstructibleNumber
        {
            if (v.is_number_integer())
                return ConstructibleNumber(Rational(v.get<long>()));
            if (v.is_number())
                return ConstructibleNumber(parse_rational(v.dump()));
            if (v.is_string())
                return parse_expression(v.get<std::string>());
            throw std::invalid_argument("coordinate must be a number or a string");
        }
    }

    auto parse_drawing(std::string_view text) -> StraightLineDrawing<ConstructibleNumber>
    {
        auto doc = nlohmann::json::parse(text);
        if (! doc.contains("positions") || ! doc.contains("edges"))
            throw std::invalid_argument("drawing needs 'positions' and 'edges'");
        StraightLineDrawing<ConstructibleNumber> out;
        for (const auto & p : doc.at("positions")) {
            if (! p.is_array() || p.size() != 2)
                throw std::invalid_argument("each position must be [x, y]");
            out.positions.push_back({ coordinate(p[0]), coordinate(p[1]) });
        }
        for (const auto & e : doc.at("edges")) {
            if (! e.is_array() || e.size() != 2)
                throw std::invalid_argument("each edge must be [i, j]");
            out.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        std::vector<ConstructibleNumber> coords;
        for (const auto & p : out.positions) {
            coords.push_back(p.x);
            coords.push_back(p.y);
        }
        unify_all(coords);
        for (size_t i = 0; i < out.positions.size(); ++i)
            out.positions[i] = { coords[2 * i], coords[2 * i + 1] };
        return out;
    }

    auto load_drawing(const std::string & path) -> StraightLineDrawing<ConstructibleNumber>
    {
        std::ifstream in(path);
        if (! in)
            throw std::runtime_error("cannot open drawing file " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_drawing(buffer.str());
    }

    namespace
    {
        auto random_edges(int n, int m, std::mt19937_64 & rng, const std::set<Edge> & forced) -> std::vector<Edge>
        {
            std::vector<Edge> pool;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (! forced.count({ i, j }))
                        pool.emplace_back(i, j);
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(std::min<size_t>(pool.size(), static_cast<size_t>(std::max(m, 0))));
            std::vector<Edge> out(forced.begin(), forced.end());
            out.insert(out.end(), pool.begin(), pool.end());
            return out;
        }
    }

    auto random_drawing(int n, int m, std::mt19937_64 & rng, int grid) -> StraightLineDrawing<Rational>
    {
        if (m > n * (n - 1) / 2)
            throw std::invalid_argument("too many edges for a simple graph");
        std::uniform_int_distribution<int> coord(0, grid - 1);
        for (int attempt = 0; attempt < 10000; ++attempt) {
            StraightLineDrawing<Rational> d;
            for (int i = 0; i < n; ++i)
                d.positions.push_back({ Rational(coord(rng)), Rational(coord(rng)) });
            d.edges = random_edges(n, m, rng, {});
            try {
                (void) count_crossings_straightline(d);
                return d;
            } catch (const DrawingError &) {
            }
        }
        throw std::runtime_error("no non-degenerate random drawing found");
    }

    auto convex_drawing(int n, int chords, std::mt19937_64 & rng) -> StraightLineDrawing<Rational>
    {
        std::set<Edge> path;
        for (int i = 0; i + 1 < n; ++i)
            path.insert({ i, i + 1 });
        int room = n * (n - 1) / 2 - static_cast<int>(path.size());
        chords = std::min(chords, room);
        for (int attempt = 0; attempt < 10000; ++attempt) {
            StraightLineDrawing<Rational> d;
            // rational points on the unit circle, increasing angle in t = tan(theta / 2)
            for (int i = 0; i < n; ++i) {
                Rational t(i, n);
                Rational den = 1 + t * t;
                d.positions.push_back({ Rational((1 - t * t) / den), Rational(2 * t / den) });
            }
            d.edges = random_edges(n, chords, rng, path);
            try {
                (void) count_crossings_straightline(d);
                return d;
            } catch (const DrawingError &) {
            }
        }
        throw std::runtime_error("no non-degenerate convex drawing found");
    }
}
