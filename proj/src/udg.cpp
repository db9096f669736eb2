#include <udist/udg.hpp>

#include <algorithm>
#include <string>

using std::optional;
using std::vector;

namespace udist
{
    DuplicatePointError::DuplicatePointError(int first, int second) :
        std::invalid_argument("points " + std::to_string(first) + " and " + std::to_string(second) + " coincide"),
        first(first),
        second(second)
    {
    }

    Graph::Graph(int n) :
        _n(n),
        _adj(n),
        _matrix(n, vector<bool>(n, false))
    {
    }

    Graph::Graph(int n, const vector<Edge> & edges) :
        Graph(n)
    {
        for (auto [a, b] : edges)
            add_edge(a, b);
    }

    auto Graph::add_edge(int a, int b) -> void
    {
        if (a < 0 || b < 0 || a >= _n || b >= _n)
            throw std::out_of_range("edge endpoint out of range");
        if (a == b)
            throw std::invalid_argument("loop at vertex " + std::to_string(a));
        if (_matrix[a][b])
            throw std::invalid_argument("repeated edge " + std::to_string(a) + "-" + std::to_string(b));
        if (a > b)
            std::swap(a, b);
        _edges.emplace_back(a, b);
        _adj[a].push_back(b);
        _adj[b].push_back(a);
        _matrix[a][b] = _matrix[b][a] = true;
    }

    auto Graph::adjacent(int a, int b) const -> bool
    {
        return _matrix.at(a).at(b);
    }

    auto unit_distance_graph(vector<ExactPoint> points) -> UnitDistanceGraph
    {
        vector<ConstructibleNumber> coords;
        coords.reserve(2 * points.size());
        for (const auto & p : points) {
            coords.push_back(p.x);
            coords.push_back(p.y);
        }
        unify_all(coords);
        for (size_t i = 0; i < points.size(); ++i)
            points[i] = { coords[2 * i], coords[2 * i + 1] };

        int n = static_cast<int>(points.size());
        UnitDistanceGraph g;
        g.graph = Graph(n);
        ConstructibleNumber one(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto d2 = squared_distance(points[i], points[j]);
                if (d2.is_zero())
                    throw DuplicatePointError(i, j);
                if (d2 == one) {
                    g.graph.add_edge(i, j);
                    g.certificates.push_back({ EdgeCertificate::Kind::exact, Rational(0) });
                }
            }
        g.points = std::move(points);
        return g;
    }

    auto unit_distance_graph(const vector<RationalPoint> & points, const Rational & tol, const Rational & band)
        -> UnitDistanceGraph
    {
        if (tol <= 0)
            throw std::invalid_argument("tolerance must be positive");
        if (band < 0)
            throw std::invalid_argument("ambiguity band must be nonnegative");

        Rational edge_lo = (1 - tol) * (1 - tol), edge_hi = (1 + tol) * (1 + tol);
        Rational outer = 1 - tol - band;
        Rational amb_lo = outer > 0 ? Rational(outer * outer) : Rational(0);
        Rational amb_hi = (1 + tol + band) * (1 + tol + band);
        Rational separation = 4 * tol * tol;

        int n = static_cast<int>(points.size());
        UnitDistanceGraph g;
        g.graph = Graph(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Rational d2 = squared_distance(points[i], points[j]);
                if (d2 <= separation)
                    throw DuplicatePointError(i, j);
                if (edge_lo <= d2 && d2 <= edge_hi) {
                    g.graph.add_edge(i, j);
                    g.certificates.push_back({ EdgeCertificate::Kind::approximate, tol });
                }
                else if (amb_lo <= d2 && d2 <= amb_hi)
                    g.ambiguous.emplace_back(i, j);
            }
        g.points = points;
        return g;
    }

    auto common_unit_neighbors(const ExactPoint & p, const ExactPoint & q) -> CommonNeighbors
    {
        auto diff = q - p;
        auto d2 = squared_norm(diff);
        if (d2.is_zero())
            throw std::invalid_argument("common_unit_neighbors: the two centres coincide");

        int s = sign(d2 - ConstructibleNumber(4));
        ExactPoint mid = (p + q) * ConstructibleNumber(Rational(1, 2));
        if (s > 0)
            return { 0, {} };
        if (s == 0)
            return { 1, { mid } };

        // offset from the midpoint is perp(diff) * sqrt(1/d2 - 1/4)
        auto h = sqrt_extend(d2.recip() - ConstructibleNumber(Rational(1, 4))).root;
        auto off = perp(diff) * h;
        return { 2, { mid + off, mid - off } };
    }

    auto contains_k23(const Graph & g) -> optional<K23Witness>
    {
        int n = g.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                vector<int> common;
                for (int c : g.neighbours(a))
                    if (c != b && g.adjacent(b, c))
                        common.push_back(c);
                if (common.size() >= 3) {
                    std::sort(common.begin(), common.end());
                    return K23Witness{ { a, b }, { common[0], common[1], common[2] } };
                }
            }
        return std::nullopt;
    }

    auto contains_k4(const Graph & g) -> optional<std::array<int, 4>>
    {
        int n = g.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (! g.adjacent(a, b))
                    continue;
                for (int c = b + 1; c < n; ++c) {
                    if (! g.adjacent(a, c) || ! g.adjacent(b, c))
                        continue;
                    for (int d = c + 1; d < n; ++d)
                        if (g.adjacent(a, d) && g.adjacent(b, d) && g.adjacent(c, d))
                            return std::array<int, 4>{ a, b, c, d };
                }
            }
        return std::nullopt;
    }

    auto degree_stats(const Graph & g) -> DegreeStats
    {
        DegreeStats s;
        for (int v = 0; v < g.size(); ++v) {
            int d = g.degree(v);
            s.degrees.push_back(d);
            s.degree_sum += d;
            s.sum_pairs += choose2(d);
        }
        if (! s.degrees.empty()) {
            s.min_degree = *std::min_element(s.degrees.begin(), s.degrees.end());
            s.max_degree = *std::max_element(s.degrees.begin(), s.degrees.end());
        }
        return s;
    }

    auto jensen_degree_floor(std::int64_t n, std::int64_t m) -> std::int64_t
    {
        if (n < 1 || m < 0)
            throw std::invalid_argument("jensen_degree_floor needs n >= 1 and m >= 0");
        std::int64_t q = 2 * m / n, r = 2 * m % n;
        return (n - r) * choose2(q) + r * choose2(q + 1);
    }
}
