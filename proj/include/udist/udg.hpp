#pragma once

#include <udist/point.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace udist
{
    using Edge = std::pair<int, int>;

    class DuplicatePointError : public std::invalid_argument
    {
    public:
        DuplicatePointError(int first, int second);
        int first, second;
    };

    /// Simple undirected graph on vertices 0..n-1; edges stored with first < second.
    class Graph
    {
    public:
        Graph() = default;
        explicit Graph(int n);
        Graph(int n, const std::vector<Edge> & edges);

        auto add_edge(int a, int b) -> void;

        [[nodiscard]] auto size() const -> int { return _n; }
        [[nodiscard]] auto edge_count() const -> int { return static_cast<int>(_edges.size()); }
        [[nodiscard]] auto edges() const -> const std::vector<Edge> & { return _edges; }
        [[nodiscard]] auto adjacent(int a, int b) const -> bool;
        [[nodiscard]] auto neighbours(int v) const -> const std::vector<int> & { return _adj.at(v); }
        [[nodiscard]] auto degree(int v) const -> int { return static_cast<int>(_adj.at(v).size()); }

    private:
        int _n = 0;
        std::vector<Edge> _edges;
        std::vector<std::vector<int>> _adj;
        std::vector<std::vector<bool>> _matrix;
    };

    struct EdgeCertificate
    {
        enum class Kind
        {
            exact,
            approximate
        };
        Kind kind = Kind::exact;
        Rational tolerance;  // zero for exact
    };

    struct UnitDistanceGraph
    {
        std::variant<std::vector<ExactPoint>, std::vector<RationalPoint>> points;
        Graph graph;
        std::vector<EdgeCertificate> certificates;
        /// Approximate mode only: pairs whose distance is neither clearly 1 nor clearly not.
        std::vector<Edge> ambiguous;

        [[nodiscard]] auto is_exact() const -> bool { return points.index() == 0; }
        [[nodiscard]] auto exact_points() const -> const std::vector<ExactPoint> & { return std::get<0>(points); }
        [[nodiscard]] auto n() const -> int { return graph.size(); }
        [[nodiscard]] auto m() const -> int { return graph.edge_count(); }
    };

    /// Exact mode: an edge for every pair at squared distance exactly 1.
    /// All coordinates are first moved into one common tower.
    auto unit_distance_graph(std::vector<ExactPoint> points) -> UnitDistanceGraph;

    inline const Rational default_ambiguity_band{ 1, 200 };

    /// Approximate mode: edge iff |d - 1| <= tol; ambiguous iff tol < |d - 1| <= tol + band.
    /// Points must be separated by more than 2 tol.
    auto unit_distance_graph(const std::vector<RationalPoint> & points, const Rational & tol,
        const Rational & band = default_ambiguity_band) -> UnitDistanceGraph;

    struct CommonNeighbors
    {
        int count = 0;
        std::vector<ExactPoint> witnesses;
    };

    /// Intersection of the unit circles about p and q.
    auto common_unit_neighbors(const ExactPoint & p, const ExactPoint & q) -> CommonNeighbors;

    struct K23Witness
    {
        std::array<int, 2> pair;
        std::array<int, 3> common;
    };

    auto contains_k23(const Graph & g) -> std::optional<K23Witness>;
    auto contains_k4(const Graph & g) -> std::optional<std::array<int, 4>>;

    struct DegreeStats
    {
        std::vector<int> degrees;
        int min_degree = 0, max_degree = 0;
        std::int64_t degree_sum = 0;
        std::int64_t sum_pairs = 0;  // sum of C(deg, 2)
    };

    auto degree_stats(const Graph & g) -> DegreeStats;

    /// Minimum of sum C(d_i, 2) over integer sequences of n degrees summing to 2m.
    auto jensen_degree_floor(std::int64_t n, std::int64_t m) -> std::int64_t;

    inline auto choose2(std::int64_t k) -> std::int64_t { return k * (k - 1) / 2; }
}
