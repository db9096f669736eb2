#pragma once

// Certificates for the fifteen-point case analysis: the degree profile of a
// hypothetical 38-edge graph, the classification of the neighbourhood graph of
// its degree-6 vertex, and exact geometry for each case.

#include <udist/udg.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace udist
{
    struct DegreeProfile
    {
        int u14 = 0, m15 = 0;
        std::int64_t edge_cap = 0;  // density recursion bound for 15 points
        bool rejected = false;
        std::string reason;
        int forced_min_degree = 0;  // m15 - u14: smaller degrees leave too many edges on 14 points
        int min_degree_used = 0;
        /// degree -> number of vertices, one map per admissible degree sequence
        std::vector<std::map<int, int>> profiles;
        bool requires_deletion_argument = false;
    };

    /// Throws std::invalid_argument for u14 < 1 or m15 < u14.
    auto derive_degree_profile(int u14, int m15, std::optional<int> min_degree = std::nullopt) -> DegreeProfile;

    struct GNWitness
    {
        std::string label;               // C6, P5+P1, P4+P2 or P3+P3
        std::vector<int> chain_lengths;  // 60-degree chains, longest first
        bool closed = false;
        std::vector<ExactPoint> points;  // unit vectors around the origin
        std::vector<Edge> edges;         // derived from exact distances
    };

    struct GNEnumeration
    {
        std::vector<GNWitness> types;
        std::map<int, int> types_by_edge_count;
        std::vector<std::string> rejected;
    };

    /// Chain model: every edge is a 60 degree step, so the six points split into
    /// chains; a chain of six closes. Witnesses are checked with exact distances.
    auto enumerate_gn_types() -> GNEnumeration;

    /// Component label such as "C6" or "P4+P2": cycles first, then paths, larger first.
    auto graph_type_label(const Graph & g) -> std::string;

    /// Independent oracle: all graphs on 6 labelled vertices with max degree <= 2 and
    /// 4..6 edges, keeping paths of at most 5 vertices and cycles only of length 6.
    auto brute_force_gn_types() -> std::set<std::string>;

    struct CaseFact
    {
        enum class Kind
        {
            squared_distance,   // |a - b|^2
            common_neighbors,   // number of common unit neighbours of a and b
            common_outside,     // common unit neighbours of a and b not among points[2..]
            diagonal_sum,       // |a - c|^2 + |b - d|^2
            integer             // counting step; no points
        };
        enum class Relation
        {
            equal,
            greater,
            less,
            not_equal
        };

        Kind kind = Kind::integer;
        std::string description;
        std::vector<std::string> points;
        Relation relation = Relation::equal;
        ConstructibleNumber target;
        ConstructibleNumber observed;
        bool verified = false;
    };

    struct CaseCertificate
    {
        std::string label;  // C6, P5P1, P4P2 or P3P3
        std::vector<std::pair<std::string, ExactPoint>> coordinates;
        std::vector<CaseFact> facts;
        std::vector<std::string> prose_steps;
        int offsets_sampled = 0;
        bool verdict = false;  // every fact verified

        [[nodiscard]] auto point(const std::string & name) const -> const ExactPoint &;
    };

    auto certify_case_c6() -> CaseCertificate;
    auto certify_case_p5p1() -> CaseCertificate;
    auto certify_case_p4p2() -> CaseCertificate;
    auto certify_case_p3p3() -> CaseCertificate;

    /// Case by label, case-insensitive: c6, p5p1, p4p2, p3p3.
    auto certify_case(const std::string & label) -> CaseCertificate;
    auto case_labels() -> std::vector<std::string>;

    /// Recomputes a fact from the certificate coordinates.
    auto recheck_fact(const CaseCertificate & cert, const CaseFact & fact) -> bool;

    struct ChainStep
    {
        std::string label;
        std::int64_t value = 0;
        std::int64_t expected = 0;
        [[nodiscard]] auto ok() const -> bool { return value == expected; }
    };

    struct ObservationChain
    {
        std::vector<ChainStep> steps;
        std::vector<std::string> geometric_inputs;
        std::vector<std::string> prose_steps;
        [[nodiscard]] auto ok() const -> bool;
        [[nodiscard]] auto value(const std::string & label) const -> std::int64_t;
    };

    auto verify_observation_chain() -> ObservationChain;
}
