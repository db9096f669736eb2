#pragma once

#include <udist/udg.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace udist
{
    struct ConstructionRecord
    {
        std::string id;
        int n = 0;
        std::vector<RationalPoint> coords;
        std::vector<Edge> edges;
        int claimed_count = 0;
        std::string provenance;
    };

    class CatalogError : public std::runtime_error
    {
    public:
        CatalogError(std::string record_id, std::string field, const std::string & what);
        std::string record_id, field;
    };

    auto default_catalog_path() -> std::string;
    auto load_catalog(const std::string & path) -> std::vector<ConstructionRecord>;
    auto parse_catalog(std::string_view text) -> std::vector<ConstructionRecord>;
    auto find_record(const std::vector<ConstructionRecord> & records, std::string_view id) -> const ConstructionRecord &;

    struct EdgeDeviation
    {
        Edge edge;
        Rational squared_length;
        double length = 0;
    };

    struct ApproxReport
    {
        std::string id;
        Rational tolerance;
        bool passed = false;
        int claimed = 0;
        double max_deviation = 0;
        std::vector<EdgeDeviation> failures;
        /// near-unit pairs the record does not claim
        std::vector<Edge> unclaimed_edges;
        std::vector<Edge> ambiguous;
    };

    auto verify_approx(const ConstructionRecord & rec, const Rational & tol = Rational(1, 50),
        const Rational & band = default_ambiguity_band) -> ApproxReport;

    enum class RealizationStatus
    {
        exact_certified,
        approximate_only,
        failed
    };

    auto to_string(RealizationStatus s) -> std::string;

    struct RealizeOptions
    {
        /// When propagation stalls, fix the direction of one edge and continue.
        bool allow_direction_choice = true;
        /// Largest angle between the picture and a lattice direction that is still accepted.
        double lattice_tolerance_degrees = 1.5;
    };

    struct FreeChoice
    {
        int vertex = -1, anchor = -1;
        std::string kind;  // "lattice" or "generic"
        double deviation_degrees = 0;
        ExactPoint direction;
    };

    struct RealizationResult
    {
        std::string id;
        RealizationStatus status = RealizationStatus::failed;
        std::vector<ExactPoint> points;
        std::vector<int> order;
        std::vector<FreeChoice> free_choices;
        std::vector<int> unplaced;
        std::optional<Edge> offending;
        std::string message;
        int derived_edge_count = 0;
        std::vector<Edge> bonus_edges;
        /// an intersection candidate choice fell back to the lexicographic rule
        bool tie_flagged = false;
        std::optional<UnitDistanceGraph> graph;
    };

    auto realize_exact(const ConstructionRecord & rec, const RealizeOptions & options = {}) -> RealizationResult;

    struct KnownValue
    {
        int n = 0;
        int lower = 0, upper = 0;
        bool exact = false, starred = false;
        std::string provenance;
    };

    auto default_known_values_path() -> std::string;
    auto load_known_values(const std::string & path) -> std::map<int, KnownValue>;

    struct SummaryRow
    {
        int n = 0;
        int lower = 0;  // best claimed edge count among records
        std::optional<int> published_upper;
        RealizationStatus status = RealizationStatus::failed;  // best status among records
        std::vector<std::string> record_ids;
    };

    auto catalog_summary(const std::vector<ConstructionRecord> & records,
        const std::map<std::string, RealizationStatus> & statuses, const std::map<int, KnownValue> & known)
        -> std::vector<SummaryRow>;
}
