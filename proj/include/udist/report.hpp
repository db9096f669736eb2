#pragma once

// JSON and CSV renderings of the library results. Every JSON document carries
// a top-level schema_version; CSV column sets are fixed per table.

#include <udist/bounds.hpp>
#include <udist/case15.hpp>
#include <udist/constructions.hpp>
#include <udist/drawings.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace udist::report
{
    using Json = nlohmann::ordered_json;

    inline constexpr int schema_version = 1;

    auto document(const std::string & command) -> Json;

    /// Decimal digits of q truncated toward minus infinity.
    auto decimal(const Rational & q, int digits) -> std::string;
    /// Expression text plus an enclosing interval at the given binary precision.
    auto number(const ConstructibleNumber & x, int precision) -> Json;
    auto point(const ExactPoint & p, int precision) -> Json;
    auto edges(const std::vector<Edge> & list) -> Json;

    struct TableLine
    {
        UpperBoundTableRow row;
        std::optional<int> catalog_lower;     // best claimed count among catalog records
        std::optional<int> published_lower, published_upper;
        [[nodiscard]] auto consistent() const -> bool;
    };

    auto table_lines(const std::vector<UpperBoundTableRow> & rows, const std::vector<ConstructionRecord> & catalog,
        const std::map<int, KnownValue> & known, int from, int to) -> std::vector<TableLine>;
    auto table_json(const std::vector<TableLine> & lines) -> Json;
    /// Columns: n,upper,source,schade,degree2,proposition,catalog_lower,published_lower,published_upper
    auto table_csv(const std::vector<TableLine> & lines) -> std::string;

    struct VerifyLine
    {
        int n = 0;
        ApproxReport approx;
        RealizationResult exact;
        [[nodiscard]] auto failed() const -> bool;
    };

    auto verify_json(const std::vector<VerifyLine> & lines, int precision) -> Json;
    /// Columns: id,n,claimed,approx_passed,max_deviation,status,derived_edges,bonus_edges,free_choices
    auto verify_csv(const std::vector<VerifyLine> & lines) -> std::string;

    auto evaluation_json(const BoundEvaluation & e) -> Json;
    /// Columns: formula,applicable,value,value_decimal,reason,inputs
    auto evaluations_csv(const std::vector<BoundEvaluation> & list) -> std::string;

    auto threshold_json(const ThresholdReport & r) -> Json;
    auto theorem_vs_table_json(const TheoremVsTable & t) -> Json;
    auto cases_json(const Theorem1Cases & c) -> Json;
    auto comparison_json(const SimpleBoundComparison & c) -> Json;

    struct ArcCheck
    {
        std::string id;
        ArcMultigraph arcs;
        PropositionCheck proposition;
        std::vector<BoundEvaluation> bounds;  // evaluated on H: n vertices, 2m edges, multiplicity 2
        [[nodiscard]] auto bounds_ok() const -> bool;
        [[nodiscard]] auto ok() const -> bool;
    };

    auto arc_check(const std::string & id, const UnitDistanceGraph & g) -> ArcCheck;
    auto arcs_json(const ArcCheck & a) -> Json;

    auto certificate_json(const CaseCertificate & c, int precision) -> Json;
    auto chain_json(const ObservationChain & c) -> Json;
    auto gn_json(const GNEnumeration & e, const std::set<std::string> & oracle) -> Json;
    auto profile_json(const DegreeProfile & p) -> Json;

    auto crossings_json(const CrossingCount & c, const HarmonicChain & chain) -> Json;
}
