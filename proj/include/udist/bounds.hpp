#pragma once

// Crossing-number lower bounds, upper bounds on the number of unit distances
// u(n), the small-n table pipeline and the threshold solvers.

#include <udist/exact.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace udist
{
    struct BoundEvaluation
    {
        std::string formula_id;
        std::vector<std::pair<std::string, std::int64_t>> inputs;
        bool applicable = false;
        std::string reason;
        std::optional<Rational> value;
        std::vector<std::pair<std::string, Rational>> details;
    };

    using BaseFormula = std::function<Rational(std::int64_t n, std::int64_t m)>;

    /// max(0, m - (3n - 6)).
    auto planar_excess(std::int64_t n, std::int64_t m) -> Rational;
    /// Ackerman's bound, using the stronger form when 20m >= 139n.
    auto ackerman_value(std::int64_t n, std::int64_t m) -> Rational;

    auto cr_planar_excess(std::int64_t n, std::int64_t m) -> BoundEvaluation;
    auto cr_ackerman(std::int64_t n, std::int64_t m) -> BoundEvaluation;
    auto cr_multi_convex(std::int64_t n, std::int64_t m, std::int64_t k, const BaseFormula & base,
        const std::string & base_id = "custom") -> BoundEvaluation;
    auto cr_multi2_even(std::int64_t n, std::int64_t m) -> BoundEvaluation;
    auto cr_multi_general(std::int64_t n, std::int64_t m, std::int64_t k) -> BoundEvaluation;
    auto cr_multi2_large(std::int64_t n, std::int64_t m) -> BoundEvaluation;
    auto cr_nonhomotopic_ptt(std::int64_t n, std::int64_t m) -> BoundEvaluation;
    auto cr_nonhomotopic_improved(std::int64_t n, std::int64_t m) -> BoundEvaluation;
    auto cr_harmonic_simple(std::int64_t n, std::int64_t m) -> BoundEvaluation;

    /// Largest u with 4u^3 <= 29n^4. Not clamped: exceeds C(n,2) for n <= 8.
    auto u_upper_theorem(std::int64_t n) -> std::int64_t;
    /// Largest m with 2m^2 - mn <= n^3 - n^2, clamped to C(n,2).
    auto u_upper_jensen(std::int64_t n) -> std::int64_t;
    /// Largest m with 4m - 12n + 24 + jensen_degree_floor(n, m) <= n^2 - n, clamped to C(n,2).
    auto u_upper_proposition(std::int64_t n) -> std::int64_t;
    auto u_upper_schade(std::int64_t n, std::int64_t u_prev) -> std::int64_t;
    auto u_upper_degree2(std::int64_t u_prev) -> std::int64_t;

    class SeedError : public std::invalid_argument
    {
    public:
        SeedError(const std::string & what, std::optional<int> missing_n = std::nullopt);
        std::optional<int> missing_n;
    };

    using Seed = std::map<int, std::int64_t>;

    struct UpperBoundTableRow
    {
        int n = 0;
        std::optional<std::int64_t> schade, degree2, proposition;
        std::int64_t value = 0;
        std::string source;  // seed, schade, proposition or degree2
    };

    /// Rows for every seeded n, then U(n) = min(schade, max(degree2, proposition)) up to n_max.
    /// Seed keys must be consecutive.
    auto build_upper_table(const Seed & seed, int n_max) -> std::vector<UpperBoundTableRow>;

    /// Seed from the known-values file: exact values up to 15, published upper bounds up to 21.
    auto default_seed() -> Seed;
    /// Parses "21:68,14:33"; a path to a JSON known-values file; or "table1_known".
    auto parse_seed(const std::string & spec) -> Seed;

    struct ThresholdReport
    {
        std::int64_t value = 0;
        std::vector<std::pair<std::string, std::string>> audit;
    };

    auto crossover_case2() -> ThresholdReport;
    auto crossover_case3(std::int64_t scan_limit = 5000) -> ThresholdReport;

    struct TheoremVsTable
    {
        std::int64_t n = 0;
        std::int64_t search_start = 0;
        std::int64_t chain_before = 0, theorem_before = 0;
        std::int64_t chain_at = 0, theorem_at = 0;
        std::int64_t checked_through = 0;
        bool holds_through_limit = false;
    };

    /// Smallest n (at or past the first n where the theorem bound is below C(n,2))
    /// with u_upper_theorem(n) <= U_chain(n).
    auto crossover_theorem_vs_table(const Seed & seed, std::int64_t limit = 2000) -> TheoremVsTable;

    struct Theorem1Cases
    {
        bool coverage = false;
        std::int64_t case2_from = 0, case3_to = 0;
        bool gap_checked = false;
        std::int64_t gap_checked_up_to = 0;
        double gap_lower_at_3 = 0, gap_lower_at_1000 = 0;
        bool mean_value_bound = false;
        std::vector<std::string> notes;
        [[nodiscard]] auto ok() const -> bool { return coverage && gap_checked && mean_value_bound; }
    };

    auto validate_theorem1_cases(std::int64_t gap_limit = 2000) -> Theorem1Cases;

    /// Certified lower bound for cbrt(29/4) * (n^(4/3) - (n-1)^(4/3)).
    auto theorem_gap_lower(std::int64_t n, int bits = 48) -> Rational;

    struct SimpleBoundRow
    {
        int n = 0;
        std::int64_t proposition = 0;
        std::int64_t recursion_chain = 0;  // density recursion only, from u(14) = 33
        std::int64_t table_upper = 0;      // best previous values, as published
    };

    struct SimpleBoundComparison
    {
        std::vector<SimpleBoundRow> rows;
        std::optional<int> first_below_recursion, first_below_table;
    };

    auto compare_simple_bound(const std::map<int, std::int64_t> & published_upper, int n_max = 30)
        -> SimpleBoundComparison;

    /// Registry dispatch by stable formula id.
    auto formula_ids() -> std::vector<std::string>;
    auto evaluate_formula(const std::string & id, std::optional<std::int64_t> n, std::optional<std::int64_t> m,
        std::optional<std::int64_t> k) -> BoundEvaluation;
}
