#pragma once

// Exact arithmetic in towers of real quadratic extensions of the rationals.
//
// A tower Q = K0 < K1 < ... < Kd is described by its radicands: radicand i is
// a positive element of K_i that is not a square in K_i, and K_{i+1} = K_i(sqrt(r_i)).
// An element of K_d is stored as 2^d rational coefficients, laid out recursively:
// the first half is the coefficient a in K_{d-1}, the second half is b, meaning
// a + b*sqrt(r_{d-1}).  Square roots are always the positive real root, so every
// element denotes one real number and sign() is exact.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace udist
{
    using Integer = mpz_class;
    using Rational = mpq_class;

    class ArithmeticError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class ConstructibleNumber;

    class FieldTower
    {
    public:
        /// The rationals.
        FieldTower();

        /// Builds a tower from radicands, each expressed in the tower of the
        /// preceding ones. Throws if a radicand is not positive or is a square.
        static auto from_radicands(const std::vector<ConstructibleNumber> & radicands) -> FieldTower;

        [[nodiscard]] auto depth() const -> int;
        [[nodiscard]] auto radicand(int level) const -> ConstructibleNumber;
        [[nodiscard]] auto prefix(int levels) const -> FieldTower;

        /// K(sqrt(r)); r must live in this tower, be positive and not a square here.
        [[nodiscard]] auto extended(const ConstructibleNumber & r) const -> FieldTower;

        [[nodiscard]] auto is_prefix_of(const FieldTower & other) const -> bool;
        auto operator==(const FieldTower & other) const -> bool;

        [[nodiscard]] auto raw_radicand(int level) const -> const std::vector<Rational> &;

    private:
        struct Data
        {
            std::vector<std::vector<Rational>> radicands;
        };

        explicit FieldTower(std::shared_ptr<const Data> data);

        std::shared_ptr<const Data> _data;
    };

    class ConstructibleNumber
    {
    public:
        ConstructibleNumber();
        ConstructibleNumber(long value);  // NOLINT(google-explicit-constructor)
        ConstructibleNumber(const Rational & value);  // NOLINT(google-explicit-constructor)

        /// Element with explicit coefficients; coeffs.size() must be 2^tower.depth().
        ConstructibleNumber(FieldTower tower, std::vector<Rational> coeffs);

        /// sqrt(radicand(level)) as an element of the given tower.
        static auto generator(const FieldTower & tower, int level) -> ConstructibleNumber;

        [[nodiscard]] auto tower() const -> const FieldTower & { return _tower; }
        [[nodiscard]] auto coefficients() const -> const std::vector<Rational> & { return _coeffs; }

        [[nodiscard]] auto is_zero() const -> bool;
        [[nodiscard]] auto is_rational() const -> bool;
        [[nodiscard]] auto as_rational() const -> std::optional<Rational>;
        [[nodiscard]] auto sign() const -> int;
        [[nodiscard]] auto recip() const -> ConstructibleNumber;

        /// Same value, embedded in a tower that has this element's tower as a prefix.
        [[nodiscard]] auto lifted_to(const FieldTower & tower) const -> ConstructibleNumber;

        /// Conservative double approximation; display and heuristics only.
        [[nodiscard]] auto approx() const -> double;

        auto operator-() const -> ConstructibleNumber;
        auto operator+=(const ConstructibleNumber & other) -> ConstructibleNumber &;
        auto operator-=(const ConstructibleNumber & other) -> ConstructibleNumber &;
        auto operator*=(const ConstructibleNumber & other) -> ConstructibleNumber &;
        auto operator/=(const ConstructibleNumber & other) -> ConstructibleNumber &;

    private:
        FieldTower _tower;
        std::vector<Rational> _coeffs;
    };

    auto operator+(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber;
    auto operator-(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber;
    auto operator*(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber;
    auto operator/(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber;

    auto operator==(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool;
    auto operator<(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool;
    auto operator<=(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool;
    auto operator>(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool;
    auto operator>=(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool;

    auto sign(const ConstructibleNumber & x) -> int;
    auto sign(const Rational & x) -> int;

    /// Tower containing both inputs' towers; the first tower is always a prefix.
    struct MergedTower
    {
        FieldTower tower;
        /// Images of the second tower's generators inside `tower`.
        std::vector<ConstructibleNumber> images;
    };

    auto merge_towers(const FieldTower & first, const FieldTower & second) -> MergedTower;

    /// Re-expresses both operands in a common tower.
    auto unify(const ConstructibleNumber & a, const ConstructibleNumber & b)
        -> std::pair<ConstructibleNumber, ConstructibleNumber>;

    /// Re-expresses all values in a single common tower.
    auto unify_all(std::vector<ConstructibleNumber> & values) -> void;

    /// The nonnegative square root if it already lies in x's tower.
    auto try_sqrt(const ConstructibleNumber & x) -> std::optional<ConstructibleNumber>;

    struct SqrtExtension
    {
        FieldTower tower;
        ConstructibleNumber root;
        bool extended = false;
    };

    /// Square root of x >= 0, extending the tower only when x is not already a square.
    auto sqrt_extend(const ConstructibleNumber & x) -> SqrtExtension;

    struct RationalInterval
    {
        Rational lo, hi;

        [[nodiscard]] auto width() const -> Rational { return hi - lo; }
        [[nodiscard]] auto contains(const Rational & v) const -> bool { return lo <= v && v <= hi; }
        [[nodiscard]] auto contains(const RationalInterval & other) const -> bool
        {
            return lo <= other.lo && other.hi <= hi;
        }
    };

    /// Interval of width <= 2^-precision containing x. Degenerate for rational x.
    /// For p < p', to_interval(x, p) contains to_interval(x, p').
    auto to_interval(const ConstructibleNumber & x, int precision) -> RationalInterval;

    /// Parses "p", "-p/q" or a finite decimal "-1.25" exactly.
    auto parse_rational(std::string_view text) -> Rational;
    auto to_string(const Rational & q) -> std::string;

    /// Expression text using rationals, sqrt(...), +, * and parentheses.
    auto to_expression(const ConstructibleNumber & x) -> std::string;

    /// Inverse of to_expression; also accepts -, / and decimals.
    auto parse_expression(std::string_view text) -> ConstructibleNumber;
}
