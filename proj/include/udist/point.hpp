#pragma once

#include <udist/exact.hpp>

#include <ostream>

namespace udist
{
    template <typename T>
    struct Point2
    {
        T x{}, y{};

        auto operator+(const Point2 & o) const -> Point2 { return { x + o.x, y + o.y }; }
        auto operator-(const Point2 & o) const -> Point2 { return { x - o.x, y - o.y }; }
        auto operator-() const -> Point2 { return { -x, -y }; }
        auto operator*(const T & s) const -> Point2 { return { x * s, y * s }; }
    };

    template <typename T>
    auto operator==(const Point2<T> & a, const Point2<T> & b) -> bool
    {
        return a.x == b.x && a.y == b.y;
    }

    template <typename T>
    auto dot(const Point2<T> & a, const Point2<T> & b) -> T
    {
        return a.x * b.x + a.y * b.y;
    }

    template <typename T>
    auto cross(const Point2<T> & a, const Point2<T> & b) -> T
    {
        return a.x * b.y - a.y * b.x;
    }

    template <typename T>
    auto squared_norm(const Point2<T> & a) -> T
    {
        return dot(a, a);
    }

    template <typename T>
    auto squared_distance(const Point2<T> & a, const Point2<T> & b) -> T
    {
        return squared_norm(b - a);
    }

    /// Product as complex numbers; rotation when b is a unit vector.
    template <typename T>
    auto complex_mul(const Point2<T> & a, const Point2<T> & b) -> Point2<T>
    {
        return { a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x };
    }

    /// a rotated by +90 degrees.
    template <typename T>
    auto perp(const Point2<T> & a) -> Point2<T>
    {
        return { -a.y, a.x };
    }

    using ExactPoint = Point2<ConstructibleNumber>;
    using RationalPoint = Point2<Rational>;

    inline auto to_exact(const RationalPoint & p) -> ExactPoint
    {
        return { ConstructibleNumber(p.x), ConstructibleNumber(p.y) };
    }

    /// Lower half-plane index used for exact angular sorting: 0 for angles in
    /// [0, pi), 1 for [pi, 2 pi). The zero vector is not allowed.
    template <typename T>
    auto half_plane(const Point2<T> & a) -> int
    {
        int sy = sign(a.y), sx = sign(a.x);
        if (sy > 0 || (sy == 0 && sx > 0))
            return 0;
        return 1;
    }

    /// Strict weak order by polar angle in [0, 2 pi), decided exactly.
    template <typename T>
    auto angle_less(const Point2<T> & a, const Point2<T> & b) -> bool
    {
        int ha = half_plane(a), hb = half_plane(b);
        if (ha != hb)
            return ha < hb;
        return sign(cross(a, b)) > 0;
    }

    inline auto operator<<(std::ostream & s, const ExactPoint & p) -> std::ostream &
    {
        return s << "(" << to_expression(p.x) << ", " << to_expression(p.y) << ")";
    }

    inline auto operator<<(std::ostream & s, const RationalPoint & p) -> std::ostream &
    {
        return s << "(" << p.x.get_str() << ", " << p.y.get_str() << ")";
    }
}
