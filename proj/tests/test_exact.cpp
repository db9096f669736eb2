#include <udist/exact.hpp>

#include <doctest.h>

#include <random>

using namespace udist;

namespace
{
    auto sqrt_of(long v) -> ConstructibleNumber
    {
        return sqrt_extend(ConstructibleNumber(v)).root;
    }

    auto q(long p, long d = 1) -> Rational
    {
        Rational r(p, d);
        r.canonicalize();
        return r;
    }

    // bounds a/2^bits <= sqrt(v) <= (a+1)/2^bits by integer square root
    auto sqrt_bracket(long v, int bits) -> std::pair<Rational, Rational>
    {
        Integer scaled = Integer(v) << (2 * bits), root;
        mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
        return { Rational(root, Integer(1) << bits), Rational(root + 1, Integer(1) << bits) };
    }

    auto random_element(std::mt19937_64 & rng, const std::vector<ConstructibleNumber> & gens) -> ConstructibleNumber
    {
        std::uniform_int_distribution<int> coeff(-9, 9), den(1, 5);
        ConstructibleNumber x(q(coeff(rng), den(rng)));
        for (const auto & g : gens)
            x += ConstructibleNumber(q(coeff(rng), den(rng))) * g;
        if (coeff(rng) > 4)
            x += ConstructibleNumber(q(coeff(rng), den(rng))) * gens[0] * gens[1];
        return x;
    }
}

TEST_CASE("field arithmetic examples")
{
    auto s3 = sqrt_of(3);
    CHECK((ConstructibleNumber(1) + s3) * (ConstructibleNumber(-1) + s3) == ConstructibleNumber(2));
    CHECK(ConstructibleNumber(2).recip() == ConstructibleNumber(q(1, 2)));

    ConstructibleNumber half(q(1, 2));
    auto y = s3 * half;
    CHECK(half * half + y * y == ConstructibleNumber(1));
    CHECK((half * half + y * y).is_rational());

    CHECK_THROWS_AS((void) ConstructibleNumber(0).recip(), ArithmeticError);
    CHECK_THROWS_AS((void) (s3 - s3).recip(), ArithmeticError);
}

TEST_CASE("sign examples")
{
    CHECK(sign(sqrt_of(2) - ConstructibleNumber(q(3, 2))) == -1);
    CHECK(sign(ConstructibleNumber(0)) == 0);
    // oracle: 3*100 > 17^2
    CHECK(3 * 100 > 17 * 17);
    CHECK(sign(sqrt_of(3) - ConstructibleNumber(q(17, 10))) == 1);
    CHECK(sign(sqrt_of(2) + sqrt_of(3) - sqrt_of(10)) == -1);
    CHECK(sign(sqrt_of(2) + sqrt_of(3) - ConstructibleNumber(q(314, 100))) == 1);
}

TEST_CASE("sqrt_extend examples")
{
    auto r3 = sqrt_extend(ConstructibleNumber(3));
    CHECK(r3.extended);
    CHECK(r3.tower.depth() == 1);
    CHECK(r3.root * r3.root == ConstructibleNumber(3));

    auto r4 = sqrt_extend(ConstructibleNumber(4));
    CHECK_FALSE(r4.extended);
    CHECK(r4.tower.depth() == 0);
    CHECK(r4.root == ConstructibleNumber(2));

    auto r34 = sqrt_extend(ConstructibleNumber(q(3, 4)));
    CHECK(r34.root * r34.root == ConstructibleNumber(q(3, 4)));
    CHECK(r34.root == sqrt_of(3) * ConstructibleNumber(q(1, 2)));

    CHECK_THROWS_AS(sqrt_extend(ConstructibleNumber(-1)), ArithmeticError);

    // nested: sqrt(4 + 2 sqrt 3) = 1 + sqrt 3 stays in Q(sqrt 3)
    auto s3 = sqrt_of(3);
    auto nested = sqrt_extend(ConstructibleNumber(4) + ConstructibleNumber(2) * s3);
    CHECK_FALSE(nested.extended);
    CHECK(nested.root == ConstructibleNumber(1) + s3);

    // sqrt(12) = 2 sqrt 3 inside Q(sqrt 3)
    auto in_tower = sqrt_extend(ConstructibleNumber(12).lifted_to(s3.tower()));
    CHECK_FALSE(in_tower.extended);
    CHECK(in_tower.root == ConstructibleNumber(2) * s3);
}

TEST_CASE("tower merging")
{
    auto s2 = sqrt_of(2), s3 = sqrt_of(3), s6 = sqrt_of(6);
    auto prod = s2 * s3;
    CHECK(prod == s6);
    CHECK(prod.tower().depth() == 2);
    // sqrt 6 is already present in Q(sqrt2, sqrt3)
    auto m = merge_towers(prod.tower(), s6.tower());
    CHECK(m.tower.depth() == 2);
    CHECK(sign(s2 + s3 - s6) == 1);
}

TEST_CASE("interval examples")
{
    auto i3 = to_interval(sqrt_of(3), 10);
    CHECK(i3.width() <= Rational(1, 1024));
    auto [l3, h3] = sqrt_bracket(3, 40);
    CHECK(i3.contains(l3));
    CHECK(i3.contains(h3));

    auto ih = to_interval(ConstructibleNumber(q(1, 2)), 7);
    CHECK(ih.lo == q(1, 2));
    CHECK(ih.hi == q(1, 2));

    auto phi = (ConstructibleNumber(1) + sqrt_of(5)) * ConstructibleNumber(q(1, 2));
    auto ip = to_interval(phi, 20);
    CHECK(ip.width() <= Rational(1, 1 << 20));
    auto [l5, h5] = sqrt_bracket(5, 60);
    CHECK(ip.contains(Rational((1 + l5) / 2)));
    CHECK(ip.contains(Rational((1 + h5) / 2)));
    CHECK(ip.contains(Rational(1618033, 1000000)) == false);
    CHECK(ip.contains(Rational(16180339, 10000000)));
}

TEST_CASE("text round trip")
{
    auto s3 = sqrt_of(3), s11 = sqrt_of(11);
    std::vector<ConstructibleNumber> samples = {
        ConstructibleNumber(0),
        ConstructibleNumber(q(-7, 3)),
        s3 * ConstructibleNumber(q(1, 2)),
        ConstructibleNumber(q(5, 6)) - s3 * s11 * ConstructibleNumber(q(1, 6)),
        ConstructibleNumber(q(1, 3)) + s11 + s3 * ConstructibleNumber(q(-2, 7)),
    };
    for (const auto & x : samples) {
        auto text = to_expression(x);
        CAPTURE(text);
        auto back = parse_expression(text);
        CHECK(back == x);
        CHECK(to_expression(back) == text);
    }

    CHECK(parse_rational("0.87") == q(87, 100));
    CHECK(parse_rational("-1.5") == q(-3, 2));
    CHECK(parse_rational("-.5") == q(-1, 2));
    CHECK(parse_rational("6/4") == q(3, 2));
    CHECK(parse_rational("15.09") == q(1509, 100));
    CHECK(parse_rational("010") == q(10));
    CHECK_THROWS(parse_rational("1e3"));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK(parse_expression("sqrt(3)/2 - 0.5") == s3 * ConstructibleNumber(q(1, 2)) - ConstructibleNumber(q(1, 2)));
    CHECK_THROWS(parse_expression("sqrt(3"));
    CHECK_THROWS(parse_expression("sqrt(-2)"));
}

TEST_CASE("field axioms on random elements")
{
    std::mt19937_64 rng(20261016);
    std::vector<ConstructibleNumber> gens = { sqrt_of(3), sqrt_of(11), sqrt_of(2) };
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_element(rng, gens), y = random_element(rng, gens), z = random_element(rng, gens);
        CHECK((x * y) * z == x * (y * z));
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
        if (! x.is_zero())
            CHECK(x * x.recip() == ConstructibleNumber(1));
        CHECK(sign(x) * sign(y) == sign(x * y));

        auto sq = x * x;
        auto root = sqrt_extend(sq);
        CHECK_FALSE(root.extended);
        CHECK(root.root * root.root == sq);
        CHECK(sign(root.root) >= 0);

        if (sign(x) >= 0) {
            auto r = sqrt_extend(x);
            CHECK(r.root * r.root == x);
        }
    }
}

TEST_CASE("sign agrees with intervals and intervals nest")
{
    std::mt19937_64 rng(7);
    std::vector<ConstructibleNumber> gens = { sqrt_of(5), sqrt_of(7) };
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_element(rng, gens);
        auto coarse = to_interval(x, 4);
        for (int p : { 5, 9, 17, 33 }) {
            auto fine = to_interval(x, p);
            CHECK(fine.width() <= Rational(Integer(1), Integer(1) << p));
            CHECK(coarse.contains(fine));
            coarse = fine;
        }
        if (coarse.lo > 0)
            CHECK(sign(x) == 1);
        if (coarse.hi < 0)
            CHECK(sign(x) == -1);
    }
}
