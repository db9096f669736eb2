#include <udist/exact.hpp>

#include <algorithm>
#include <cctype>
#include <span>

using std::optional;
using std::pair;
using std::span;
using std::string;
using std::string_view;
using std::vector;

namespace udist
{
    namespace
    {
        using Coeffs = vector<Rational>;
        using Radicands = vector<Coeffs>;

        auto all_zero(span<const Rational> x) -> bool
        {
            return std::all_of(x.begin(), x.end(), [](const Rational & q) { return sgn(q) == 0; });
        }

        auto add(span<const Rational> x, span<const Rational> y) -> Coeffs
        {
            Coeffs out(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                out[i] = x[i] + y[i];
            return out;
        }

        auto sub(span<const Rational> x, span<const Rational> y) -> Coeffs
        {
            Coeffs out(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                out[i] = x[i] - y[i];
            return out;
        }

        auto scale(span<const Rational> x, const Rational & s) -> Coeffs
        {
            Coeffs out(x.size());
            for (size_t i = 0; i < x.size(); ++i)
                out[i] = x[i] * s;
            return out;
        }

        auto zero_coeffs(int depth) -> Coeffs
        {
            return Coeffs(size_t{1} << depth, Rational{0});
        }

        auto concat(const Coeffs & lo, const Coeffs & hi) -> Coeffs
        {
            Coeffs out;
            out.reserve(lo.size() + hi.size());
            out.insert(out.end(), lo.begin(), lo.end());
            out.insert(out.end(), hi.begin(), hi.end());
            return out;
        }

        auto mul(const Radicands & r, int depth, span<const Rational> x, span<const Rational> y) -> Coeffs
        {
            if (depth == 0)
                return { x[0] * y[0] };

            size_t h = size_t{1} << (depth - 1);
            auto a = x.first(h), b = x.subspan(h), c = y.first(h), e = y.subspan(h);
            bool b_zero = all_zero(b), e_zero = all_zero(e);

            Coeffs lo = mul(r, depth - 1, a, c);
            if (! b_zero && ! e_zero)
                lo = add(lo, mul(r, depth - 1, r[depth - 1], mul(r, depth - 1, b, e)));

            Coeffs hi = zero_coeffs(depth - 1);
            if (! e_zero)
                hi = mul(r, depth - 1, a, e);
            if (! b_zero)
                hi = add(hi, mul(r, depth - 1, b, c));

            return concat(lo, hi);
        }

        auto sign_of(const Radicands & r, int depth, span<const Rational> x) -> int
        {
            if (depth == 0)
                return sgn(x[0]);

            size_t h = size_t{1} << (depth - 1);
            auto a = x.first(h), b = x.subspan(h);
            int sa = sign_of(r, depth - 1, a);
            int sb = sign_of(r, depth - 1, b);
            if (sb == 0)
                return sa;
            if (sa == 0 || sa == sb)
                return sb;

            // opposite signs: compare a^2 with b^2 d
            Coeffs t = sub(mul(r, depth - 1, a, a), mul(r, depth - 1, r[depth - 1], mul(r, depth - 1, b, b)));
            return sa * sign_of(r, depth - 1, t);
        }

        auto inverse(const Radicands & r, int depth, span<const Rational> x) -> Coeffs
        {
            if (depth == 0) {
                if (sgn(x[0]) == 0)
                    throw ArithmeticError("reciprocal of zero");
                return { 1 / x[0] };
            }

            size_t h = size_t{1} << (depth - 1);
            auto a = x.first(h), b = x.subspan(h);
            if (all_zero(b))
                return concat(inverse(r, depth - 1, a), zero_coeffs(depth - 1));

            Coeffs norm = sub(mul(r, depth - 1, a, a), mul(r, depth - 1, r[depth - 1], mul(r, depth - 1, b, b)));
            Coeffs n_inv = inverse(r, depth - 1, norm);
            Coeffs lo = mul(r, depth - 1, a, n_inv);
            Coeffs hi = scale(mul(r, depth - 1, b, n_inv), Rational{-1});
            return concat(lo, hi);
        }

        auto rational_sqrt(const Rational & q) -> optional<Rational>
        {
            if (sgn(q) < 0)
                return std::nullopt;
            if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
                return std::nullopt;
            Integer num, den;
            mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
            Rational out(num, den);
            out.canonicalize();
            return out;
        }

        auto square_root(const Radicands & r, int depth, span<const Rational> x) -> optional<Coeffs>
        {
            if (all_zero(x))
                return zero_coeffs(depth);
            if (sign_of(r, depth, x) < 0)
                return std::nullopt;
            if (depth == 0) {
                auto root = rational_sqrt(x[0]);
                if (! root)
                    return std::nullopt;
                return Coeffs{ *root };
            }

            size_t h = size_t{1} << (depth - 1);
            auto a = x.first(h), b = x.subspan(h);
            const Coeffs & d = r[depth - 1];

            if (all_zero(b)) {
                if (auto ra = square_root(r, depth - 1, a))
                    return concat(*ra, zero_coeffs(depth - 1));
                Coeffs q = mul(r, depth - 1, a, inverse(r, depth - 1, d));
                if (auto rq = square_root(r, depth - 1, q))
                    return concat(zero_coeffs(depth - 1), *rq);
                return std::nullopt;
            }

            // (c + e sqrt d)^2 = x  gives  c^2 = (a +- sqrt(a^2 - d b^2)) / 2,  e = b / 2c
            Coeffs norm = sub(mul(r, depth - 1, a, a), mul(r, depth - 1, d, mul(r, depth - 1, b, b)));
            auto n_root = square_root(r, depth - 1, norm);
            if (! n_root)
                return std::nullopt;

            for (int s : { 1, -1 }) {
                Coeffs c2 = scale(s > 0 ? add(a, *n_root) : sub(a, *n_root), Rational{1, 2});
                auto c = square_root(r, depth - 1, c2);
                if (! c || all_zero(*c))
                    continue;
                Coeffs e = mul(r, depth - 1, b, inverse(r, depth - 1, scale(*c, Rational{2})));
                Coeffs y = concat(*c, e);
                if (mul(r, depth, y, y) != Coeffs(x.begin(), x.end()))
                    continue;
                if (sign_of(r, depth, y) < 0)
                    y = scale(y, Rational{-1});
                return y;
            }
            return std::nullopt;
        }

        auto floor_to_grid(const Rational & v, int bits) -> Rational
        {
            Rational scaled = v * Rational(Integer(1) << bits);
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
            Rational out(f, Integer(1) << bits);
            out.canonicalize();
            return out;
        }

        auto ceil_to_grid(const Rational & v, int bits) -> Rational
        {
            Rational scaled = v * Rational(Integer(1) << bits);
            Integer c;
            mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
            Rational out(c, Integer(1) << bits);
            out.canonicalize();
            return out;
        }

        auto outward(RationalInterval i, int bits) -> RationalInterval
        {
            return { floor_to_grid(i.lo, bits), ceil_to_grid(i.hi, bits) };
        }

        auto interval_mul(const RationalInterval & x, const RationalInterval & y) -> RationalInterval
        {
            Rational p[4] = { x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi };
            return { *std::min_element(p, p + 4), *std::max_element(p, p + 4) };
        }

        auto interval_sqrt(const RationalInterval & x, int bits) -> RationalInterval
        {
            Rational four_q(Integer(1) << (2 * bits));
            Integer scale_den = Integer(1) << bits;

            Rational lo = x.lo < 0 ? Rational(0) : x.lo;
            Rational s = lo * four_q;
            Integer fl, root_lo;
            mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
            mpz_sqrt(root_lo.get_mpz_t(), fl.get_mpz_t());

            Rational t = x.hi * four_q;
            Integer cl, root_hi;
            mpz_cdiv_q(cl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
            mpz_sqrt(root_hi.get_mpz_t(), cl.get_mpz_t());
            if (root_hi * root_hi < cl)
                root_hi += 1;

            RationalInterval out{ Rational(root_lo, scale_den), Rational(root_hi, scale_den) };
            out.lo.canonicalize();
            out.hi.canonicalize();
            return out;
        }

        auto interval_of(const Radicands & r, int depth, span<const Rational> x, int bits) -> RationalInterval
        {
            if (depth == 0)
                return { x[0], x[0] };
            size_t h = size_t{1} << (depth - 1);
            auto a = x.first(h), b = x.subspan(h);
            RationalInterval ia = interval_of(r, depth - 1, a, bits);
            if (all_zero(b))
                return ia;
            RationalInterval ib = interval_of(r, depth - 1, b, bits);
            RationalInterval id = interval_of(r, depth - 1, r[depth - 1], bits);
            RationalInterval is = interval_sqrt(id, bits);
            RationalInterval prod = interval_mul(ib, is);
            return outward({ ia.lo + prod.lo, ia.hi + prod.hi }, bits + 4);
        }
    }

    // ---------------------------------------------------------------- FieldTower

    FieldTower::FieldTower() :
        _data(std::make_shared<const Data>())
    {
    }

    FieldTower::FieldTower(std::shared_ptr<const Data> data) :
        _data(std::move(data))
    {
    }

    auto FieldTower::from_radicands(const vector<ConstructibleNumber> & radicands) -> FieldTower
    {
        FieldTower t;
        for (const auto & r : radicands) {
            if (! r.tower().is_prefix_of(t))
                throw ArithmeticError("radicand does not live in the preceding levels of the tower");
            t = t.extended(r);
        }
        return t;
    }

    auto FieldTower::depth() const -> int
    {
        return static_cast<int>(_data->radicands.size());
    }

    auto FieldTower::radicand(int level) const -> ConstructibleNumber
    {
        return ConstructibleNumber(prefix(level), _data->radicands.at(level));
    }

    auto FieldTower::raw_radicand(int level) const -> const vector<Rational> &
    {
        return _data->radicands.at(level);
    }

    auto FieldTower::prefix(int levels) const -> FieldTower
    {
        if (levels == depth())
            return *this;
        if (levels < 0 || levels > depth())
            throw std::out_of_range("tower prefix");
        auto d = std::make_shared<Data>();
        d->radicands.assign(_data->radicands.begin(), _data->radicands.begin() + levels);
        return FieldTower(std::move(d));
    }

    auto FieldTower::extended(const ConstructibleNumber & r) const -> FieldTower
    {
        if (! r.tower().is_prefix_of(*this))
            throw ArithmeticError("radicand from an unrelated tower");
        ConstructibleNumber lifted = r.lifted_to(*this);
        if (lifted.sign() <= 0)
            throw ArithmeticError("radicand must be positive");
        if (try_sqrt(lifted))
            throw ArithmeticError("radicand is a square in the tower: " + to_expression(lifted));
        auto d = std::make_shared<Data>(*_data);
        d->radicands.push_back(lifted.coefficients());
        return FieldTower(std::move(d));
    }

    auto FieldTower::is_prefix_of(const FieldTower & other) const -> bool
    {
        if (_data == other._data)
            return true;
        if (depth() > other.depth())
            return false;
        for (int i = 0; i < depth(); ++i)
            if (_data->radicands[i] != other._data->radicands[i])
                return false;
        return true;
    }

    auto FieldTower::operator==(const FieldTower & other) const -> bool
    {
        return depth() == other.depth() && is_prefix_of(other);
    }

    // ------------------------------------------------------- ConstructibleNumber

    ConstructibleNumber::ConstructibleNumber() :
        _coeffs{ Rational{0} }
    {
    }

    ConstructibleNumber::ConstructibleNumber(long value) :
        _coeffs{ Rational{value} }
    {
    }

    ConstructibleNumber::ConstructibleNumber(const Rational & value) :
        _coeffs{ value }
    {
    }

    ConstructibleNumber::ConstructibleNumber(FieldTower tower, vector<Rational> coeffs) :
        _tower(std::move(tower)),
        _coeffs(std::move(coeffs))
    {
        if (_coeffs.size() != (size_t{1} << _tower.depth()))
            throw ArithmeticError("coefficient count does not match tower depth");
        for (auto & c : _coeffs)
            c.canonicalize();
    }

    auto ConstructibleNumber::generator(const FieldTower & tower, int level) -> ConstructibleNumber
    {
        if (level < 0 || level >= tower.depth())
            throw std::out_of_range("tower generator");
        vector<Rational> c(size_t{1} << tower.depth(), Rational{0});
        c[size_t{1} << level] = 1;
        return ConstructibleNumber(tower, std::move(c));
    }

    namespace
    {
        auto radicands_of(const FieldTower & t) -> Radicands
        {
            Radicands r;
            for (int i = 0; i < t.depth(); ++i)
                r.push_back(t.raw_radicand(i));
            return r;
        }
    }

    auto ConstructibleNumber::is_zero() const -> bool
    {
        return all_zero(_coeffs);
    }

    auto ConstructibleNumber::is_rational() const -> bool
    {
        return all_zero(span<const Rational>(_coeffs).subspan(1));
    }

    auto ConstructibleNumber::as_rational() const -> optional<Rational>
    {
        if (! is_rational())
            return std::nullopt;
        return _coeffs[0];
    }

    auto ConstructibleNumber::sign() const -> int
    {
        if (is_rational())
            return sgn(_coeffs[0]);
        return sign_of(radicands_of(_tower), _tower.depth(), _coeffs);
    }

    auto ConstructibleNumber::recip() const -> ConstructibleNumber
    {
        return ConstructibleNumber(_tower, inverse(radicands_of(_tower), _tower.depth(), _coeffs));
    }

    auto ConstructibleNumber::lifted_to(const FieldTower & tower) const -> ConstructibleNumber
    {
        if (_tower.depth() == tower.depth() && _tower.is_prefix_of(tower))
            return ConstructibleNumber(tower, _coeffs);
        if (! _tower.is_prefix_of(tower))
            throw ArithmeticError("cannot lift into a tower that does not extend this one");
        vector<Rational> c(size_t{1} << tower.depth(), Rational{0});
        std::copy(_coeffs.begin(), _coeffs.end(), c.begin());
        return ConstructibleNumber(tower, std::move(c));
    }

    auto ConstructibleNumber::approx() const -> double
    {
        if (is_rational())
            return _coeffs[0].get_d();
        auto i = to_interval(*this, 60);
        return Rational((i.lo + i.hi) / 2).get_d();
    }

    auto ConstructibleNumber::operator-() const -> ConstructibleNumber
    {
        return ConstructibleNumber(_tower, scale(_coeffs, Rational{-1}));
    }

    auto ConstructibleNumber::operator+=(const ConstructibleNumber & other) -> ConstructibleNumber &
    {
        if (_tower == other._tower) {
            for (size_t i = 0; i < _coeffs.size(); ++i)
                _coeffs[i] += other._coeffs[i];
            return *this;
        }
        auto [a, b] = unify(*this, other);
        return *this = a += b;
    }

    auto ConstructibleNumber::operator-=(const ConstructibleNumber & other) -> ConstructibleNumber &
    {
        return *this += -other;
    }

    auto ConstructibleNumber::operator*=(const ConstructibleNumber & other) -> ConstructibleNumber &
    {
        if (_tower == other._tower) {
            if (other.is_rational()) {
                for (auto & c : _coeffs)
                    c *= other._coeffs[0];
                return *this;
            }
            if (is_rational()) {
                Rational s = _coeffs[0];
                _coeffs = scale(other._coeffs, s);
                return *this;
            }
            _coeffs = mul(radicands_of(_tower), _tower.depth(), _coeffs, other._coeffs);
            return *this;
        }
        auto [a, b] = unify(*this, other);
        return *this = a *= b;
    }

    auto ConstructibleNumber::operator/=(const ConstructibleNumber & other) -> ConstructibleNumber &
    {
        return *this *= other.recip();
    }

    auto operator+(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber
    {
        return a += b;
    }

    auto operator-(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber
    {
        return a -= b;
    }

    auto operator*(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber
    {
        return a *= b;
    }

    auto operator/(ConstructibleNumber a, const ConstructibleNumber & b) -> ConstructibleNumber
    {
        return a /= b;
    }

    auto operator==(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool
    {
        if (a.tower() == b.tower())
            return a.coefficients() == b.coefficients();
        return (a - b).is_zero();
    }

    auto operator<(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool
    {
        return (a - b).sign() < 0;
    }

    auto operator<=(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool
    {
        return (a - b).sign() <= 0;
    }

    auto operator>(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool
    {
        return (a - b).sign() > 0;
    }

    auto operator>=(const ConstructibleNumber & a, const ConstructibleNumber & b) -> bool
    {
        return (a - b).sign() >= 0;
    }

    auto sign(const ConstructibleNumber & x) -> int
    {
        return x.sign();
    }

    auto sign(const Rational & x) -> int
    {
        return sgn(x);
    }

    // ------------------------------------------------------------------ merging

    namespace
    {
        // Image of an element of `source` (truncated to `depth` levels) under the
        // embedding that sends generator i to images[i].
        auto map_into(const FieldTower & target, const Radicands & source, int depth, span<const Rational> x,
            const vector<ConstructibleNumber> & images) -> ConstructibleNumber
        {
            if (depth == 0)
                return ConstructibleNumber(x[0]).lifted_to(target);
            size_t h = size_t{1} << (depth - 1);
            ConstructibleNumber lo = map_into(target, source, depth - 1, x.first(h), images);
            if (all_zero(x.subspan(h)))
                return lo;
            ConstructibleNumber hi = map_into(target, source, depth - 1, x.subspan(h), images);
            return lo + hi * images[depth - 1].lifted_to(target);
        }

        auto map_element(const ConstructibleNumber & x, const MergedTower & m) -> ConstructibleNumber
        {
            Radicands src = radicands_of(x.tower());
            return map_into(m.tower, src, x.tower().depth(), x.coefficients(), m.images);
        }
    }

    auto merge_towers(const FieldTower & first, const FieldTower & second) -> MergedTower
    {
        MergedTower m{ first, {} };
        int common = 0;
        while (common < first.depth() && common < second.depth()
            && first.raw_radicand(common) == second.raw_radicand(common))
            ++common;
        for (int i = 0; i < common; ++i)
            m.images.push_back(ConstructibleNumber::generator(first, i));

        Radicands src = radicands_of(second);
        for (int i = common; i < second.depth(); ++i) {
            ConstructibleNumber r = map_into(m.tower, src, i, src[i], m.images);
            if (auto root = try_sqrt(r))
                m.images.push_back(*root);
            else {
                m.tower = m.tower.extended(r);
                m.images.push_back(ConstructibleNumber::generator(m.tower, m.tower.depth() - 1));
            }
        }
        for (auto & img : m.images)
            img = img.lifted_to(m.tower);
        return m;
    }

    auto unify(const ConstructibleNumber & a, const ConstructibleNumber & b) -> pair<ConstructibleNumber, ConstructibleNumber>
    {
        if (a.tower().is_prefix_of(b.tower()))
            return { a.lifted_to(b.tower()), b };
        if (b.tower().is_prefix_of(a.tower()))
            return { a, b.lifted_to(a.tower()) };
        MergedTower m = merge_towers(a.tower(), b.tower());
        return { a.lifted_to(m.tower), map_element(b, m) };
    }

    auto unify_all(vector<ConstructibleNumber> & values) -> void
    {
        if (values.empty())
            return;
        FieldTower t = values.front().tower();
        for (const auto & v : values) {
            if (v.tower().is_prefix_of(t))
                continue;
            if (t.is_prefix_of(v.tower()))
                t = v.tower();
            else
                t = merge_towers(t, v.tower()).tower;
        }
        for (auto & v : values) {
            if (v.tower().is_prefix_of(t))
                v = v.lifted_to(t);
            else {
                MergedTower m = merge_towers(t, v.tower());
                if (! (m.tower == t))
                    throw ArithmeticError("tower unification did not converge");
                v = map_element(v, m);
            }
        }
    }

    auto try_sqrt(const ConstructibleNumber & x) -> optional<ConstructibleNumber>
    {
        auto root = square_root(radicands_of(x.tower()), x.tower().depth(), x.coefficients());
        if (! root)
            return std::nullopt;
        return ConstructibleNumber(x.tower(), std::move(*root));
    }

    auto sqrt_extend(const ConstructibleNumber & x) -> SqrtExtension
    {
        if (x.sign() < 0)
            throw ArithmeticError("square root of a negative number");
        if (auto root = try_sqrt(x))
            return { x.tower(), *root, false };
        FieldTower t = x.tower().extended(x);
        return { t, ConstructibleNumber::generator(t, t.depth() - 1), true };
    }

    // ---------------------------------------------------------------- intervals

    auto to_interval(const ConstructibleNumber & x, int precision) -> RationalInterval
    {
        if (precision < 0)
            throw std::invalid_argument("precision must be nonnegative");
        if (x.is_rational())
            return { x.coefficients()[0], x.coefficients()[0] };

        Radicands r = radicands_of(x.tower());
        Rational tight_width(Integer(1), Integer(1) << (precision + 5));
        RationalInterval tight;
        for (int bits = precision + 16;; bits += 32) {
            tight = interval_of(r, x.tower().depth(), x.coefficients(), bits);
            if (tight.width() <= tight_width)
                break;
        }

        // pad by 2^-(p+2) before snapping so that coarser intervals contain finer ones
        Rational margin(Integer(1), Integer(1) << (precision + 2));
        return { floor_to_grid(tight.lo - margin, precision + 5), ceil_to_grid(tight.hi + margin, precision + 5) };
    }

    // ------------------------------------------------------------ text formats

    auto parse_rational(string_view text) -> Rational
    {
        auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational: '" + string(text) + "'"); };
        string s;
        for (char c : text)
            if (! std::isspace(static_cast<unsigned char>(c)))
                s.push_back(c);
        if (s.empty())
            return fail();

        bool negative = false;
        size_t pos = 0;
        if (s[0] == '-' || s[0] == '+') {
            negative = s[0] == '-';
            pos = 1;
        }
        string body = s.substr(pos);
        if (body.empty())
            return fail();

        auto digits_only = [](const string & t) {
            return ! t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        };

        Rational out;
        if (auto slash = body.find('/'); slash != string::npos) {
            string num = body.substr(0, slash), den = body.substr(slash + 1);
            if (! digits_only(num) || ! digits_only(den))
                return fail();
            Integer d(den, 10);
            if (d == 0)
                throw ArithmeticError("zero denominator in '" + string(text) + "'");
            out = Rational(Integer(num, 10), d);
        }
        else if (auto dot = body.find('.'); dot != string::npos) {
            string whole = body.substr(0, dot), frac = body.substr(dot + 1);
            if ((whole.empty() && frac.empty()) || (! whole.empty() && ! digits_only(whole)) || (! frac.empty() && ! digits_only(frac)))
                return fail();
            Integer den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            Integer num = Integer(whole.empty() ? "0" : whole, 10) * den + Integer(frac.empty() ? "0" : frac, 10);
            out = Rational(num, den);
        }
        else {
            if (! digits_only(body))
                return fail();
            out = Rational(Integer(body, 10));
        }
        out.canonicalize();
        return negative ? Rational(-out) : out;
    }

    auto to_string(const Rational & q) -> string
    {
        return q.get_str();
    }

    namespace
    {
        auto expression_of(const FieldTower & t, int depth, span<const Rational> x) -> string
        {
            if (depth == 0)
                return to_string(x[0]);
            size_t h = size_t{1} << (depth - 1);
            auto a = x.first(h), b = x.subspan(h);
            bool a_zero = all_zero(a), b_zero = all_zero(b);
            if (b_zero)
                return expression_of(t, depth - 1, a);

            string root = "sqrt(" + expression_of(t, depth - 1, t.raw_radicand(depth - 1)) + ")";
            string term;
            if (all_zero(b.subspan(1))) {
                if (b[0] == 1)
                    term = root;
                else
                    term = to_string(b[0]) + "*" + root;
            }
            else
                term = "(" + expression_of(t, depth - 1, b) + ")*" + root;

            if (a_zero)
                return term;
            return expression_of(t, depth - 1, a) + " + " + term;
        }

        class ExpressionParser
        {
        public:
            explicit ExpressionParser(string_view text) :
                _text(text)
            {
            }

            auto parse() -> ConstructibleNumber
            {
                ConstructibleNumber v = expr();
                skip();
                if (_pos != _text.size())
                    error("trailing input");
                return v;
            }

        private:
            string_view _text;
            size_t _pos = 0;

            [[noreturn]] auto error(const string & what) const -> void
            {
                throw std::invalid_argument("expression parse error at " + std::to_string(_pos) + ": " + what + " in '" + string(_text) + "'");
            }

            auto skip() -> void
            {
                while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
            }

            auto peek() -> char
            {
                skip();
                return _pos < _text.size() ? _text[_pos] : '\0';
            }

            auto expr() -> ConstructibleNumber
            {
                ConstructibleNumber v = term();
                for (char c = peek(); c == '+' || c == '-'; c = peek()) {
                    ++_pos;
                    ConstructibleNumber rhs = term();
                    v = c == '+' ? v + rhs : v - rhs;
                }
                return v;
            }

            auto term() -> ConstructibleNumber
            {
                ConstructibleNumber v = factor();
                for (char c = peek(); c == '*' || c == '/'; c = peek()) {
                    ++_pos;
                    ConstructibleNumber rhs = factor();
                    v = c == '*' ? v * rhs : v / rhs;
                }
                return v;
            }

            auto factor() -> ConstructibleNumber
            {
                char c = peek();
                if (c == '-') {
                    ++_pos;
                    return -factor();
                }
                if (c == '+') {
                    ++_pos;
                    return factor();
                }
                if (c == '(') {
                    ++_pos;
                    ConstructibleNumber v = expr();
                    if (peek() != ')')
                        error("expected ')'");
                    ++_pos;
                    return v;
                }
                if (_text.substr(_pos, 4) == "sqrt") {
                    _pos += 4;
                    if (peek() != '(')
                        error("expected '(' after sqrt");
                    ++_pos;
                    ConstructibleNumber v = expr();
                    if (peek() != ')')
                        error("expected ')'");
                    ++_pos;
                    return sqrt_extend(v).root;
                }
                size_t start = _pos;
                while (_pos < _text.size() && (std::isdigit(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '.'))
                    ++_pos;
                if (start == _pos)
                    error("expected a number");
                return ConstructibleNumber(parse_rational(_text.substr(start, _pos - start)));
            }
        };
    }

    auto to_expression(const ConstructibleNumber & x) -> string
    {
        return expression_of(x.tower(), x.tower().depth(), x.coefficients());
    }

    auto parse_expression(string_view text) -> ConstructibleNumber
    {
        return ExpressionParser(text).parse();
    }
}
