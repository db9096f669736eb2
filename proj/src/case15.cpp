#include <udist/bounds.hpp>
#include <udist/case15.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace udist
{
    using std::string;
    using std::vector;

    auto derive_degree_profile(int u14, int m15, std::optional<int> min_degree) -> DegreeProfile
    {
        if (u14 < 1 || m15 < u14)
            throw std::invalid_argument("degree profile needs u14 >= 1 and m15 >= u14");
        DegreeProfile out;
        out.u14 = u14;
        out.m15 = m15;
        out.edge_cap = u_upper_schade(15, u14);
        out.forced_min_degree = m15 - u14;
        if (m15 > out.edge_cap) {
            out.rejected = true;
            out.reason = std::to_string(m15) + " edges exceed the density bound " + std::to_string(out.edge_cap)
                + " for 15 points";
            return out;
        }
        out.min_degree_used = min_degree.value_or(out.forced_min_degree);
        out.requires_deletion_argument = out.min_degree_used < out.forced_min_degree;

        // multisets of 15 degrees in [min, 14] summing to 2 m15
        std::map<int, int> current;
        std::function<void(int, int, int)> fill = [&](int degree, int left, int sum) {
            if (left == 0) {
                if (sum == 0)
                    out.profiles.push_back(current);
                return;
            }
            if (degree > 14 || sum < left * degree || sum > left * 14)
                return;
            for (int c = left; c >= 0; --c) {
                if (c * degree > sum)
                    continue;
                if (c > 0)
                    current[degree] = c;
                fill(degree + 1, left - c, sum - c * degree);
                current.erase(degree);
            }
        };
        fill(std::max(out.min_degree_used, 0), 15, 2 * m15);
        if (out.profiles.empty()) {
            out.rejected = true;
            out.reason = "no degree sequence with minimum degree " + std::to_string(out.min_degree_used);
        }
        return out;
    }

    namespace
    {
        auto half() -> ConstructibleNumber
        {
            return ConstructibleNumber(Rational(1, 2));
        }

        auto rot60() -> const ExactPoint &
        {
            static const ExactPoint r{ half(), sqrt_extend(ConstructibleNumber(3)).root * half() };
            return r;
        }

        auto rotate60(const ExactPoint & p, int steps) -> ExactPoint
        {
            ExactPoint q = p;
            for (int i = 0; i < steps; ++i)
                q = complex_mul(q, rot60());
            return q;
        }

        auto hex(int k) -> ExactPoint
        {
            return rotate60({ ConstructibleNumber(1), ConstructibleNumber(0) }, k);
        }

        auto unit(long a, long b, long c) -> ExactPoint
        {
            return { ConstructibleNumber(Rational(a, c)), ConstructibleNumber(Rational(b, c)) };
        }

        auto origin() -> ExactPoint
        {
            return { ConstructibleNumber(0), ConstructibleNumber(0) };
        }

        auto other_common(const ExactPoint & a, const ExactPoint & b, const ExactPoint & known) -> ExactPoint
        {
            auto c = common_unit_neighbors(a, b);
            if (c.count != 2)
                throw std::logic_error("expected two common unit neighbours");
            if (c.witnesses[0] == known)
                return c.witnesses[1];
            if (c.witnesses[1] == known)
                return c.witnesses[0];
            throw std::logic_error("known common neighbour not found");
        }

        auto compare(const ConstructibleNumber & observed, CaseFact::Relation rel, const ConstructibleNumber & target)
            -> bool
        {
            int s = sign(observed - target);
            switch (rel) {
            case CaseFact::Relation::equal:
                return s == 0;
            case CaseFact::Relation::greater:
                return s > 0;
            case CaseFact::Relation::less:
                return s < 0;
            case CaseFact::Relation::not_equal:
                return s != 0;
            }
            return false;
        }

        auto count_common_outside(const ExactPoint & a, const ExactPoint & b, const vector<ExactPoint> & allowed) -> int
        {
            int outside = 0;
            for (const auto & w : common_unit_neighbors(a, b).witnesses)
                if (std::none_of(allowed.begin(), allowed.end(), [&](const ExactPoint & p) { return p == w; }))
                    ++outside;
            return outside;
        }

        auto evaluate(const CaseCertificate & cert, const CaseFact & f) -> ConstructibleNumber
        {
            auto p = [&](size_t i) -> const ExactPoint & { return cert.point(f.points.at(i)); };
            switch (f.kind) {
            case CaseFact::Kind::squared_distance:
                return squared_distance(p(0), p(1));
            case CaseFact::Kind::common_neighbors:
                return ConstructibleNumber(common_unit_neighbors(p(0), p(1)).count);
            case CaseFact::Kind::common_outside: {
                vector<ExactPoint> allowed;
                for (size_t i = 2; i < f.points.size(); ++i)
                    allowed.push_back(p(i));
                return ConstructibleNumber(count_common_outside(p(0), p(1), allowed));
            }
            case CaseFact::Kind::diagonal_sum:
                return squared_distance(p(0), p(2)) + squared_distance(p(1), p(3));
            case CaseFact::Kind::integer:
                return f.observed;
            }
            return f.observed;
        }

        auto unit_pair_count(const CaseCertificate & cert, const vector<string> & names) -> int
        {
            int count = 0;
            for (size_t i = 0; i < names.size(); ++i)
                for (size_t j = i + 1; j < names.size(); ++j)
                    if (squared_distance(cert.point(names[i]), cert.point(names[j])) == ConstructibleNumber(1))
                        ++count;
            return count;
        }

        using Rel = CaseFact::Relation;
        using Kind = CaseFact::Kind;

        class Builder
        {
        public:
            explicit Builder(string label) { cert.label = std::move(label); }

            auto suffix(const string & s) -> void { _suffix = s; }

            /// Shared points keep their name; per-sample points get the sample suffix.
            auto add(const string & name, const ExactPoint & p, bool shared = false) -> string
            {
                bool suffixed = ! _suffix.empty() && name.size() > _suffix.size()
                    && name.compare(name.size() - _suffix.size(), _suffix.size(), _suffix) == 0;
                string full = shared || suffixed ? name : name + _suffix;
                for (const auto & [n, q] : cert.coordinates)
                    if (n == full) {
                        if (! (q == p))
                            throw std::logic_error("point " + full + " redefined");
                        return full;
                    }
                cert.coordinates.emplace_back(full, p);
                return full;
            }

            auto fact(Kind kind, const string & description, vector<string> points, Rel rel,
                ConstructibleNumber target) -> void
            {
                CaseFact f;
                f.kind = kind;
                f.description = description + (_suffix.empty() ? "" : " [offset " + _suffix.substr(1) + "]");
                f.points = std::move(points);
                f.relation = rel;
                f.target = std::move(target);
                f.observed = evaluate(cert, f);
                f.verified = compare(f.observed, f.relation, f.target);
                cert.facts.push_back(std::move(f));
            }

            auto dist2(const string & d, const string & a, const string & b, Rel rel, long target) -> void
            {
                fact(Kind::squared_distance, d, { a, b }, rel, ConstructibleNumber(target));
            }

            auto outside(const string & d, vector<string> points, long target = 0) -> void
            {
                fact(Kind::common_outside, d, std::move(points), Rel::equal, ConstructibleNumber(target));
            }

            auto integer(const string & d, long observed, Rel rel, long target) -> void
            {
                CaseFact f;
                f.kind = Kind::integer;
                f.description = d;
                f.relation = rel;
                f.observed = ConstructibleNumber(observed);
                f.target = ConstructibleNumber(target);
                f.verified = compare(f.observed, rel, f.target);
                cert.facts.push_back(std::move(f));
            }

            /// Unit pairs among the six neighbours equal the intended edge count.
            auto neighbourhood(const vector<string> & names, int edges) -> void
            {
                CaseFact f;
                f.kind = Kind::integer;
                f.description = "unit pairs among the six neighbours of o" + (_suffix.empty() ? "" : " [offset " + _suffix.substr(1) + "]");
                f.relation = Rel::equal;
                f.observed = ConstructibleNumber(unit_pair_count(cert, names));
                f.target = ConstructibleNumber(edges);
                f.verified = compare(f.observed, f.relation, f.target);
                cert.facts.push_back(std::move(f));
            }

            auto finish() -> CaseCertificate
            {
                cert.verdict = ! cert.facts.empty()
                    && std::all_of(cert.facts.begin(), cert.facts.end(), [](const CaseFact & f) { return f.verified; });
                return std::move(cert);
            }

            CaseCertificate cert;

        private:
            string _suffix;
        };

        auto name(const string & base, int i) -> string
        {
            return base + std::to_string(i);
        }
    }

    auto CaseCertificate::point(const string & name) const -> const ExactPoint &
    {
        for (const auto & [n, p] : coordinates)
            if (n == name)
                return p;
        throw std::out_of_range("certificate has no point " + name);
    }

    auto recheck_fact(const CaseCertificate & cert, const CaseFact & fact) -> bool
    {
        auto observed = evaluate(cert, fact);
        return observed == fact.observed && compare(observed, fact.relation, fact.target);
    }

    auto certify_case_c6() -> CaseCertificate
    {
        Builder b("C6");
        auto o = b.add("o", origin(), true);
        vector<string> N;
        for (int k = 1; k <= 6; ++k)
            N.push_back(b.add(name("v", k), hex(k - 1), true));
        auto v = [&](int k) { return N[k - 1]; };

        b.neighbourhood(N, 6);
        b.integer("edges from N to R: 30 - 6 - 2*6", 30 - 6 - 2 * 6, Rel::equal, 12);
        b.integer("edges from N to R exceed |R| = 8, so some r in R has two neighbours in N", 12, Rel::greater, 8);

        vector<string> o_and_n = { o };
        o_and_n.insert(o_and_n.end(), N.begin(), N.end());
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j) {
                if (j == i + 1 || (i == 1 && j == 6))
                    continue;
                vector<string> pts = { v(i), v(j) };
                pts.insert(pts.end(), o_and_n.begin(), o_and_n.end());
                b.outside("non-adjacent " + v(i) + "," + v(j) + " have no common neighbour in R", pts);
            }

        auto r = b.add("r", other_common(b.cert.point(v(1)), b.cert.point(v(2)), origin()), true);
        b.dist2("|r - v1| = 1", r, v(1), Rel::equal, 1);
        b.dist2("|r - v2| = 1", r, v(2), Rel::equal, 1);
        b.dist2("|r - v3|^2 = 4", r, v(3), Rel::equal, 4);
        b.dist2("|r - v6|^2 = 4", r, v(6), Rel::equal, 4);
        b.dist2("|r - v4|^2 > 4", r, v(4), Rel::greater, 4);
        b.dist2("|r - v5|^2 > 4", r, v(5), Rel::greater, 4);
        b.outside("r and v3 share only v2", { r, v(3), v(2) });
        b.outside("r and v6 share only v1", { r, v(6), v(1) });
        b.fact(Kind::common_neighbors, "r and v4 have no common unit neighbour", { r, v(4) }, Rel::equal, ConstructibleNumber(0));
        b.fact(Kind::common_neighbors, "r and v5 have no common unit neighbour", { r, v(5) }, Rel::equal, ConstructibleNumber(0));

        int to_r = 4 * (5 - 1 - 2);
        b.integer("edges from v3..v6 to R: 4 * (5 - 1 - 2)", to_r, Rel::equal, 8);
        b.integer("R vertices shared by two of v3..v6: one per adjacent pair", 3, Rel::equal, 3);
        b.integer("distinct R neighbours of v3..v6: at least 8 - 3", to_r - 3, Rel::equal, 5);
        int room = 8 - 1 - (to_r - 3);
        b.integer("R vertices left as neighbours of r: 8 - 1 - 5", room, Rel::equal, 2);
        b.integer("degree of r at most 2 + 2, below 5", 2 + room, Rel::less, 5);

        b.cert.prose_steps = {
            "choice of the cherry on v1, v2 is up to rotation of the hexagon",
            "at most one common neighbour in R per pair of N (K_{2,3} with o)",
            "R neighbours of v3..v6 would be common neighbours of r and v3..v6",
        };
        return b.finish();
    }

    namespace
    {
        auto p5p1_offsets() -> vector<ExactPoint>
        {
            return { unit(3, -4, 5), unit(4, -3, 5), unit(-3, -4, 5) };
        }

        auto p4p2_offsets() -> vector<ExactPoint>
        {
            return { unit(3, -4, 5), unit(5, -12, 13), unit(-8, -15, 17) };
        }

        auto p3p3_offsets() -> vector<ExactPoint>
        {
            return { unit(-3, -4, 5), unit(-4, -3, 5), unit(-12, -5, 13) };
        }
    }

    auto certify_case_p5p1() -> CaseCertificate
    {
        Builder b("P5P1");
        auto o = b.add("o", origin(), true);
        vector<string> V;
        for (int k = 1; k <= 5; ++k)
            V.push_back(b.add(name("v", k), hex(k - 1), true));
        int sample = 0;
        for (const auto & offset : p5p1_offsets()) {
            b.suffix("@" + std::to_string(++sample));
            auto u = b.add("u", offset);
            vector<string> N = V;
            N.push_back(u);
            b.neighbourhood(N, 4);
            for (int k = 0; k + 1 < 5; ++k)
                b.dist2("path edge " + V[k] + V[k + 1], V[k], V[k + 1], Rel::equal, 1);

            b.outside("v1 and v3 share only o and v2", { V[0], V[2], o, V[1] });
            b.dist2("|v1 - v4|^2 = 4", V[0], V[3], Rel::equal, 4);
            b.outside("v1 and v4 share only o", { V[0], V[3], o });
            auto p = b.add("p15", other_common(b.cert.point(V[0]), b.cert.point(V[4]), origin()));
            b.dist2("second common neighbour of v1, v5 is adjacent to o", o, p, Rel::equal, 1);
            b.dist2("and is not the sixth neighbour", p, u, Rel::not_equal, 0);
        }
        b.suffix("");
        b.integer("cherries needed at v1: 5 - 1 - 1", 5 - 1 - 1, Rel::equal, 3);
        b.integer("cherry partners available to v1 (v2 and u)", 2, Rel::less, 3);
        b.cert.offsets_sampled = sample;
        b.cert.prose_steps = {
            "each R neighbour of v1 has exactly one other neighbour in N when |E(G[N])| = 4",
            "a seventh neighbour of o contradicts deg(o) = 6",
            "the isolated vertex is checked at sampled exact offsets, not symbolically",
        };
        return b.finish();
    }

    auto certify_case_p4p2() -> CaseCertificate
    {
        Builder b("P4P2");
        auto o = b.add("o", origin(), true);
        vector<string> V;
        for (int k = 1; k <= 4; ++k)
            V.push_back(b.add(name("v", k), hex(k - 1), true));
        b.dist2("|v1 - v3|^2 = 3", V[0], V[2], Rel::equal, 3);
        b.outside("v1 and v3 share only o and v2", { V[0], V[2], o, V[1] });
        b.outside("v4 and v2 share only o and v3", { V[3], V[1], o, V[2] });
        b.dist2("|v1 - v4|^2 = 4", V[0], V[3], Rel::equal, 4);
        b.outside("v1 and v4 share only o", { V[0], V[3], o });

        int sample = 0;
        for (const auto & offset : p4p2_offsets()) {
            b.suffix("@" + std::to_string(++sample));
            auto u1 = b.add("u1", offset);
            auto u2 = b.add("u2", rotate60(offset, 1));
            vector<string> N = V;
            N.push_back(u1);
            N.push_back(u2);
            b.neighbourhood(N, 4);
            for (int k = 0; k + 1 < 4; ++k)
                b.dist2("path edge " + V[k] + V[k + 1], V[k], V[k + 1], Rel::equal, 1);
            b.dist2("path edge u1u2", u1, u2, Rel::equal, 1);

            auto P = [&](const string & n) { return b.cert.point(n); };
            auto r = b.add("r", other_common(P(V[0]), P(V[1]), origin()));
            vector<string> others = {
                b.add("c_v1u1", other_common(P(V[0]), P(u1), origin())),
                b.add("c_v1u2", other_common(P(V[0]), P(u2), origin())),
                b.add("c_v4v3", other_common(P(V[3]), P(V[2]), origin())),
                b.add("c_v4u1", other_common(P(V[3]), P(u1), origin())),
                b.add("c_v4u2", other_common(P(V[3]), P(u2), origin())),
            };
            for (const auto & c : others)
                b.dist2("r differs from " + c, r, c, Rel::not_equal, 0);
            for (size_t i = 2; i < others.size(); ++i)
                b.dist2("neighbour " + others[i] + " of v4 is too far from r", r, others[i], Rel::greater, 1);
            auto q = b.add("q", other_common(P(V[0]), P(r), P(V[1])));
            for (const auto & x : { V[2], V[3], u1, u2 })
                b.dist2("second common neighbour q of v1, r is not unit from " + x, q, x, Rel::not_equal, 1);
            for (size_t i = 0; i < 2; ++i)
                b.dist2("r is not unit from " + others[i], r, others[i], Rel::not_equal, 1);
        }
        b.suffix("");
        b.integer("cherries at v1: 5 - 1 - 1", 5 - 1 - 1, Rel::equal, 3);
        b.integer("R vertices left as neighbours of r: 8 - 1 - 5", 8 - 1 - 5, Rel::equal, 2);
        b.integer("degree of r at most 2 + 2, below 5", 2 + 2, Rel::less, 5);
        b.cert.offsets_sampled = sample;
        b.cert.prose_steps = {
            "v1 forms cherries with v2, u1, u2 and v4 with v3, u1, u2 (one cherry per pair)",
            "the P2 offset is checked at sampled exact angles, not symbolically",
        };
        return b.finish();
    }

    auto certify_case_p3p3() -> CaseCertificate
    {
        Builder b("P3P3");
        auto o = b.add("o", origin(), true);
        int sample = 0;
        for (const auto & offset : p3p3_offsets()) {
            b.suffix("@" + std::to_string(++sample));
            vector<string> V, U;
            for (int k = 1; k <= 3; ++k)
                V.push_back(b.add(name("v", k), hex(k - 1), true));
            for (int k = 1; k <= 3; ++k)
                U.push_back(b.add(name("u", k), rotate60(offset, k - 1)));
            vector<string> N = V;
            N.insert(N.end(), U.begin(), U.end());
            b.neighbourhood(N, 4);
            for (const auto * chain : { &V, &U }) {
                const auto & C = *chain;
                b.dist2("path edge " + C[0] + C[1], C[0], C[1], Rel::equal, 1);
                b.dist2("path edge " + C[1] + C[2], C[1], C[2], Rel::equal, 1);
                b.outside(C[0] + " and " + C[2] + " share only o and " + C[1], { C[0], C[2], o, C[1] });
            }

            auto P = [&](const string & n) { return b.cert.point(n); };
            // v12, v23, u12, u23: neighbours only of one another
            for (const auto * chain : { &V, &U }) {
                const auto & C = *chain;
                for (int first : { 0, 1 }) {
                    const string & a = C[first];
                    const string & c = C[first + 1];
                    const string & third = C[first == 0 ? 2 : 0];
                    string label = C[0].substr(0, 1) + std::to_string(first + 1) + std::to_string(first + 2);
                    auto x = b.add(label, P(a) + P(c));
                    b.dist2(label + " is unit from " + a, x, a, Rel::equal, 1);
                    b.dist2(label + " is unit from " + c, x, c, Rel::equal, 1);
                    b.dist2("|" + label + " - " + third + "|^2 = 4", x, third, Rel::equal, 4);
                    b.outside(label + " and " + third + " share only " + C[1], { x, third, C[1] });
                    for (const auto & [p, partner] : { std::pair{ a, c }, std::pair{ c, a } }) {
                        auto t = b.add("2" + p, P(p) * ConstructibleNumber(2));
                        b.outside("common neighbours of " + p + " and " + label + " are " + partner + " and 2" + p,
                            { p, x, partner, t });
                        b.outside("2" + p + " meets the circle about o only at " + p, { o, t, p });
                    }
                }
            }

            auto w = [&](int i, int j) { return "w" + std::to_string(i) + std::to_string(j); };
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    auto x = b.add(w(i, j), P(V[i - 1]) + P(U[j - 1]));
                    b.dist2(w(i, j) + " is unit from " + V[i - 1], x, V[i - 1], Rel::equal, 1);
                    b.dist2(w(i, j) + " is unit from " + U[j - 1], x, U[j - 1], Rel::equal, 1);
                }
            auto W = [&](int i, int j) { return w(i, j) + "@" + std::to_string(sample); };

            vector<string> cycle = { W(1, 1), W(1, 2), W(1, 3), W(2, 3), W(3, 3), W(3, 2), W(3, 1), W(2, 1) };
            for (size_t k = 0; k < cycle.size(); ++k)
                b.dist2("cycle step " + cycle[k] + " -> " + cycle[(k + 1) % cycle.size()], cycle[k],
                    cycle[(k + 1) % cycle.size()], Rel::equal, 1);
            vector<string> rhombus = { W(1, 1), W(1, 3), W(3, 3), W(3, 1) };
            for (size_t k = 0; k < 4; ++k)
                b.dist2("rhombus side " + rhombus[k] + rhombus[(k + 1) % 4] + " has squared length 3", rhombus[k],
                    rhombus[(k + 1) % 4], Rel::equal, 3);
            b.fact(Kind::diagonal_sum, "rhombus diagonals satisfy d1^2 + d2^2 = 12", rhombus, Rel::equal,
                ConstructibleNumber(12));

            b.dist2("K_{2,3}: w13 unit from w23", W(1, 3), W(2, 3), Rel::equal, 1);
            b.dist2("K_{2,3}: w13 unit from u3", W(1, 3), U[2], Rel::equal, 1);
            b.dist2("K_{2,3}: w33 unit from w23", W(3, 3), W(2, 3), Rel::equal, 1);
            b.dist2("K_{2,3}: w33 unit from u3", W(3, 3), U[2], Rel::equal, 1);
            b.dist2("K_{2,3}: w33 unit from w32", W(3, 3), W(3, 2), Rel::equal, 1);
            b.fact(Kind::common_neighbors, "w13 and w33 have two common unit neighbours", { W(1, 3), W(3, 3) },
                Rel::equal, ConstructibleNumber(2));
            b.outside("they are w23 and u3, so the diagonal w13-w32 closes a K_{2,3}", { W(1, 3), W(3, 3), W(2, 3), U[2] });
            b.dist2("w13 is not unit from w32", W(1, 3), W(3, 2), Rel::not_equal, 1);
        }
        b.suffix("");
        b.integer("R-degree of v2: 5 - 1 - 2", 5 - 1 - 2, Rel::equal, 2);
        b.integer("R-degree of v1: 5 - 1 - 1", 5 - 1 - 1, Rel::equal, 3);
        b.integer("edges from N to R: 4*3 + 2*2 = 8*2", 4 * 3 + 2 * 2, Rel::equal, 16);
        b.integer("w points in R: 9 minus w22", 9 - 1, Rel::equal, 8);
        b.integer("both rhombus diagonals unit would give 1 + 1", 2, Rel::not_equal, 12);
        b.cert.offsets_sampled = sample;
        b.cert.prose_steps = {
            "if any of v12, v23, u12, u23 lies in R they are adjacent only to each other, forcing a K4",
            "w22 is the missing point because v2 and u2 have R-degree 2",
            "the remaining R-edges form a perfect matching of diagonals of the cycle",
            "choosing w13-w32 among the 3rd and 4th neighbours is up to symmetry",
            "the second chain offset is checked at sampled exact angles, not symbolically",
        };
        return b.finish();
    }

    auto case_labels() -> vector<string>
    {
        return { "C6", "P5P1", "P4P2", "P3P3" };
    }

    auto certify_case(const string & label) -> CaseCertificate
    {
        string key;
        for (char c : label)
            key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (key == "C6")
            return certify_case_c6();
        if (key == "P5P1")
            return certify_case_p5p1();
        if (key == "P4P2")
            return certify_case_p4p2();
        if (key == "P3P3")
            return certify_case_p3p3();
        throw std::invalid_argument("unknown case '" + label + "' (expected c6, p5p1, p4p2 or p3p3)");
    }

    auto graph_type_label(const Graph & g) -> string
    {
        int n = g.size();
        vector<bool> seen(n, false);
        vector<std::pair<int, int>> cycles, paths, other;  // (-size, size) for sorting
        for (int s = 0; s < n; ++s) {
            if (seen[s])
                continue;
            vector<int> stack = { s }, comp;
            seen[s] = true;
            while (! stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                comp.push_back(x);
                for (int y : g.neighbours(x))
                    if (! seen[y]) {
                        seen[y] = true;
                        stack.push_back(y);
                    }
            }
            int degree_sum = 0, max_degree = 0;
            for (int x : comp) {
                degree_sum += g.degree(x);
                max_degree = std::max(max_degree, g.degree(x));
            }
            int k = static_cast<int>(comp.size()), edges = degree_sum / 2;
            if (max_degree <= 2 && edges == k && k >= 3)
                cycles.emplace_back(-k, k);
            else if (max_degree <= 2 && edges == k - 1)
                paths.emplace_back(-k, k);
            else
                other.emplace_back(-k, k);
        }
        std::sort(cycles.begin(), cycles.end());
        std::sort(paths.begin(), paths.end());
        std::sort(other.begin(), other.end());
        string out;
        auto append = [&](char tag, const vector<std::pair<int, int>> & parts) {
            for (const auto & part : parts) {
                if (! out.empty())
                    out += '+';
                out += tag + std::to_string(part.second);
            }
        };
        append('C', cycles);
        append('P', paths);
        append('X', other);
        return out;
    }

    auto enumerate_gn_types() -> GNEnumeration
    {
        GNEnumeration out;
        // generic rotations for the second chain: rational unit vectors, never a multiple of 60 degrees away
        vector<ExactPoint> shifts = { unit(3, -4, 5), unit(-8, -15, 17) };

        vector<vector<int>> partitions;
        vector<int> cur;
        std::function<void(int, int)> split = [&](int left, int largest) {
            if (left == 0) {
                partitions.push_back(cur);
                return;
            }
            for (int part = std::min(left, largest); part >= 1; --part) {
                cur.push_back(part);
                split(left - part, part);
                cur.pop_back();
            }
        };
        split(6, 6);

        for (const auto & parts : partitions) {
            int open_edges = 0;
            for (int p : parts)
                open_edges += p - 1;
            string shape;
            for (int p : parts)
                shape += (shape.empty() ? "" : "+") + std::string("P") + std::to_string(p);

            GNWitness wit;
            wit.chain_lengths = parts;
            for (size_t c = 0; c < parts.size(); ++c) {
                ExactPoint start = c == 0 ? hex(0) : (c - 1 < shifts.size() ? shifts[c - 1] : ExactPoint{});
                if (c > shifts.size())
                    break;
                for (int k = 0; k < parts[c]; ++k)
                    wit.points.push_back(rotate60(start, k));
            }
            if (wit.points.size() != 6) {
                out.rejected.push_back(shape + ": " + std::to_string(open_edges) + " edges, fewer than 4");
                continue;
            }
            auto g = unit_distance_graph(wit.points);
            wit.edges = g.graph.edges();
            wit.label = graph_type_label(g.graph);
            wit.closed = wit.label.rfind("C", 0) == 0;
            int edges = g.m();
            if (edges < 4) {
                out.rejected.push_back(shape + ": " + std::to_string(edges) + " edges, fewer than 4");
                continue;
            }
            if (parts.size() == 1 && open_edges == 5)
                out.rejected.push_back("P6: a chain of six points closes, giving " + wit.label + " with "
                    + std::to_string(edges) + " edges");
            out.types_by_edge_count[edges] += 1;
            out.types.push_back(std::move(wit));
        }
        for (int e = 4; e <= 6; ++e)
            out.types_by_edge_count.try_emplace(e, 0);
        return out;
    }

    auto brute_force_gn_types() -> std::set<string>
    {
        vector<Edge> pairs;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                pairs.emplace_back(i, j);
        std::set<string> out;
        for (int mask = 0; mask < (1 << 15); ++mask) {
            int count = __builtin_popcount(static_cast<unsigned>(mask));
            if (count < 4 || count > 6)
                continue;
            int degree[6] = {};
            vector<Edge> edges;
            for (int b = 0; b < 15; ++b)
                if (mask >> b & 1) {
                    edges.push_back(pairs[b]);
                    ++degree[pairs[b].first];
                    ++degree[pairs[b].second];
                }
            if (*std::max_element(degree, degree + 6) > 2)
                continue;
            auto label = graph_type_label(Graph(6, edges));
            bool realizable = true;
            size_t pos = 0;
            while (pos < label.size()) {
                size_t end = label.find('+', pos);
                string part = label.substr(pos, end == string::npos ? string::npos : end - pos);
                int k = std::stoi(part.substr(1));
                if ((part[0] == 'C' && k != 6) || (part[0] == 'P' && k > 5) || part[0] == 'X')
                    realizable = false;
                pos = end == string::npos ? label.size() : end + 1;
            }
            if (realizable)
                out.insert(label);
        }
        return out;
    }

    auto ObservationChain::ok() const -> bool
    {
        return std::all_of(steps.begin(), steps.end(), [](const ChainStep & s) { return s.ok(); });
    }

    auto ObservationChain::value(const string & label) const -> std::int64_t
    {
        for (const auto & s : steps)
            if (s.label == label)
                return s.value;
        throw std::out_of_range("no chain step " + label);
    }

    auto verify_observation_chain() -> ObservationChain
    {
        ObservationChain out;
        auto step = [&](const string & label, std::int64_t value, std::int64_t expected) {
            out.steps.push_back({ label, value, expected });
        };

        auto profile = derive_degree_profile(33, 38);
        std::int64_t degree_sum = 0;
        if (profile.profiles.size() == 1)
            for (auto [d, c] : profile.profiles[0])
                degree_sum += static_cast<std::int64_t>(d) * c;
        step("edge cap for 15 points", profile.edge_cap, 38);
        step("degree sum", degree_sum, 76);

        // geometric input: two distinct points at distance below 2 have exactly two common unit neighbours
        auto o = origin();
        int cap = 0;
        for (const auto & p : { hex(0), hex(1) * ConstructibleNumber(Rational(3, 2)), unit(3, 4, 5) })
            cap = std::max(cap, common_unit_neighbors(o, p).count);
        step("common unit neighbours of two points", cap, 2);

        std::int64_t r_size = 15 - 1 - 6;
        step("|R|", r_size, 8);
        std::int64_t obs3 = r_size * cap;
        step("edges between R and N at most", obs3, 16);
        std::int64_t n_degree = 6 * 5;
        step("degree sum over N", n_degree, 30);
        step("(30 - 6 - 16) is even", (n_degree - 6 - obs3) % 2, 0);
        step("edges inside N at least", (n_degree - 6 - obs3) / 2, 4);
        for (int e = 4; e <= 6; ++e)
            step("edges between R and N when |E(G[N])| = " + std::to_string(e), n_degree - 6 - 2 * e, 30 - 6 - 2 * e);
        step("R vertices with two N-neighbours when |E(G[N])| = 4", (n_degree - 6 - 2 * 4) / cap, r_size);

        out.geometric_inputs = {
            "at most two common unit neighbours per pair of points (common_unit_neighbors), so no K_{2,3}",
            "points of N lie on the unit circle about o, so G[N] has maximum degree 2 (enumerate_gn_types)",
        };
        out.prose_steps = {
            "every unit pair is an edge, else 39 edges on 15 points",
            "a vertex of degree at most 4 would leave 34 edges on 14 points",
        };
        return out;
    }
}
