#include <udist/bounds.hpp>
#include <udist/constructions.hpp>
#include <udist/udg.hpp>

#include <algorithm>
#include <filesystem>
#include <sstream>

using std::int64_t;
using std::optional;
using std::string;
using std::vector;

namespace udist
{
    namespace
    {
        auto rat(int64_t p, int64_t q = 1) -> Rational
        {
            Rational r{ Integer(static_cast<long>(p)), Integer(static_cast<long>(q)) };
            r.canonicalize();
            return r;
        }

        auto big(int64_t v) -> Integer
        {
            return Integer(static_cast<long>(v));
        }

        auto clamp0(const Rational & v) -> Rational
        {
            return v < 0 ? Rational(0) : v;
        }

        auto cube(const Rational & v) -> Rational
        {
            return v * v * v;
        }

        auto evaluation(const string & id, vector<std::pair<string, int64_t>> inputs) -> BoundEvaluation
        {
            BoundEvaluation e;
            e.formula_id = id;
            e.inputs = std::move(inputs);
            return e;
        }

        auto not_applicable(BoundEvaluation e, const string & reason) -> BoundEvaluation
        {
            e.applicable = false;
            e.reason = reason;
            e.value.reset();
            return e;
        }

        auto with_value(BoundEvaluation e, const Rational & v) -> BoundEvaluation
        {
            e.applicable = true;
            e.value = v;
            return e;
        }

        auto floor_cbrt(const Integer & v) -> Integer
        {
            Integer r;
            mpz_root(r.get_mpz_t(), v.get_mpz_t(), 3);
            return r;
        }

        auto to_int64(const Integer & v) -> int64_t
        {
            if (! v.fits_slong_p())
                throw std::overflow_error("value does not fit in 64 bits");
            return v.get_si();
        }

        auto pairs_cap(int64_t n) -> int64_t
        {
            return choose2(n);
        }
    }

    auto planar_excess(int64_t n, int64_t m) -> Rational
    {
        return clamp0(rat(m - (3 * n - 6)));
    }

    auto ackerman_value(int64_t n, int64_t m) -> Rational
    {
        Rational strong = cube(rat(m)) / rat(29 * n * n);
        if (20 * m >= 139 * n)
            return strong;
        return clamp0(strong - rat(35 * n, 29));
    }

    auto cr_planar_excess(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("planar_excess", { { "n", n }, { "m", m } });
        if (n < 3)
            return not_applicable(e, "needs n >= 3");
        return with_value(e, planar_excess(n, m));
    }

    auto cr_ackerman(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("ackerman", { { "n", n }, { "m", m } });
        if (n < 1 || m < 0)
            return not_applicable(e, "needs n >= 1 and m >= 0");
        Rational strong = cube(rat(m)) / rat(29 * n * n);
        Rational weak = clamp0(strong - rat(35 * n, 29));
        e.details.emplace_back("weak", weak);
        if (20 * m >= 139 * n) {
            e.details.emplace_back("strong", strong);
            e.reason = "m >= 6.95n: strong form";
            return with_value(e, strong);
        }
        e.reason = "m < 6.95n: weak form";
        return with_value(e, weak);
    }

    auto cr_multi_convex(int64_t n, int64_t m, int64_t k, const BaseFormula & base, const string & base_id)
        -> BoundEvaluation
    {
        auto e = evaluation("multi_convex", { { "n", n }, { "m", m }, { "k", k } });
        e.reason = "base " + base_id;
        if (k < 1 || m < 0)
            return not_applicable(e, "needs k >= 1 and m >= 0");
        int64_t q = m / k;
        Rational frac = rat(m % k, k);
        Rational lo = base(n, q);
        Rational hi = frac == 0 ? lo : base(n, q + 1);
        e.details.emplace_back("base_floor", lo);
        e.details.emplace_back("base_ceil", hi);
        e.details.emplace_back("fraction", frac);
        return with_value(e, rat(k * k) * ((1 - frac) * lo + frac * hi));
    }

    auto cr_multi2_even(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("multi2_even", { { "n", n }, { "m", m } });
        if (n < 3)
            return not_applicable(e, "needs n >= 3");
        if (m % 2 != 0)
            return not_applicable(e, "m is odd");
        return with_value(e, clamp0(rat(2 * m - 12 * n + 24)));
    }

    auto cr_multi_general(int64_t n, int64_t m, int64_t k) -> BoundEvaluation
    {
        auto e = evaluation("multi_general", { { "n", n }, { "m", m }, { "k", k } });
        if (n < 1 || k < 1)
            return not_applicable(e, "needs n >= 1 and k >= 1");
        int64_t q = m / k;
        if (20 * q < 139 * n)
            return not_applicable(e, "floor(m/k) < 6.95n");
        Rational simple = cube(rat(m)) / rat(29 * k * n * n);
        Rational frac = rat(m % k, k);
        Rational precise = rat(k * k) * ((1 - frac) * cube(rat(q)) + frac * cube(rat(q + 1))) / rat(29 * n * n);
        e.details.emplace_back("simple", simple);
        e.details.emplace_back("precise", precise);
        return with_value(e, precise);
    }

    auto cr_multi2_large(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("multi2_large", { { "n", n }, { "m", m } });
        if (n < 1)
            return not_applicable(e, "needs n >= 1");
        if (m % 2 != 0)
            return not_applicable(e, "m is odd");
        if (10 * m < 139 * n)
            return not_applicable(e, "m < 13.9n");
        return with_value(e, cube(rat(m)) / rat(58 * n * n));
    }

    auto cr_nonhomotopic_ptt(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("nonhomotopic_ptt", { { "n", n }, { "m", m } });
        if (n < 1 || m <= 4 * n)
            return not_applicable(e, "needs m > 4n");
        return with_value(e, rat(m * m, 24 * n));
    }

    auto cr_nonhomotopic_improved(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("nonhomotopic_improved", { { "n", n }, { "m", m } });
        if (n < 2)
            return not_applicable(e, "needs n >= 2");
        return with_value(e, clamp0(rat(m * m, 6 * n - 6) - rat(m, 2)));
    }

    auto cr_harmonic_simple(int64_t n, int64_t m) -> BoundEvaluation
    {
        auto e = evaluation("harmonic_simple", { { "n", n }, { "m", m } });
        if (n < 3)
            return not_applicable(e, "needs n >= 3");
        return with_value(e, clamp0(rat(m * m, 6 * n - 12) - rat(m, 2)));
    }

    auto u_upper_theorem(int64_t n) -> int64_t
    {
        if (n < 1)
            throw std::invalid_argument("u_upper_theorem needs n >= 1");
        Integer n4 = big(n) * big(n) * big(n) * big(n);
        return to_int64(floor_cbrt(Integer(29 * n4 / 4)));
    }

    auto u_upper_jensen(int64_t n) -> int64_t
    {
        if (n < 1)
            throw std::invalid_argument("u_upper_jensen needs n >= 1");
        Integer N = big(n);
        Integer rhs = N * N * N - N * N;
        Integer disc = N * N + 8 * rhs, root;
        mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
        Integer m = (N + root) / 4 + 1;
        while (2 * m * m - m * N > rhs)
            --m;
        while (2 * (m + 1) * (m + 1) - (m + 1) * N <= rhs)
            ++m;
        return std::min(to_int64(m), pairs_cap(n));
    }

    auto u_upper_proposition(int64_t n) -> int64_t
    {
        if (n < 3)
            throw std::invalid_argument("u_upper_proposition needs n >= 3");
        int64_t budget = n * n - n, cap = pairs_cap(n);
        auto lhs = [&](int64_t m) { return 4 * m - 12 * n + 24 + jensen_degree_floor(n, m); };
        int64_t m = 0, prev = lhs(0);
        while (m < cap) {
            int64_t next = lhs(m + 1);
            if (next < prev)
                throw std::logic_error("proposition left side decreased at n=" + std::to_string(n));
            if (next > budget)
                break;
            prev = next;
            ++m;
        }
        return m;
    }

    auto u_upper_schade(int64_t n, int64_t u_prev) -> int64_t
    {
        if (n < 3)
            throw std::invalid_argument("u_upper_schade needs n >= 3");
        return std::min(n * u_prev / (n - 2), pairs_cap(n));
    }

    auto u_upper_degree2(int64_t u_prev) -> int64_t
    {
        return u_prev + 2;
    }

    SeedError::SeedError(const string & what, optional<int> missing_n) :
        std::invalid_argument(what),
        missing_n(missing_n)
    {
    }

    auto build_upper_table(const Seed & seed, int n_max) -> vector<UpperBoundTableRow>
    {
        if (seed.empty())
            throw SeedError("seed has no values");
        for (int n = seed.begin()->first; n <= seed.rbegin()->first; ++n)
            if (! seed.count(n))
                throw SeedError("seed is missing n=" + std::to_string(n), n);
        if (seed.begin()->first < 1)
            throw SeedError("seed keys must be positive");

        vector<UpperBoundTableRow> rows;
        for (auto [n, v] : seed) {
            UpperBoundTableRow r;
            r.n = n;
            r.value = v;
            r.source = "seed";
            rows.push_back(r);
        }
        int64_t prev = seed.rbegin()->second;
        for (int n = seed.rbegin()->first + 1; n <= n_max; ++n) {
            if (n < 3)
                throw SeedError("the pipeline starts at n=3; seed up to n=2 at least");
            UpperBoundTableRow r;
            r.n = n;
            r.schade = u_upper_schade(n, prev);
            r.degree2 = u_upper_degree2(prev);
            r.proposition = u_upper_proposition(n);
            int64_t floor_part = std::max(*r.degree2, *r.proposition);
            if (*r.schade <= floor_part) {
                r.value = *r.schade;
                r.source = "schade";
            }
            else {
                r.value = floor_part;
                r.source = *r.proposition >= *r.degree2 ? "proposition" : "degree2";
            }
            rows.push_back(r);
            prev = r.value;
        }
        return rows;
    }

    auto default_seed() -> Seed
    {
        Seed seed;
        for (const auto & [n, k] : load_known_values(default_known_values_path())) {
            if (n <= 15)
                seed[n] = k.lower;
            else if (n <= 21)
                seed[n] = k.upper;
        }
        if (seed.size() != 21)
            throw SeedError("known-values file does not cover n=1..21");
        return seed;
    }

    auto parse_seed(const string & spec) -> Seed
    {
        if (spec == "table1_known" || spec == "default")
            return default_seed();
        if (std::filesystem::exists(spec)) {
            Seed seed;
            for (const auto & [n, k] : load_known_values(spec))
                seed[n] = k.exact ? k.lower : k.upper;
            return seed;
        }

        string body = spec;
        body.erase(std::remove_if(body.begin(), body.end(), [](char c) { return c == '{' || c == '}' || c == ' '; }), body.end());
        Seed seed;
        std::stringstream ss(body);
        string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == string::npos)
                throw SeedError("seed entry '" + item + "' is not of the form n:value");
            try {
                size_t used_n = 0, used_v = 0;
                int n = std::stoi(item.substr(0, colon), &used_n);
                int64_t v = std::stoll(item.substr(colon + 1), &used_v);
                if (used_n != colon || used_v != item.size() - colon - 1)
                    throw std::invalid_argument("trailing characters");
                seed[n] = v;
            }
            catch (const std::logic_error &) {
                throw SeedError("seed entry '" + item + "' is not of the form n:value");
            }
        }
        if (seed.empty())
            throw SeedError("empty seed");
        return seed;
    }

    auto crossover_case2() -> ThresholdReport
    {
        // smallest n with 4 (139n/20)^3 < 29 n^4, i.e. 4 * 139^3 < 29 * 8000 * n
        auto holds = [](int64_t n) {
            Rational lhs = 4 * cube(rat(139 * n, 20));
            Rational rhs = rat(29) * rat(n) * rat(n) * rat(n) * rat(n);
            return lhs < rhs;
        };
        ThresholdReport r;
        int64_t n = 1;
        while (! holds(n))
            ++n;
        r.value = n;
        r.audit.emplace_back("holds_at_" + std::to_string(n - 1), holds(n - 1) ? "true" : "false");
        r.audit.emplace_back("holds_at_" + std::to_string(n), "true");
        r.audit.emplace_back("threshold", Rational(rat(4 * 139 * 139 * 139) / rat(29 * 8000)).get_str());
        return r;
    }

    auto crossover_case3(int64_t scan_limit) -> ThresholdReport
    {
        ThresholdReport r;
        int64_t last = 0;
        for (int64_t n = 1; n <= scan_limit; ++n)
            if (u_upper_jensen(n) < u_upper_theorem(n))
                last = n;
        r.value = last;
        for (int64_t n : { last, last + 1 }) {
            r.audit.emplace_back("jensen_" + std::to_string(n), std::to_string(u_upper_jensen(n)));
            r.audit.emplace_back("theorem_" + std::to_string(n), std::to_string(u_upper_theorem(n)));
        }
        r.audit.emplace_back("scanned_through", std::to_string(scan_limit));
        return r;
    }

    auto crossover_theorem_vs_table(const Seed & seed, int64_t limit) -> TheoremVsTable
    {
        auto rows = build_upper_table(seed, static_cast<int>(limit));
        std::map<int64_t, int64_t> chain;
        for (const auto & r : rows)
            chain[r.n] = r.value;

        TheoremVsTable out;
        int64_t start = 1;
        while (u_upper_theorem(start) >= pairs_cap(start) && start < limit)
            ++start;
        start = std::max<int64_t>(start, chain.begin()->first + 1);
        out.search_start = start;

        for (int64_t n = start; n <= limit; ++n)
            if (u_upper_theorem(n) <= chain.at(n)) {
                out.n = n;
                break;
            }
        if (out.n == 0)
            return out;
        out.chain_at = chain.at(out.n);
        out.theorem_at = u_upper_theorem(out.n);
        out.chain_before = chain.at(out.n - 1);
        out.theorem_before = u_upper_theorem(out.n - 1);
        out.checked_through = limit;
        out.holds_through_limit = true;
        for (int64_t n = out.n; n <= limit; ++n)
            if (u_upper_theorem(n) > chain.at(n))
                out.holds_through_limit = false;
        return out;
    }

    auto theorem_gap_lower(int64_t n, int bits) -> Rational
    {
        Integer scale = Integer(1) << bits;
        Integer scale3 = scale * scale * scale;
        Integer c_lo = floor_cbrt(Integer(29 * scale3 / 4));

        Integer a = big(n), b = big(n - 1);
        Integer a_lo = floor_cbrt(a * a * a * a * scale3);
        Integer b4 = b * b * b * b * scale3;
        Integer b_hi = floor_cbrt(b4);
        if (b_hi * b_hi * b_hi < b4)
            ++b_hi;
        Rational gap(c_lo * (a_lo - b_hi), scale * scale);
        gap.canonicalize();
        return gap;
    }

    auto validate_theorem1_cases(int64_t gap_limit) -> Theorem1Cases
    {
        Theorem1Cases c;
        c.case2_from = crossover_case2().value;
        c.case3_to = crossover_case3(1000).value;
        c.coverage = c.case2_from <= c.case3_to + 1;
        for (int64_t n = 3; n <= c.case3_to; ++n)
            if (u_upper_jensen(n) > u_upper_theorem(n))
                c.coverage = false;
        c.notes.push_back("every n >= 3 lies in [3, " + std::to_string(c.case3_to) + "] or in ["
            + std::to_string(c.case2_from) + ", inf); on the first range the degree-sum bound never exceeds the theorem bound");

        c.gap_checked = true;
        for (int64_t n = 3; n <= gap_limit; ++n)
            if (theorem_gap_lower(n) <= 2)
                c.gap_checked = false;
        c.gap_checked_up_to = gap_limit;
        c.gap_lower_at_3 = theorem_gap_lower(3).get_d();
        c.gap_lower_at_1000 = theorem_gap_lower(1000).get_d();

        // n^(4/3) - (n-1)^(4/3) >= (4/3)(n-1)^(1/3); the gap exceeds 2 once
        // (29/4)(4/3)^3 (n-1) > 8, and the left side grows with n
        Rational mv = rat(29, 4) * cube(rat(4, 3)) * rat(3 - 1);
        c.mean_value_bound = mv > 8;
        c.notes.push_back("mean value bound: (29/4)(4/3)^3(n-1) at n=3 is " + mv.get_str() + " > 8, so the gap exceeds 2 for all n >= 3");
        return c;
    }

    auto compare_simple_bound(const std::map<int, int64_t> & published_upper, int n_max) -> SimpleBoundComparison
    {
        SimpleBoundComparison out;
        int64_t rec = 33, tab = published_upper.count(14) ? published_upper.at(14) : 33;
        for (int n = 15; n <= n_max; ++n) {
            SimpleBoundRow row;
            row.n = n;
            row.proposition = u_upper_proposition(n);
            rec = u_upper_schade(n, rec);
            row.recursion_chain = rec;
            auto it = published_upper.find(n);
            tab = it != published_upper.end() ? it->second : u_upper_schade(n, tab);
            row.table_upper = tab;
            if (! out.first_below_recursion && row.proposition < row.recursion_chain)
                out.first_below_recursion = n;
            if (! out.first_below_table && row.proposition < row.table_upper)
                out.first_below_table = n;
            out.rows.push_back(row);
        }
        return out;
    }

    auto formula_ids() -> vector<string>
    {
        return { "planar_excess", "ackerman", "multi_convex", "multi2_even", "multi_general", "multi2_large",
            "nonhomotopic_ptt", "nonhomotopic_improved", "harmonic_simple", "theorem1", "jensen", "proposition",
            "schade", "degree2" };
    }

    auto evaluate_formula(const string & id, optional<int64_t> n, optional<int64_t> m, optional<int64_t> k)
        -> BoundEvaluation
    {
        auto need = [&](const optional<int64_t> & v, const char * name) -> int64_t {
            if (! v)
                throw std::invalid_argument("formula '" + id + "' needs --" + name);
            return *v;
        };
        auto integer_bound = [&](const string & fid, vector<std::pair<string, int64_t>> inputs, auto && f, int64_t min_n) {
            auto e = evaluation(fid, std::move(inputs));
            if (e.inputs.front().second < min_n)
                return not_applicable(e, "needs n >= " + std::to_string(min_n));
            return with_value(e, rat(f()));
        };

        if (id == "planar_excess")
            return cr_planar_excess(need(n, "n"), need(m, "m"));
        if (id == "ackerman")
            return cr_ackerman(need(n, "n"), need(m, "m"));
        if (id == "multi_convex")
            return cr_multi_convex(need(n, "n"), need(m, "m"), need(k, "k"), ackerman_value, "ackerman");
        if (id == "multi2_even")
            return cr_multi2_even(need(n, "n"), need(m, "m"));
        if (id == "multi_general")
            return cr_multi_general(need(n, "n"), need(m, "m"), need(k, "k"));
        if (id == "multi2_large")
            return cr_multi2_large(need(n, "n"), need(m, "m"));
        if (id == "nonhomotopic_ptt")
            return cr_nonhomotopic_ptt(need(n, "n"), need(m, "m"));
        if (id == "nonhomotopic_improved")
            return cr_nonhomotopic_improved(need(n, "n"), need(m, "m"));
        if (id == "harmonic_simple")
            return cr_harmonic_simple(need(n, "n"), need(m, "m"));
        if (id == "theorem1") {
            int64_t nn = need(n, "n");
            return integer_bound(id, { { "n", nn } }, [&] { return u_upper_theorem(nn); }, 1);
        }
        if (id == "jensen") {
            int64_t nn = need(n, "n");
            return integer_bound(id, { { "n", nn } }, [&] { return u_upper_jensen(nn); }, 1);
        }
        if (id == "proposition") {
            int64_t nn = need(n, "n");
            return integer_bound(id, { { "n", nn } }, [&] { return u_upper_proposition(nn); }, 3);
        }
        if (id == "schade") {
            int64_t nn = need(n, "n"), prev = need(m, "m");
            return integer_bound(id, { { "n", nn }, { "u_prev", prev } }, [&] { return u_upper_schade(nn, prev); }, 3);
        }
        if (id == "degree2") {
            int64_t prev = need(m, "m");
            auto e = evaluation(id, { { "u_prev", prev } });
            return with_value(e, rat(u_upper_degree2(prev)));
        }
        throw std::invalid_argument("unknown formula id '" + id + "'");
    }
}
