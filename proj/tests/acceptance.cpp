// One line per acceptance criterion. Exit status is the number of failures.

#include <udist/bounds.hpp>
#include <udist/case15.hpp>
#include <udist/constructions.hpp>
#include <udist/drawings.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace udist;

namespace
{
    struct Outcome
    {
        bool passed = true;
        std::ostringstream detail;
        std::vector<std::string> failures;

        auto expect(bool ok, const std::string & what) -> void
        {
            if (ok)
                return;
            passed = false;
            if (std::find(failures.begin(), failures.end(), what) == failures.end())
                failures.push_back(what);
        }

        [[nodiscard]] auto summary() const -> std::string
        {
            std::string out = detail.str();
            for (size_t i = 0; i < failures.size(); ++i)
                out += (i == 0 ? " | failed: " : "; ") + failures[i];
            return out;
        }
    };

    struct Criterion
    {
        int id;
        std::string name;
        double budget_ms;
        std::function<void(Outcome &)> run;
    };

    // integer coordinates below 2^20, so double orientations are exact
    auto orient_double(const RationalPoint & a, const RationalPoint & b, const RationalPoint & c) -> int
    {
        double v = (b.x.get_d() - a.x.get_d()) * (c.y.get_d() - a.y.get_d())
            - (b.y.get_d() - a.y.get_d()) * (c.x.get_d() - a.x.get_d());
        return (v > 0) - (v < 0);
    }

    auto oracle_per_edge(const StraightLineDrawing<Rational> & d) -> std::vector<std::int64_t>
    {
        std::vector<std::int64_t> per(d.edges.size(), 0);
        const auto & P = d.positions;
        for (size_t e = 0; e < d.edges.size(); ++e)
            for (size_t f = e + 1; f < d.edges.size(); ++f) {
                auto [a, b] = d.edges[e];
                auto [c, g] = d.edges[f];
                if (a == c || a == g || b == c || b == g)
                    continue;
                if (orient_double(P[a], P[b], P[c]) * orient_double(P[a], P[b], P[g]) < 0
                    && orient_double(P[c], P[g], P[a]) * orient_double(P[c], P[g], P[b]) < 0) {
                    ++per[e];
                    ++per[f];
                }
            }
        return per;
    }

    auto table_values(const Seed & seed, int from, int to) -> std::vector<std::int64_t>
    {
        std::vector<std::int64_t> out;
        for (const auto & row : build_upper_table(seed, to))
            if (row.n >= from)
                out.push_back(row.value);
        return out;
    }

    auto criterion_table(Outcome & o) -> void
    {
        const std::vector<std::int64_t> bold{ 72, 77, 82, 87, 92, 97, 102, 108, 113 };
        auto got = table_values(parse_seed("{21:68}"), 22, 30);
        o.expect(got == bold, "seed {21:68} does not reproduce the bold values");
        o.expect(table_values(default_seed(), 22, 30) == bold, "default seed does not reproduce the bold values");
        o.detail << "n=22..30 -> ";
        for (auto v : got)
            o.detail << v << ' ';
    }

    auto criterion_schade(Outcome & o) -> void
    {
        auto direct = u_upper_schade(15, 33);
        auto rows = build_upper_table(parse_seed("{14:33}"), 15);
        o.expect(direct == 38, "schade(15, 33) = " + std::to_string(direct));
        o.expect(rows.back().n == 15 && rows.back().value == 38, "pipeline U(15) = " + std::to_string(rows.back().value));
        o.detail << "schade(15,33)=" << direct << " U(15)=" << rows.back().value;
    }

    auto theorem_bracket(std::int64_t n) -> bool
    {
        Integer u = u_upper_theorem(n), N = n;
        Integer rhs = 29 * N * N * N * N;
        return 4 * u * u * u <= rhs && rhs < 4 * (u + 1) * (u + 1) * (u + 1);
    }

    auto criterion_theorem(Outcome & o) -> void
    {
        int checked = 0;
        std::int64_t bad = -1;
        for (std::int64_t n = 1; n <= 10000; ++n, ++checked)
            if (! theorem_bracket(n) && bad < 0)
                bad = n;
        for (std::int64_t n = 10007; n <= 1000000; n = n * 21 / 20 + 13, ++checked)
            if (! theorem_bracket(n) && bad < 0)
                bad = n;
        ++checked;
        if (! theorem_bracket(1000000) && bad < 0)
            bad = 1000000;
        o.expect(bad < 0, "bracket fails at n=" + std::to_string(bad));
        o.expect(u_upper_theorem(15) == 71, "theorem(15) = " + std::to_string(u_upper_theorem(15)));
        o.detail << checked << " grid points, theorem(15)=" << u_upper_theorem(15);
    }

    auto criterion_thresholds(Outcome & o) -> void
    {
        auto c2 = crossover_case2();
        auto c3 = crossover_case3();
        auto t = crossover_theorem_vs_table(default_seed());
        o.expect(c2.value == 47, "case2 = " + std::to_string(c2.value));
        o.expect(c3.value == 380, "case3 = " + std::to_string(c3.value));
        o.expect(std::abs(t.n - 521) <= 5, "theorem vs table = " + std::to_string(t.n));
        o.detail << "case2=" << c2.value << " case3=" << c3.value << " theorem_vs_table=" << t.n << " (expected 521; n="
                 << t.n - 1 << ": chain " << t.chain_before << " theorem " << t.theorem_before << "; n=" << t.n
                 << ": chain " << t.chain_at << " theorem " << t.theorem_at << ")";
    }

    auto criterion_constructions(Outcome & o) -> void
    {
        auto records = load_catalog(default_catalog_path());
        int approx_ok = 0, certified = 0;
        std::optional<int> n15;
        for (const auto & rec : records) {
            auto a = verify_approx(rec, Rational(1, 50));
            if (a.passed)
                ++approx_ok;
            else
                o.expect(false, rec.id + " fails approximate check");
            auto r = realize_exact(rec);
            if (r.status == RealizationStatus::exact_certified) {
                ++certified;
                o.expect(r.derived_edge_count >= rec.claimed_count, rec.id + " derives fewer edges than claimed");
                if (rec.id == "n15")
                    n15 = r.derived_edge_count;
            }
        }
        o.expect(n15 && *n15 == 37, "n15 not certified with 37 unit distances");
        o.detail << records.size() << " records, " << approx_ok << " approx ok, " << certified
                 << " exact_certified, n15=" << (n15 ? std::to_string(*n15) : "none");
    }

    auto criterion_arcs(Outcome & o) -> void
    {
        auto records = load_catalog(default_catalog_path());
        int checked = 0;
        for (const auto & rec : records) {
            auto r = realize_exact(rec);
            if (r.status != RealizationStatus::exact_certified)
                continue;
            const auto & g = *r.graph;
            int min_degree = g.n() ? g.graph.degree(0) : 0;
            std::int64_t sum_pairs = 0;
            for (int v = 0; v < g.n(); ++v) {
                min_degree = std::min(min_degree, g.graph.degree(v));
                std::int64_t d = g.graph.degree(v);
                sum_pairs += d * (d - 1) / 2;
            }
            if (min_degree < 3)
                continue;
            ++checked;
            auto h = build_arc_multigraph(g);
            std::int64_t n = g.n();
            o.expect(static_cast<std::int64_t>(h.arcs.size()) == 2 * g.m(), rec.id + ": arc count");
            o.expect(h.max_multiplicity <= 2, rec.id + ": multiplicity");
            o.expect(h.stats.intersection_points <= n * n - n, rec.id + ": intersection points");
            o.expect(h.stats.at_vertices == sum_pairs, rec.id + ": vertex-located intersections");
        }
        o.expect(checked > 0, "no construction with minimum degree 3");
        o.detail << checked << " constructions with min degree >= 3";
    }

    auto criterion_gn(Outcome & o) -> void
    {
        auto e = enumerate_gn_types();
        std::set<std::string> labels;
        for (const auto & w : e.types)
            labels.insert(w.label);
        const std::set<std::string> expected{ "C6", "P5+P1", "P4+P2", "P3+P3" };
        o.expect(labels == expected, "type set differs");
        o.expect(brute_force_gn_types() == labels, "oracle disagrees");
        auto five = e.types_by_edge_count.find(5);
        o.expect(five == e.types_by_edge_count.end() || five->second == 0, "5-edge type found");
        for (const auto & l : labels)
            o.detail << l << ' ';
    }

    auto criterion_harmonic(Outcome & o) -> void
    {
        std::mt19937_64 rng(2718);
        int drawings = 0, planar = 0;
        for (; drawings < 120; ++drawings) {
            int n = 3 + static_cast<int>(rng() % 10);
            int m = static_cast<int>(rng() % (n * (n - 1) / 2 + 1));
            auto d = random_drawing(n, m, rng);
            auto c = count_crossings_straightline(d);
            auto per = oracle_per_edge(d);
            o.expect(c.per_edge == per, "per-edge counts differ from the oracle");
            Rational h = 0;
            for (auto x : per)
                h += Rational(1, x + 1);
            o.expect(harmonic_sum(c.per_edge) == h, "harmonic sum differs from the oracle");
            if (n >= 3)
                o.expect(h <= 3 * n - 6, "harmonic sum above 3n-6");
            if (c.total == 0) {
                ++planar;
                o.expect(h == m, "planar instance with harmonic sum != m");
            }
            auto chain = harmonic_chain(n, c);
            o.expect(chain.holds, "inequality chain fails");
        }

        std::vector<StraightLineDrawing<Rational>> fixed;
        std::mt19937_64 frng(31415);
        for (auto [n, m] : std::vector<std::pair<int, int>>{ { 6, 12 }, { 8, 20 }, { 10, 30 }, { 12, 40 } })
            fixed.push_back(random_drawing(n, m, frng));
        fixed.push_back(convex_drawing(9, 15, frng));
        double worst = 0;
        for (const auto & d : fixed) {
            auto c = count_crossings_straightline(d);
            double sum = 0, sum_sq = 0;
            const int trials = 10000;
            for (int s = 0; s < trials; ++s) {
                double size = static_cast<double>(caro_wei_planar_subgraph(c, 7000 + s).size());
                sum += size;
                sum_sq += size * size;
            }
            double mean = sum / trials;
            double sigma = std::sqrt(std::max(0.0, sum_sq / trials - mean * mean) / trials);
            double expected = harmonic_sum(c.per_edge).get_d();
            o.expect(std::abs(mean - expected) <= 3 * sigma + 1e-12, "Caro-Wei mean outside 3 sigma");
            if (sigma > 0)
                worst = std::max(worst, std::abs(mean - expected) / sigma);
        }
        o.detail << drawings << " drawings (" << planar << " planar), Caro-Wei worst deviation " << worst << " sigma";
    }

    auto criterion_thicken(Outcome & o) -> void
    {
        std::mt19937_64 rng(1618);
        for (int trial = 0; trial < 50; ++trial) {
            AbstractDrawing r;
            r.n = 3 + static_cast<int>(rng() % 8);
            int m = 1 + static_cast<int>(rng() % 12);
            for (int e = 0; e < m; ++e) {
                int u = static_cast<int>(rng() % r.n), v = static_cast<int>((u + 1 + rng() % (r.n - 1)) % r.n);
                r.edges.emplace_back(u, v);
            }
            for (int e = 0; e < m; ++e)
                for (int f = e + 1; f < m; ++f)
                    if (rng() % 3 == 0)
                        r.crossings[{ e, f }] = static_cast<std::int64_t>(rng() % 4);
            for (int k : { 1, 2, 3, 5 }) {
                auto t = thicken(r, k);
                o.expect(t.total_crossings() == k * k * r.total_crossings(), "k^2 law fails");
                o.expect(static_cast<int>(t.edges.size()) == k * m, "thickened edge count");
            }
        }
        int evaluated = 0;
        for (std::int64_t n = 3; n <= 40; ++n)
            for (std::int64_t k = 1; k <= 5; ++k)
                for (std::int64_t s = 1; s <= 12 * n; s += 7) {
                    for (const auto & [name, base] : std::vector<std::pair<std::string, BaseFormula>>{
                             { "ackerman", ackerman_value }, { "planar_excess", planar_excess } }) {
                        auto b = cr_multi_convex(n, k * s, k, base, name);
                        o.expect(b.value && *b.value == k * k * base(n, s), "multi_convex scaling fails");
                        ++evaluated;
                    }
                }
        o.detail << "50 drawings x k in {1,2,3,5}; " << evaluated << " multi_convex evaluations";
    }

    auto fact(const CaseCertificate & c, const std::string & prefix) -> const CaseFact *
    {
        for (const auto & f : c.facts)
            if (f.description.rfind(prefix, 0) == 0)
                return &f;
        return nullptr;
    }

    auto criterion_certificates(Outcome & o) -> void
    {
        auto c6 = certify_case_c6();
        o.expect(c6.verdict, "C6 certificate");
        o.expect(squared_distance(c6.point("r"), c6.point("v3")) == ConstructibleNumber(4), "|r-v3| != 2");
        o.expect(sign(squared_distance(c6.point("r"), c6.point("v4")) - ConstructibleNumber(4)) > 0, "|r-v4| <= 2");

        auto p = certify_case_p3p3();
        o.expect(p.verdict, "P3P3 certificate");
        int sides = 0, steps = 0;
        for (const auto & f : p.facts) {
            if (f.description.rfind("rhombus side", 0) == 0) {
                ++sides;
                o.expect(f.verified && f.observed == ConstructibleNumber(3), "rhombus side");
            }
            if (f.description.rfind("cycle step", 0) == 0) {
                ++steps;
                o.expect(f.verified && f.observed == ConstructibleNumber(1), "cycle step");
            }
        }
        o.expect(sides == 4 * p.offsets_sampled, "rhombus side count");
        o.expect(steps > 0, "no cycle steps");
        auto one = [](const ExactPoint & a, const ExactPoint & b) {
            return squared_distance(a, b) == ConstructibleNumber(1);
        };
        bool k23 = true;
        for (const auto * left : { "w13@1", "w33@1" })
            for (const auto * right : { "w23@1", "u3@1", "w32@1" })
                if (std::string(left) != "w13@1" || std::string(right) != "w32@1")
                    k23 = k23 && one(p.point(left), p.point(right));
        o.expect(k23, "K_{2,3} witness distances");
        o.expect(fact(p, "rhombus diagonals") != nullptr, "diagonal fact missing");

        for (const auto & label : case_labels()) {
            auto c = certify_case(label);
            o.expect(c.verdict, label + " certificate");
        }

        auto chain = verify_observation_chain();
        o.expect(chain.ok(), "observation chain");
        auto a = chain.value("edges between R and N at most");
        auto b = chain.value("edges inside N at least");
        auto d = chain.value("edges between R and N when |E(G[N])| = 6");
        o.expect(a == 16 && b == 4 && d == 12, "chain integers");
        o.detail << "rhombus sides " << sides << ", cycle steps " << steps << ", chain " << a << '/' << b << '/' << d;
    }
}

auto main() -> int
{
    const std::vector<Criterion> criteria{
        { 1, "table upper bounds n=22..30", 1000, criterion_table },
        { 2, "density recursion from u(14)=33", 1, criterion_schade },
        { 3, "theorem bound bracket and value at 15", 1000, criterion_theorem },
        { 4, "crossover thresholds", 5000, criterion_thresholds },
        { 5, "construction catalog verification", 30000, criterion_constructions },
        { 6, "arc multigraph invariants", 10000, criterion_arcs },
        { 7, "neighbourhood graph classification", 1000, criterion_gn },
        { 8, "harmonic sum properties and Caro-Wei", 60000, criterion_harmonic },
        { 9, "thickening and multiplicity scaling", 5000, criterion_thicken },
        { 10, "fifteen point certificates", 5000, criterion_certificates },
    };

    int failures = 0;
    for (const auto & c : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception & e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (ms > c.budget_ms)
            o.expect(false, "runtime over budget");
        failures += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << ms << " ms, budget "
                  << c.budget_ms << " ms): " << o.summary() << '\n';
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures;
}
