#include <udist/report.hpp>

#include <sstream>

namespace udist::report
{
    using std::string;
    using std::vector;

    auto document(const string & command) -> Json
    {
        Json j;
        j["schema_version"] = schema_version;
        j["command"] = command;
        return j;
    }

    auto decimal(const Rational & q, int digits) -> string
    {
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
        Integer scaled = q.get_num() * scale;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
        bool negative = f < 0;
        string s = Integer(abs(f)).get_str(10);
        if (digits > 0) {
            if (static_cast<int>(s.size()) <= digits)
                s.insert(0, static_cast<size_t>(digits + 1 - static_cast<int>(s.size())), '0');
            s.insert(s.size() - static_cast<size_t>(digits), ".");
        }
        return (negative ? "-" : "") + s;
    }

    auto number(const ConstructibleNumber & x, int precision) -> Json
    {
        auto iv = to_interval(x, precision);
        int digits = std::max(1, precision * 30103 / 100000 + 1);
        return { { "expr", to_expression(x) }, { "interval", { decimal(iv.lo, digits), decimal(iv.hi, digits) } } };
    }

    auto point(const ExactPoint & p, int precision) -> Json
    {
        return { { "x", number(p.x, precision) }, { "y", number(p.y, precision) } };
    }

    auto edges(const vector<Edge> & list) -> Json
    {
        Json out = Json::array();
        for (auto [a, b] : list)
            out.push_back({ a, b });
        return out;
    }

    namespace
    {
        auto opt(const std::optional<int> & v) -> Json
        {
            return v ? Json(*v) : Json(nullptr);
        }

        auto opt(const std::optional<std::int64_t> & v) -> Json
        {
            return v ? Json(*v) : Json(nullptr);
        }

        auto cell(const std::optional<std::int64_t> & v) -> string
        {
            return v ? std::to_string(*v) : "";
        }

        auto cell(const std::optional<int> & v) -> string
        {
            return v ? std::to_string(*v) : "";
        }

        auto csv_escape(const string & s) -> string
        {
            if (s.find_first_of(",\"\n") == string::npos)
                return s;
            string out = "\"";
            for (char c : s)
                out += c == '"' ? string("\"\"") : string(1, c);
            return out + "\"";
        }
    }

    auto TableLine::consistent() const -> bool
    {
        if (catalog_lower && *catalog_lower > row.value)
            return false;
        if (published_lower && *published_lower > row.value)
            return false;
        return true;
    }

    auto table_lines(const vector<UpperBoundTableRow> & rows, const vector<ConstructionRecord> & catalog,
        const std::map<int, KnownValue> & known, int from, int to) -> vector<TableLine>
    {
        std::map<int, int> best;
        for (const auto & rec : catalog)
            best[rec.n] = std::max(best[rec.n], rec.claimed_count);
        vector<TableLine> out;
        for (const auto & row : rows) {
            if (row.n < from || row.n > to)
                continue;
            TableLine line{ row, std::nullopt, std::nullopt, std::nullopt };
            if (auto it = best.find(row.n); it != best.end())
                line.catalog_lower = it->second;
            if (auto it = known.find(row.n); it != known.end()) {
                line.published_lower = it->second.lower;
                line.published_upper = it->second.upper;
            }
            out.push_back(line);
        }
        return out;
    }

    auto table_json(const vector<TableLine> & lines) -> Json
    {
        Json rows = Json::array();
        for (const auto & l : lines)
            rows.push_back({ { "n", l.row.n }, { "upper", l.row.value }, { "source", l.row.source },
                { "schade", opt(l.row.schade) }, { "degree2", opt(l.row.degree2) },
                { "proposition", opt(l.row.proposition) }, { "catalog_lower", opt(l.catalog_lower) },
                { "published_lower", opt(l.published_lower) }, { "published_upper", opt(l.published_upper) },
                { "consistent", l.consistent() } });
        return rows;
    }

    auto table_csv(const vector<TableLine> & lines) -> string
    {
        std::ostringstream s;
        s << "n,upper,source,schade,degree2,proposition,catalog_lower,published_lower,published_upper\n";
        for (const auto & l : lines)
            s << l.row.n << ',' << l.row.value << ',' << l.row.source << ',' << cell(l.row.schade) << ','
              << cell(l.row.degree2) << ',' << cell(l.row.proposition) << ',' << cell(l.catalog_lower) << ','
              << cell(l.published_lower) << ',' << cell(l.published_upper) << '\n';
        return s.str();
    }

    auto VerifyLine::failed() const -> bool
    {
        if (! approx.passed || exact.status == RealizationStatus::failed)
            return true;
        return exact.status == RealizationStatus::exact_certified && exact.derived_edge_count < approx.claimed;
    }

    auto verify_json(const vector<VerifyLine> & lines, int precision) -> Json
    {
        Json out = Json::array();
        for (const auto & l : lines) {
            Json failures = Json::array();
            for (const auto & f : l.approx.failures)
                failures.push_back({ { "edge", { f.edge.first, f.edge.second } }, { "squared_length", to_string(f.squared_length) },
                    { "length", f.length } });
            Json choices = Json::array();
            for (const auto & c : l.exact.free_choices)
                choices.push_back({ { "vertex", c.vertex }, { "anchor", c.anchor }, { "kind", c.kind },
                    { "deviation_degrees", c.deviation_degrees }, { "direction", point(c.direction, precision) } });
            Json coords = Json::array();
            if (l.exact.status == RealizationStatus::exact_certified)
                for (const auto & p : l.exact.points)
                    coords.push_back(point(p, precision));
            Json e = {
                { "id", l.approx.id },
                { "n", l.n },
                { "failed", l.failed() },
                { "approx",
                    { { "tolerance", to_string(l.approx.tolerance) }, { "passed", l.approx.passed },
                        { "claimed", l.approx.claimed }, { "max_deviation", l.approx.max_deviation },
                        { "failures", failures }, { "unclaimed_edges", edges(l.approx.unclaimed_edges) },
                        { "ambiguous", edges(l.approx.ambiguous) } } },
                { "exact",
                    { { "status", to_string(l.exact.status) }, { "derived_edges", l.exact.derived_edge_count },
                        { "bonus_edges", edges(l.exact.bonus_edges) }, { "free_choices", choices },
                        { "tie_flagged", l.exact.tie_flagged }, { "message", l.exact.message },
                        { "unplaced", l.exact.unplaced }, { "points", coords } } },
            };
            if (l.exact.offending)
                e["exact"]["offending"] = { l.exact.offending->first, l.exact.offending->second };
            out.push_back(e);
        }
        return out;
    }

    auto verify_csv(const vector<VerifyLine> & lines) -> string
    {
        std::ostringstream s;
        s << "id,n,claimed,approx_passed,max_deviation,status,derived_edges,bonus_edges,free_choices\n";
        for (const auto & l : lines)
            s << csv_escape(l.approx.id) << ',' << l.n << ',' << l.approx.claimed << ','
              << (l.approx.passed ? "true" : "false") << ',' << l.approx.max_deviation << ','
              << to_string(l.exact.status) << ',' << l.exact.derived_edge_count << ',' << l.exact.bonus_edges.size()
              << ',' << l.exact.free_choices.size() << '\n';
        return s.str();
    }

    auto evaluation_json(const BoundEvaluation & e) -> Json
    {
        Json inputs = Json::object();
        for (const auto & [k, v] : e.inputs)
            inputs[k] = v;
        Json details = Json::object();
        for (const auto & [k, v] : e.details)
            details[k] = to_string(v);
        Json j = { { "formula", e.formula_id }, { "inputs", inputs }, { "applicable", e.applicable } };
        if (e.value) {
            j["value"] = to_string(*e.value);
            j["value_decimal"] = decimal(*e.value, 6);
        } else {
            j["value"] = nullptr;
        }
        if (! e.reason.empty())
            j["reason"] = e.reason;
        if (! details.empty())
            j["details"] = details;
        return j;
    }

    auto evaluations_csv(const vector<BoundEvaluation> & list) -> string
    {
        std::ostringstream s;
        s << "formula,applicable,value,value_decimal,reason,inputs\n";
        for (const auto & e : list) {
            string inputs;
            for (const auto & [k, v] : e.inputs)
                inputs += (inputs.empty() ? "" : ";") + k + "=" + std::to_string(v);
            s << e.formula_id << ',' << (e.applicable ? "true" : "false") << ','
              << (e.value ? to_string(*e.value) : "") << ',' << (e.value ? decimal(*e.value, 6) : "") << ','
              << csv_escape(e.reason) << ',' << csv_escape(inputs) << '\n';
        }
        return s.str();
    }

    auto threshold_json(const ThresholdReport & r) -> Json
    {
        Json audit = Json::object();
        for (const auto & [k, v] : r.audit)
            audit[k] = v;
        return { { "value", r.value }, { "audit", audit } };
    }

    auto theorem_vs_table_json(const TheoremVsTable & t) -> Json
    {
        return { { "value", t.n }, { "search_start", t.search_start },
            { "before", { { "n", t.n - 1 }, { "chain", t.chain_before }, { "theorem", t.theorem_before } } },
            { "at", { { "n", t.n }, { "chain", t.chain_at }, { "theorem", t.theorem_at } } },
            { "checked_through", t.checked_through }, { "holds_through_limit", t.holds_through_limit } };
    }

    auto cases_json(const Theorem1Cases & c) -> Json
    {
        return { { "ok", c.ok() }, { "coverage", c.coverage }, { "case2_from", c.case2_from }, { "case3_to", c.case3_to },
            { "gap_checked", c.gap_checked }, { "gap_checked_up_to", c.gap_checked_up_to },
            { "gap_lower_at_3", c.gap_lower_at_3 }, { "gap_lower_at_1000", c.gap_lower_at_1000 },
            { "mean_value_bound", c.mean_value_bound }, { "notes", c.notes } };
    }

    auto comparison_json(const SimpleBoundComparison & c) -> Json
    {
        Json rows = Json::array();
        for (const auto & r : c.rows)
            rows.push_back({ { "n", r.n }, { "proposition", r.proposition }, { "recursion_chain", r.recursion_chain },
                { "table_upper", r.table_upper } });
        return { { "first_below_recursion", opt(c.first_below_recursion) },
            { "first_below_table", opt(c.first_below_table) }, { "rows", rows } };
    }

    auto ArcCheck::bounds_ok() const -> bool
    {
        for (const auto & b : bounds)
            if (b.applicable && b.value && *b.value > Rational(arcs.stats.crossings))
                return false;
        return true;
    }

    auto ArcCheck::ok() const -> bool
    {
        const auto & s = arcs.stats;
        if (! s.vertex_count_matches() || ! s.within_pair_bound())
            return false;
        if (! arcs.min_degree_ok)
            return true;
        return arcs.arc_count_ok() && arcs.max_multiplicity <= 2 && bounds_ok();
    }

    auto arc_check(const string & id, const UnitDistanceGraph & g) -> ArcCheck
    {
        ArcCheck out{ id, build_arc_multigraph(g), check_proposition_inequality(g), {} };
        std::int64_t n = out.arcs.n, m = 2 * static_cast<std::int64_t>(out.arcs.m);
        out.bounds = { cr_multi2_even(n, m), cr_multi2_large(n, m), cr_multi_general(n, m, 2),
            cr_multi_convex(n, m, 2, ackerman_value, "ackerman") };
        return out;
    }

    auto arcs_json(const ArcCheck & a) -> Json
    {
        const auto & h = a.arcs;
        const auto & s = h.stats;
        Json mult = Json::array();
        for (const auto & [e, c] : h.multiplicity)
            mult.push_back({ { "pair", { e.first, e.second } }, { "count", c } });
        Json bounds = Json::array();
        for (const auto & b : a.bounds)
            bounds.push_back(evaluation_json(b));
        return {
            { "id", a.id },
            { "ok", a.ok() },
            { "n", h.n },
            { "m", h.m },
            { "arcs", h.arcs.size() },
            { "arc_count_ok", h.arc_count_ok() },
            { "min_degree_ok", h.min_degree_ok },
            { "max_multiplicity", h.max_multiplicity },
            { "circles_without_arcs", h.circles_without_arcs },
            { "multiplicity", mult },
            { "circles",
                { { "intersection_points", s.intersection_points }, { "at_vertices", s.at_vertices },
                    { "tangencies", s.tangencies }, { "crossings", s.crossings }, { "sum_pairs", s.sum_pairs },
                    { "pair_bound", s.pair_bound }, { "vertex_count_matches", s.vertex_count_matches() },
                    { "note", "tangent pairs count as one intersection point and no crossing" } } },
            { "proposition",
                { { "left", a.proposition.left }, { "right", a.proposition.right }, { "holds", a.proposition.holds },
                    { "slack", a.proposition.slack() }, { "precondition_ok", a.proposition.precondition_ok } } },
            { "crossing_bounds_on_H", bounds },
            { "bounds_below_crossings", a.bounds_ok() },
        };
    }

    namespace
    {
        auto kind_name(CaseFact::Kind k) -> string
        {
            switch (k) {
            case CaseFact::Kind::squared_distance:
                return "squared_distance";
            case CaseFact::Kind::common_neighbors:
                return "common_neighbors";
            case CaseFact::Kind::common_outside:
                return "common_outside";
            case CaseFact::Kind::diagonal_sum:
                return "diagonal_sum";
            case CaseFact::Kind::integer:
                return "integer";
            }
            return "unknown";
        }

        auto relation_name(CaseFact::Relation r) -> string
        {
            switch (r) {
            case CaseFact::Relation::equal:
                return "==";
            case CaseFact::Relation::greater:
                return ">";
            case CaseFact::Relation::less:
                return "<";
            case CaseFact::Relation::not_equal:
                return "!=";
            }
            return "?";
        }
    }

    auto certificate_json(const CaseCertificate & c, int precision) -> Json
    {
        Json coords = Json::object();
        for (const auto & [name, p] : c.coordinates)
            coords[name] = point(p, precision);
        Json facts = Json::array();
        for (const auto & f : c.facts)
            facts.push_back({ { "description", f.description }, { "kind", kind_name(f.kind) }, { "points", f.points },
                { "observed", to_expression(f.observed) }, { "relation", relation_name(f.relation) },
                { "target", to_expression(f.target) }, { "verified", f.verified } });
        return { { "case", c.label }, { "verdict", c.verdict ? "contradiction certified" : "check failed" },
            { "ok", c.verdict }, { "offsets_sampled", c.offsets_sampled }, { "facts", facts },
            { "prose_steps", c.prose_steps }, { "coordinates", coords } };
    }

    auto chain_json(const ObservationChain & c) -> Json
    {
        Json steps = Json::array();
        for (const auto & s : c.steps)
            steps.push_back({ { "label", s.label }, { "value", s.value }, { "expected", s.expected }, { "ok", s.ok() } });
        return { { "ok", c.ok() }, { "steps", steps }, { "geometric_inputs", c.geometric_inputs },
            { "prose_steps", c.prose_steps } };
    }

    auto gn_json(const GNEnumeration & e, const std::set<string> & oracle) -> Json
    {
        Json types = Json::array();
        std::set<string> labels;
        for (const auto & w : e.types) {
            labels.insert(w.label);
            Json pts = Json::array();
            for (const auto & p : w.points)
                pts.push_back({ to_expression(p.x), to_expression(p.y) });
            types.push_back({ { "label", w.label }, { "chains", w.chain_lengths }, { "closed", w.closed },
                { "edges", edges(w.edges) }, { "points", pts } });
        }
        Json by_count = Json::object();
        for (auto [k, v] : e.types_by_edge_count)
            by_count[std::to_string(k)] = v;
        return { { "types", types }, { "types_by_edge_count", by_count }, { "rejected", e.rejected },
            { "oracle", oracle }, { "agrees_with_oracle", labels == oracle } };
    }

    auto profile_json(const DegreeProfile & p) -> Json
    {
        Json profiles = Json::array();
        for (const auto & prof : p.profiles) {
            Json one = Json::object();
            for (auto [d, c] : prof)
                one[std::to_string(d)] = c;
            profiles.push_back(one);
        }
        return { { "u14", p.u14 }, { "m15", p.m15 }, { "edge_cap", p.edge_cap }, { "rejected", p.rejected },
            { "reason", p.reason }, { "forced_min_degree", p.forced_min_degree },
            { "min_degree_used", p.min_degree_used }, { "requires_deletion_argument", p.requires_deletion_argument },
            { "profiles", profiles } };
    }

    auto crossings_json(const CrossingCount & c, const HarmonicChain & chain) -> Json
    {
        return { { "total", c.total }, { "per_edge", c.per_edge }, { "crossing_pairs", edges(c.pairs) },
            { "harmonic_sum", to_string(harmonic_sum(c.per_edge)) },
            { "chain",
                { { "planar_ratio", to_string(chain.planar_ratio) }, { "harmonic_ratio", to_string(chain.harmonic_ratio) },
                    { "arithmetic_mean", to_string(chain.arithmetic_mean) },
                    { "crossing_ratio", to_string(chain.crossing_ratio) }, { "harmonic_bound", chain.harmonic_bound },
                    { "holds", chain.holds } } } };
    }
}
