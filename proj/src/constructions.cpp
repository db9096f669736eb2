#include <udist/constructions.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

using std::string;
using std::string_view;
using std::vector;

using json = nlohmann::json;

namespace udist
{
    CatalogError::CatalogError(string record_id, string field, const string & what) :
        std::runtime_error("catalog record '" + record_id + "', field '" + field + "': " + what),
        record_id(std::move(record_id)),
        field(std::move(field))
    {
    }

    auto default_catalog_path() -> string
    {
        return string(UDIST_DATA_DIR) + "/catalog.json";
    }

    auto default_known_values_path() -> string
    {
        return string(UDIST_DATA_DIR) + "/table1_known.json";
    }

    namespace
    {
        auto read_file(const string & path) -> string
        {
            std::ifstream in(path);
            if (! in)
                throw std::runtime_error("cannot open " + path);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        auto coordinate(const json & v, const string & id, const string & field) -> Rational
        {
            try {
                if (v.is_string())
                    return parse_rational(v.get<string>());
                if (v.is_number_integer())
                    return Rational(v.get<long>());
            }
            catch (const std::exception & e) {
                throw CatalogError(id, field, e.what());
            }
            throw CatalogError(id, field, "coordinate must be a decimal string or an integer");
        }

        auto parse_record(const json & r, size_t position) -> ConstructionRecord
        {
            string id = "#" + std::to_string(position);
            if (! r.is_object())
                throw CatalogError(id, "", "record is not an object");
            if (! r.contains("id") || ! r["id"].is_string() || r["id"].get<string>().empty())
                throw CatalogError(id, "id", "missing or not a nonempty string");
            ConstructionRecord rec;
            rec.id = id = r["id"].get<string>();

            auto require = [&](const char * field) -> const json & {
                if (! r.contains(field))
                    throw CatalogError(id, field, "missing");
                return r[field];
            };

            const json & n = require("n");
            if (! n.is_number_integer() || n.get<long>() < 1)
                throw CatalogError(id, "n", "must be a positive integer");
            rec.n = n.get<int>();

            const json & coords = require("coords");
            if (! coords.is_array() || coords.size() != static_cast<size_t>(rec.n))
                throw CatalogError(id, "coords", "must be an array of n coordinate pairs");
            for (size_t i = 0; i < coords.size(); ++i) {
                string field = "coords[" + std::to_string(i) + "]";
                if (! coords[i].is_array() || coords[i].size() != 2)
                    throw CatalogError(id, field, "must be a pair");
                rec.coords.push_back({ coordinate(coords[i][0], id, field), coordinate(coords[i][1], id, field) });
            }

            const json & edges = require("edges");
            if (! edges.is_array())
                throw CatalogError(id, "edges", "must be an array");
            std::set<Edge> seen;
            for (size_t k = 0; k < edges.size(); ++k) {
                string field = "edges[" + std::to_string(k) + "]";
                const json & e = edges[k];
                if (! e.is_array() || e.size() != 2 || ! e[0].is_number_integer() || ! e[1].is_number_integer())
                    throw CatalogError(id, field, "must be a pair of vertex indices");
                int a = e[0].get<int>(), b = e[1].get<int>();
                if (a < 0 || b < 0 || a >= rec.n || b >= rec.n)
                    throw CatalogError(id, field, "index out of range");
                if (a == b)
                    throw CatalogError(id, field, "loop");
                Edge key{ std::min(a, b), std::max(a, b) };
                if (! seen.insert(key).second)
                    throw CatalogError(id, field, "repeated edge");
                rec.edges.emplace_back(a, b);
            }

            const json & claimed = require("claimed_count");
            if (! claimed.is_number_integer())
                throw CatalogError(id, "claimed_count", "must be an integer");
            rec.claimed_count = claimed.get<int>();
            if (rec.claimed_count != static_cast<int>(rec.edges.size()))
                throw CatalogError(id, "claimed_count", "does not match the number of edges ("
                        + std::to_string(rec.edges.size()) + ")");

            const json & prov = require("provenance");
            if (! prov.is_string())
                throw CatalogError(id, "provenance", "must be a string");
            rec.provenance = prov.get<string>();
            return rec;
        }

        auto to_double(const Rational & q) -> double
        {
            return q.get_d();
        }

        auto approx_point(const ExactPoint & p) -> std::complex<double>
        {
            return { p.x.approx(), p.y.approx() };
        }
    }

    auto parse_catalog(string_view text) -> vector<ConstructionRecord>
    {
        json doc;
        try {
            doc = json::parse(text);
        }
        catch (const json::parse_error & e) {
            throw CatalogError("", "", string("malformed document: ") + e.what());
        }
        if (! doc.is_object() || ! doc.contains("records") || ! doc["records"].is_array())
            throw CatalogError("", "records", "document must hold a 'records' array");
        if (doc.contains("schema_version") && doc["schema_version"] != 1)
            throw CatalogError("", "schema_version", "unsupported version");

        vector<ConstructionRecord> out;
        std::set<string> ids;
        for (size_t i = 0; i < doc["records"].size(); ++i) {
            auto rec = parse_record(doc["records"][i], i);
            if (! ids.insert(rec.id).second)
                throw CatalogError(rec.id, "id", "duplicate id");
            out.push_back(std::move(rec));
        }
        return out;
    }

    auto load_catalog(const string & path) -> vector<ConstructionRecord>
    {
        return parse_catalog(read_file(path));
    }

    auto find_record(const vector<ConstructionRecord> & records, string_view id) -> const ConstructionRecord &
    {
        for (const auto & r : records)
            if (r.id == id)
                return r;
        throw std::invalid_argument("no catalog record with id '" + string(id) + "'");
    }

    auto verify_approx(const ConstructionRecord & rec, const Rational & tol, const Rational & band) -> ApproxReport
    {
        ApproxReport report;
        report.id = rec.id;
        report.tolerance = tol;
        report.claimed = static_cast<int>(rec.edges.size());

        Rational lo = (1 - tol) * (1 - tol), hi = (1 + tol) * (1 + tol);
        for (auto [a, b] : rec.edges) {
            Rational d2 = squared_distance(rec.coords[a], rec.coords[b]);
            double len = std::sqrt(to_double(d2));
            report.max_deviation = std::max(report.max_deviation, std::abs(len - 1));
            if (d2 < lo || d2 > hi)
                report.failures.push_back({ { a, b }, d2, len });
        }

        auto g = unit_distance_graph(rec.coords, tol, band);
        Graph claimed(rec.n, rec.edges);
        for (auto [a, b] : g.graph.edges())
            if (! claimed.adjacent(a, b))
                report.unclaimed_edges.emplace_back(a, b);
        report.ambiguous = g.ambiguous;
        report.passed = report.failures.empty();
        return report;
    }

    auto to_string(RealizationStatus s) -> string
    {
        switch (s) {
        case RealizationStatus::exact_certified: return "exact_certified";
        case RealizationStatus::approximate_only: return "approximate_only";
        case RealizationStatus::failed: return "failed";
        }
        return "unknown";
    }

    namespace
    {
        struct Rotation
        {
            ExactPoint exact;
            std::complex<double> approx;
        };

        // k*60 degrees composed with 0, +-acos(5/6), +-acos(5/6)/2
        auto lattice_rotations() -> const vector<Rotation> &
        {
            static const vector<Rotation> rotations = [] {
                auto s3 = sqrt_extend(ConstructibleNumber(3)).root;
                auto s11 = sqrt_extend(ConstructibleNumber(11)).root;
                auto s33 = s3 * s11;
                ConstructibleNumber half(Rational(1, 2)), sixth(Rational(1, 6));
                vector<ExactPoint> hex = { { 1, 0 }, { half, s3 * half }, { -half, s3 * half }, { -1, 0 },
                    { -half, -s3 * half }, { half, -s3 * half } };
                vector<ExactPoint> moser = { { 1, 0 }, { ConstructibleNumber(Rational(5, 6)), s11 * sixth },
                    { ConstructibleNumber(Rational(5, 6)), -s11 * sixth }, { s33 * sixth, s3 * sixth },
                    { s33 * sixth, -s3 * sixth } };
                vector<Rotation> out;
                for (const auto & h : hex)
                    for (const auto & m : moser) {
                        auto r = complex_mul(h, m);
                        out.push_back({ r, approx_point(r) });
                    }
                return out;
            }();
            return rotations;
        }

        // rational unit vector with half-angle tangent rounded to 1/1000
        auto pythagorean_direction(double phi) -> ExactPoint
        {
            bool flip = std::abs(phi) > std::numbers::pi / 2;
            if (flip)
                phi -= std::copysign(std::numbers::pi, phi);
            Rational t(static_cast<long>(std::lround(std::tan(phi / 2) * 1000)), 1000);
            t.canonicalize();
            Rational den = 1 + t * t;
            ExactPoint d{ ConstructibleNumber(Rational((1 - t * t) / den)), ConstructibleNumber(Rational(2 * t / den)) };
            return flip ? -d : d;
        }

        auto lex_less(const ExactPoint & a, const ExactPoint & b) -> bool
        {
            int sx = sign(a.x - b.x);
            if (sx != 0)
                return sx < 0;
            return sign(a.y - b.y) < 0;
        }

        struct Realizer
        {
            const ConstructionRecord & rec;
            const RealizeOptions & options;
            Graph claimed;
            vector<RationalPoint> picture;  // picture in the frame fixed by the seed edge
            vector<std::optional<ExactPoint>> placed;
            vector<std::complex<double>> approx;
            RealizationResult result;

            Realizer(const ConstructionRecord & r, const RealizeOptions & o) :
                rec(r),
                options(o),
                claimed(r.n, r.edges),
                placed(r.n),
                approx(r.n)
            {
                result.id = r.id;
            }

            auto place(int v, const ExactPoint & p) -> void
            {
                placed[v] = p;
                approx[v] = approx_point(p);
                result.order.push_back(v);
            }

            auto collides(const ExactPoint & p) const -> bool
            {
                for (const auto & q : placed)
                    if (q && *q == p)
                        return true;
                return false;
            }

            auto seed() -> void
            {
                int left = 0;
                for (int v = 1; v < rec.n; ++v)
                    if (rec.coords[v].x < rec.coords[left].x
                        || (rec.coords[v].x == rec.coords[left].x && rec.coords[v].y < rec.coords[left].y))
                        left = v;

                int other = -1;
                double best = 0;
                for (int u : claimed.neighbours(left)) {
                    double dev = std::abs(std::sqrt(to_double(squared_distance(rec.coords[left], rec.coords[u]))) - 1);
                    if (other < 0 || dev < best || (dev == best && u < other))
                        other = u, best = dev;
                }

                // similarity sending the seed edge to (0,0)-(1,0)
                RationalPoint base = rec.coords[left], w = rec.coords[other] - base;
                Rational w2 = squared_norm(w);
                RationalPoint w_conj{ w.x / w2, -w.y / w2 };
                for (const auto & p : rec.coords)
                    picture.push_back(complex_mul(p - base, w_conj));

                place(left, { 0, 0 });
                place(other, { 1, 0 });
            }

            auto nearer_to_picture(int v, const ExactPoint & a, const ExactPoint & b) -> bool
            {
                ExactPoint target = to_exact(picture[v]);
                int s = sign(squared_distance(a, target) - squared_distance(b, target));
                if (s != 0)
                    return s < 0;
                result.tie_flagged = true;
                return lex_less(a, b);
            }

            // places every vertex with two placed neighbours; false on a geometric contradiction
            auto propagate() -> bool
            {
                bool progress = true;
                while (progress) {
                    progress = false;
                    for (int v = 0; v < rec.n; ++v) {
                        if (placed[v])
                            continue;
                        vector<int> nb;
                        for (int u : claimed.neighbours(v))
                            if (placed[u])
                                nb.push_back(u);
                        if (nb.size() < 2)
                            continue;
                        std::sort(nb.begin(), nb.end());
                        auto cn = common_unit_neighbors(*placed[nb[0]], *placed[nb[1]]);
                        if (cn.count == 0) {
                            result.offending = Edge{ std::min(v, nb[1]), std::max(v, nb[1]) };
                            result.message = "vertex " + std::to_string(v) + ": unit circles about "
                                + std::to_string(nb[0]) + " and " + std::to_string(nb[1]) + " are disjoint";
                            return false;
                        }
                        vector<ExactPoint> cands = cn.witnesses;
                        if (cands.size() == 2 && ! nearer_to_picture(v, cands[0], cands[1]))
                            std::swap(cands[0], cands[1]);
                        if (collides(cands[0]))
                            cands.erase(cands.begin());
                        if (cands.empty() || collides(cands[0])) {
                            result.message = "vertex " + std::to_string(v) + " would coincide with a placed vertex";
                            return false;
                        }
                        place(v, cands[0]);
                        progress = true;
                    }
                }
                return true;
            }

            auto choose_direction() -> bool
            {
                int v = -1, u = -1;
                for (int w = 0; w < rec.n && v < 0; ++w) {
                    if (placed[w])
                        continue;
                    for (int x : claimed.neighbours(w))
                        if (placed[x] && (u < 0 || x < u))
                            u = x;
                    if (u >= 0)
                        v = w;
                }
                if (v < 0)
                    return false;

                std::complex<double> want(to_double(picture[v].x - picture[u].x), to_double(picture[v].y - picture[u].y));
                want /= std::abs(want);

                const ExactPoint * best_dir = nullptr;
                const Rotation * best_rot = nullptr;
                double best = 0;
                vector<ExactPoint> dirs;
                vector<std::complex<double>> dirs_approx;
                for (auto [i, j] : claimed.edges())
                    if (placed[i] && placed[j]) {
                        dirs.push_back(*placed[j] - *placed[i]);
                        dirs_approx.push_back(approx[j] - approx[i]);
                    }
                for (size_t k = 0; k < dirs.size(); ++k)
                    for (const auto & r : lattice_rotations()) {
                        double dist = std::abs(dirs_approx[k] * r.approx - want);
                        if (! best_dir || dist < best) {
                            best = dist;
                            best_dir = &dirs[k];
                            best_rot = &r;
                        }
                    }

                FreeChoice choice;
                choice.vertex = v;
                choice.anchor = u;
                double angle = 180;
                if (best_dir)
                    angle = std::abs(std::arg((approx_point(*best_dir) * best_rot->approx) / want)) * 180 / std::numbers::pi;
                if (best_dir && angle <= options.lattice_tolerance_degrees) {
                    choice.kind = "lattice";
                    choice.direction = complex_mul(*best_dir, best_rot->exact);
                }
                else {
                    choice.kind = "generic";
                    choice.direction = pythagorean_direction(std::arg(want));
                }
                choice.deviation_degrees = std::abs(std::arg(approx_point(choice.direction) / want)) * 180 / std::numbers::pi;

                ExactPoint p = *placed[u] + choice.direction;
                if (collides(p)) {
                    result.message = "chosen direction for vertex " + std::to_string(v) + " hits a placed vertex";
                    return false;
                }
                place(v, p);
                result.free_choices.push_back(choice);
                return true;
            }

            auto list_unplaced() -> void
            {
                result.unplaced.clear();
                for (int v = 0; v < rec.n; ++v)
                    if (! placed[v])
                        result.unplaced.push_back(v);
            }

            auto run() -> RealizationResult
            {
                if (rec.n == 1) {
                    place(0, { 0, 0 });
                    return certify();
                }
                if (rec.edges.empty()) {
                    result.status = RealizationStatus::approximate_only;
                    result.message = "no edges to propagate from";
                    list_unplaced();
                    return result;
                }

                seed();
                while (true) {
                    if (! propagate()) {
                        result.status = RealizationStatus::failed;
                        list_unplaced();
                        return result;
                    }
                    if (result.order.size() == static_cast<size_t>(rec.n))
                        return certify();
                    if (! options.allow_direction_choice) {
                        result.status = RealizationStatus::approximate_only;
                        result.message = "propagation stalled";
                        list_unplaced();
                        return result;
                    }
                    if (! choose_direction()) {
                        list_unplaced();
                        result.status = result.message.empty() ? RealizationStatus::approximate_only : RealizationStatus::failed;
                        if (result.message.empty())
                            result.message = "remaining vertices are not connected to the placed part";
                        return result;
                    }
                }
            }

            auto certify() -> RealizationResult
            {
                vector<ExactPoint> pts;
                for (auto & p : placed)
                    pts.push_back(*p);
                UnitDistanceGraph g;
                try {
                    g = unit_distance_graph(pts);
                }
                catch (const DuplicatePointError & e) {
                    result.status = RealizationStatus::failed;
                    result.message = e.what();
                    return result;
                }
                result.points = g.exact_points();
                result.derived_edge_count = g.m();
                for (auto [a, b] : claimed.edges())
                    if (! g.graph.adjacent(a, b)) {
                        result.status = RealizationStatus::failed;
                        result.offending = Edge{ a, b };
                        result.message = "claimed edge " + std::to_string(a) + "-" + std::to_string(b) + " is not a unit distance";
                        result.graph = std::move(g);
                        return result;
                    }
                for (auto [a, b] : g.graph.edges())
                    if (! claimed.adjacent(a, b))
                        result.bonus_edges.emplace_back(a, b);
                result.status = RealizationStatus::exact_certified;
                result.graph = std::move(g);
                return result;
            }
        };
    }

    auto realize_exact(const ConstructionRecord & rec, const RealizeOptions & options) -> RealizationResult
    {
        return Realizer(rec, options).run();
    }

    auto load_known_values(const string & path) -> std::map<int, KnownValue>
    {
        json doc = json::parse(read_file(path));
        std::map<int, KnownValue> out;
        for (const auto & r : doc.at("rows")) {
            KnownValue k;
            k.n = r.at("n").get<int>();
            k.lower = r.at("lower").get<int>();
            k.upper = r.at("upper").get<int>();
            k.exact = r.value("exact", k.lower == k.upper);
            k.starred = r.value("starred", false);
            k.provenance = r.value("provenance", "");
            out[k.n] = k;
        }
        return out;
    }

    auto catalog_summary(const vector<ConstructionRecord> & records,
        const std::map<string, RealizationStatus> & statuses, const std::map<int, KnownValue> & known)
        -> vector<SummaryRow>
    {
        auto rank = [](RealizationStatus s) {
            switch (s) {
            case RealizationStatus::exact_certified: return 2;
            case RealizationStatus::approximate_only: return 1;
            case RealizationStatus::failed: return 0;
            }
            return 0;
        };

        std::map<int, SummaryRow> rows;
        for (const auto & rec : records) {
            auto [it, fresh] = rows.try_emplace(rec.n);
            SummaryRow & row = it->second;
            row.n = rec.n;
            row.lower = std::max(row.lower, rec.claimed_count);
            row.record_ids.push_back(rec.id);
            auto st = statuses.find(rec.id);
            RealizationStatus s = st == statuses.end() ? RealizationStatus::approximate_only : st->second;
            if (fresh || rank(s) > rank(row.status))
                row.status = s;
        }
        vector<SummaryRow> out;
        for (auto & [n, row] : rows) {
            if (auto k = known.find(n); k != known.end())
                row.published_upper = k->second.upper;
            out.push_back(row);
        }
        return out;
    }
}
