#include "fewnomial/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fewnomial {

namespace {

double read_number(const Json& v, const std::string& location)
{
    if (!v.is_number()) throw SchemaError(location, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaError(location, "number is not finite");
    return d;
}

Json point_json(const Point& x)
{
    Json out = Json::array();
    for (double v : x) out.push_back(number(v));
    return out;
}

Json point2_json(const Point2& x) { return Json::array({number(x[0]), number(x[1])}); }

Json strings_json(const std::vector<std::string>& v)
{
    Json out = Json::array();
    for (const std::string& s : v) out.push_back(s);
    return out;
}

}  // namespace

Json number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

FewnomialSystem parse_system(const Json& doc, const std::string& location)
{
    if (!doc.is_object()) throw SchemaError(location.empty() ? "/" : location, "expected an object");
    if (!doc.contains("n")) throw SchemaError(location + "/n", "missing");
    const Json& jn = doc["n"];
    if (!jn.is_number_integer() || jn.get<long long>() < 1) {
        throw SchemaError(location + "/n", "expected a positive integer");
    }
    const auto n = static_cast<std::size_t>(jn.get<long long>());
    if (!doc.contains("polys")) throw SchemaError(location + "/polys", "missing");
    const Json& polys = doc["polys"];
    if (!polys.is_array()) throw SchemaError(location + "/polys", "expected an array");
    std::vector<Fewnomial> members;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const std::string ploc = location + "/polys/" + std::to_string(i);
        const Json& poly = polys[i];
        if (!poly.is_array()) throw SchemaError(ploc, "expected an array of terms");
        std::vector<Term> terms;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const std::string tloc = ploc + "/" + std::to_string(k);
            const Json& jt = poly[k];
            if (!jt.is_object()) throw SchemaError(tloc, "expected a term object");
            if (!jt.contains("c")) throw SchemaError(tloc + "/c", "missing");
            if (!jt.contains("a")) throw SchemaError(tloc + "/a", "missing");
            Term t;
            t.coeff = read_number(jt["c"], tloc + "/c");
            if (t.coeff == 0.0) throw SchemaError(tloc + "/c", "zero coefficient");
            const Json& ja = jt["a"];
            if (!ja.is_array()) throw SchemaError(tloc + "/a", "expected an array");
            if (ja.size() != n) {
                throw SchemaError(tloc + "/a", "exponent has length " + std::to_string(ja.size()) + ", expected " +
                                                   std::to_string(n));
            }
            for (std::size_t j = 0; j < n; ++j) t.exponent.push_back(read_number(ja[j], tloc + "/a/" + std::to_string(j)));
            for (std::size_t j = 0; j < terms.size(); ++j) {
                if (same_exponent(terms[j].exponent, t.exponent)) {
                    throw SchemaError(tloc + "/a", "duplicates the exponent of term " + std::to_string(j));
                }
            }
            terms.push_back(std::move(t));
        }
        members.push_back(Fewnomial::from_terms_strict(n, terms));
    }
    return FewnomialSystem(n, std::move(members));
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", path + ": malformed JSON at byte " + std::to_string(e.byte));
    }
}

FewnomialSystem read_system_file(const std::string& path) { return parse_system(read_json_file(path)); }

Json to_json(const Fewnomial& f)
{
    Json out = Json::array();
    for (const Term& t : f.terms()) {
        Json jt;
        jt["c"] = number(t.coeff);
        jt["a"] = point_json(t.exponent);
        out.push_back(std::move(jt));
    }
    return out;
}

Json to_json(const FewnomialSystem& system)
{
    Json out;
    out["n"] = system.dimension();
    out["polys"] = Json::array();
    for (const Fewnomial& f : system.members()) out["polys"].push_back(to_json(f));
    return out;
}

Json to_json(const ExtendedInt& v)
{
    if (!v) return "inf";
    if (*v >= std::numeric_limits<long long>::min() && *v <= std::numeric_limits<long long>::max()) {
        return static_cast<long long>(*v);
    }
    return v->str();
}

Json to_json(const BoundReport& report)
{
    Json out;
    out["kind"] = to_string(report.kind);
    out["value"] = to_json(report.value);
    out["trail"] = Json::array();
    for (const BoundStep& s : report.trail) {
        Json js;
        js["rule"] = s.rule;
        js["inputs"] = s.inputs;
        js["value"] = to_json(s.value);
        if (!s.note.empty()) js["note"] = s.note;
        out["trail"].push_back(std::move(js));
    }
    return out;
}

Json to_json(const ComponentBounds& bounds)
{
    Json out;
    out["compact_lower"] = to_json(ExtendedInt(bounds.compact_lower));
    out["non_compact_lower"] = to_json(ExtendedInt(bounds.non_compact_lower));
    Json lower = Json::array();
    for (const BoundStep& s : bounds.lower_trail) {
        Json js;
        js["rule"] = s.rule;
        js["inputs"] = s.inputs;
        js["value"] = to_json(s.value);
        lower.push_back(std::move(js));
    }
    out["lower_trail"] = std::move(lower);
    out["compact"] = to_json(bounds.compact);
    out["non_compact"] = to_json(bounds.non_compact);
    out["total"] = to_json(bounds.total);
    return out;
}

Json to_json(const RootReport& report)
{
    Json out;
    out["interval"] = Json::array({number(report.lo), number(report.hi)});
    out["count"] = report.roots.size();
    out["certified"] = report.certified;
    out["continuum"] = report.continuum;
    out["count_range"] = Json::array({report.count_low, report.count_high});
    out["bound"] = to_json(ExtendedInt(report.bound));
    out["bound_source"] = report.bound_source;
    Json roots = Json::array();
    for (const RootEntry& r : report.roots) {
        Json jr;
        jr["t"] = number(r.t);
        jr["residual"] = number(r.residual);
        jr["suspect"] = r.suspect;
        jr["at_resolution"] = r.at_resolution;
        roots.push_back(std::move(jr));
    }
    out["roots"] = std::move(roots);
    out["diagnostics"] = strings_json(report.diagnostics);
    return out;
}

Json to_json(const TrinomialCanonical& canonical)
{
    Json out;
    out["A"] = number(canonical.A);
    out["B"] = number(canonical.B);
    out["a"] = number(canonical.a);
    out["b"] = number(canonical.b);
    out["c"] = number(canonical.c);
    out["d"] = number(canonical.d);
    out["first_member"] = canonical.first_member;
    Json matrix = Json::array();
    for (const auto& row : canonical.map.composite_matrix()) matrix.push_back(point_json(row));
    out["exponent_matrix"] = std::move(matrix);
    return out;
}

Json to_json(const LinearFormProduct& f)
{
    Json out;
    Json forms = Json::array();
    for (const LinearForm& l : f.forms) forms.push_back(Json::array({number(l.u), number(l.v)}));
    out["forms"] = std::move(forms);
    Json terms = Json::array();
    for (const LfpTerm& t : f.terms) {
        Json jt;
        Json coeffs = Json::array();
        for (const auto& [exp, c] : t.p.coeffs()) {
            Json jc;
            jc["c"] = number(c);
            jc["s"] = exp;
            coeffs.push_back(std::move(jc));
        }
        jt["p"] = std::move(coeffs);
        jt["alpha"] = point_json(t.alpha);
        terms.push_back(std::move(jt));
    }
    out["terms"] = std::move(terms);
    return out;
}

Json to_json(const SystemRootReport& report)
{
    Json out;
    out["method"] = report.method;
    out["count"] = report.roots.size();
    out["certified"] = report.certified;
    out["continuum"] = report.continuum;
    out["count_range"] = Json::array({report.count_low, report.count_high});
    out["bound"] = to_json(ExtendedInt(report.dispatched_bound));
    out["bound_source"] = report.bound_source;
    out["within_bound"] = report.within_bound;
    Json roots = Json::array();
    for (const SystemRoot& r : report.roots) {
        Json jr;
        jr["x"] = point_json(r.x);
        jr["residuals"] = point_json(r.residuals);
        jr["suspect"] = r.suspect;
        roots.push_back(std::move(jr));
    }
    out["roots"] = std::move(roots);
    if (report.canonical) out["canonical"] = to_json(*report.canonical);
    if (report.case_tag) out["case"] = to_string(*report.case_tag);
    if (report.cubics) {
        Json jc;
        jc["F"] = Json::array();
        jc["F_hat"] = Json::array();
        for (double v : report.cubics->F) jc["F"].push_back(number(v));
        for (double v : report.cubics->F_hat) jc["F_hat"].push_back(number(v));
        jc["positive_roots_F"] = report.cubics->positive_roots_F;
        jc["positive_roots_F_hat"] = report.cubics->positive_roots_F_hat;
        jc["M"] = report.cubics->M;
        out["cubics"] = std::move(jc);
    }
    if (report.univariate) out["univariate"] = to_json(*report.univariate);
    if (report.mixed_volume_witness) {
        Json jw;
        jw["subset"] = report.mixed_volume_witness->subset;
        jw["subspace_dimension"] = report.mixed_volume_witness->subspace_dimension;
        out["mixed_volume_zero"] = std::move(jw);
    }
    out["diagnostics"] = strings_json(report.diagnostics);
    return out;
}

Json to_json(const ComponentReport& report, bool with_traces)
{
    Json out;
    out["compact"] = report.compact;
    out["non_compact"] = report.non_compact;
    out["indeterminate"] = report.indeterminate;
    out["certified"] = report.certified;
    out["window"] = number(report.window);
    out["grid"] = report.grid;
    Json edges = Json::array();
    for (const NewtonEdge& e : report.edges) {
        Json je;
        je["inner_normal"] = point2_json(e.normal);
        Json pts = Json::array();
        for (const ExponentVector& p : e.points) pts.push_back(point_json(p));
        je["points"] = std::move(pts);
        edges.push_back(std::move(je));
    }
    out["edges"] = std::move(edges);
    Json comps = Json::array();
    for (const TracedComponent& c : report.components) {
        Json jc;
        jc["compact"] = c.compact;
        jc["stable"] = c.stable;
        jc["touches_boundary"] = c.touches_boundary;
        Json ends = Json::array();
        for (const BranchEnd& e : c.ends) {
            Json jend;
            jend["point"] = point2_json(e.point);
            jend["direction"] = point2_json(e.direction);
            jend["edge"] = e.edge;
            ends.push_back(std::move(jend));
        }
        jc["ends"] = std::move(ends);
        jc["trace_points"] = c.trace.size();
        if (with_traces) {
            Json trace = Json::array();
            for (const Point2& p : c.trace) trace.push_back(point2_json(p));
            jc["trace"] = std::move(trace);
        }
        comps.push_back(std::move(jc));
    }
    out["components"] = std::move(comps);
    out["diagnostics"] = strings_json(report.diagnostics);
    return out;
}

Json to_json(const FacetCertificate& certificate)
{
    Json out;
    out["available"] = certificate.available;
    out["ends"] = certificate.ends;
    out["paired"] = certificate.paired;
    if (certificate.traced_non_compact) {
        out["traced_non_compact"] = *certificate.traced_non_compact;
        out["consistent"] = certificate.consistent;
    }
    Json facets = Json::array();
    for (const FacetInitialCount& fc : certificate.facets) {
        Json jf;
        jf["inner_normal"] = point2_json(fc.normal);
        jf["initial_form"] = to_json(fc.initial);
        jf["roots"] = fc.roots;
        jf["available"] = fc.available;
        if (!fc.note.empty()) jf["note"] = fc.note;
        facets.push_back(std::move(jf));
    }
    out["facets"] = std::move(facets);
    out["diagnostics"] = strings_json(certificate.diagnostics);
    return out;
}

Json to_json(const CurveFeatureCount& count)
{
    Json out;
    out["path"] = count.path;
    Json infl;
    infl["count"] = count.inflections;
    infl["certified"] = count.inflections_certified;
    infl["locus_curve"] = count.inflection_locus_curve;
    infl["bound"] = to_json(count.bounds.inflections);
    infl["points"] = Json::array();
    for (const Point& p : count.inflection_points) infl["points"].push_back(point_json(p));
    out["inflections"] = std::move(infl);
    Json vert;
    vert["count"] = count.vertical_tangents;
    vert["certified"] = count.vertical_certified;
    vert["locus_curve"] = count.vertical_locus_curve;
    vert["bound"] = to_json(count.bounds.vertical);
    vert["points"] = Json::array();
    for (const Point& p : count.vertical_points) vert["points"].push_back(point_json(p));
    out["vertical_tangents"] = std::move(vert);
    out["within_bounds"] = count.within_bounds;
    out["diagnostics"] = strings_json(count.diagnostics);
    return out;
}

std::string dump(const Json& doc, bool pretty)
{
    return doc.dump(pretty ? 2 : -1) + "\n";
}

}  // namespace fewnomial
