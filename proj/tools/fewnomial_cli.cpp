#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fewnomial/bounds.hpp"
#include "fewnomial/corpus.hpp"
#include "fewnomial/curves.hpp"
#include "fewnomial/json_io.hpp"
#include "fewnomial/polytope.hpp"
#include "fewnomial/reduce.hpp"
#include "svg_plot.hpp"

using namespace fewnomial;

namespace {

enum ExitCode { kOk = 0, kAssertionFailed = 1, kSchemaError = 2, kIndeterminate = 3 };

struct Flags {
    double window = 12.0;
    int grid = 1024;
    std::uint64_t seed = 0;
    bool json = false;
    std::string svg;
    std::optional<double> tol;
    std::string file;
    std::string corpus;
};

void print_diagnostics(const std::vector<std::string>& diagnostics)
{
    for (const std::string& d : diagnostics) std::cerr << "  " << d << "\n";
}

std::string format_point(const Point& x)
{
    std::ostringstream out;
    out.precision(12);
    out << "(";
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
    out << ")";
    return out.str();
}

void print_bound(const BoundReport& r, const std::string& label)
{
    std::cout << label << ": " << to_string(r.value) << "\n";
    for (const BoundStep& s : r.trail) {
        std::cout << "  " << s.rule << " [" << s.inputs << "] -> " << to_string(s.value);
        if (!s.note.empty()) std::cout << "  (" << s.note << ")";
        std::cout << "\n";
    }
}

DeskOptions desk_options(const Flags& f)
{
    DeskOptions o;
    o.seed = f.seed;
    return o;
}

ComponentOptions component_options(const Flags& f)
{
    ComponentOptions o;
    o.window = f.window;
    o.grid = f.grid;
    return o;
}

int cmd_bound(const Flags& flags)
{
    const FewnomialSystem system = read_system_file(flags.file);
    Json out;
    if (system.size() == system.dimension()) {
        const BoundReport r = best_root_bound(system);
        if (flags.json) {
            out["roots"] = to_json(r);
        } else {
            print_bound(r, "isolated positive roots");
        }
    } else if (system.size() == 1) {
        const Fewnomial& f = system.member(0);
        const int n = static_cast<int>(system.dimension());
        const int m = static_cast<int>(f.size());
        const ComponentBounds cb = component_bounds(n, m);
        std::optional<BoundReport> facet;
        if (affine_dimension(f.support()) == n) facet = moment_facet_bound(f);
        std::optional<CurveFeatureBounds> features;
        if (n == 2) features = curve_feature_bounds(m);
        if (flags.json) {
            out["components"] = to_json(cb);
            if (facet) out["non_compact_by_facets"] = to_json(*facet);
            if (features) {
                out["vertical_tangents"] = to_json(features->vertical);
                out["inflections"] = to_json(features->inflections);
            }
        } else {
            std::cout << "lower bounds: compact >= " << cb.compact_lower << ", non-compact >= " << cb.non_compact_lower
                      << " (worst case over all " << n << "-variate " << m << "-nomials)\n";
            print_bound(cb.compact, "compact components");
            print_bound(cb.non_compact, "non-compact components");
            print_bound(cb.total, "components");
            if (facet) print_bound(*facet, "non-compact components from the facets of the Newton polytope");
            if (features) {
                print_bound(features->vertical, "vertical tangents");
                print_bound(features->inflections, "inflection points");
            }
        }
    } else {
        throw SchemaError("/polys", "bound needs a square system or a single polynomial");
    }
    if (flags.json) std::cout << dump(out);
    return kOk;
}

int cmd_count(const Flags& flags)
{
    const FewnomialSystem system = read_system_file(flags.file);
    if (system.size() != system.dimension()) throw SchemaError("/polys", "count needs a square system");
    const SystemRootReport r = count_roots(system, desk_options(flags));
    const double tol = flags.tol.value_or(1e-8);
    bool residual_ok = true;
    for (const SystemRoot& root : r.roots) {
        for (double v : system.residuals(root.x)) residual_ok = residual_ok && v < tol;
    }
    if (flags.json) {
        std::cout << dump(to_json(r));
    } else {
        std::cout << r.roots.size() << " positive root(s) via " << r.method
                  << (r.certified ? " (certified)" : " (not certified)") << "; bound " << r.dispatched_bound << " ("
                  << r.bound_source << ")\n";
        for (const SystemRoot& root : r.roots) {
            std::cout << "  " << format_point(root.x) << "  residuals";
            for (double v : system.residuals(root.x)) std::cout << " " << v;
            if (root.suspect) std::cout << "  suspect";
            std::cout << "\n";
        }
    }
    if (!r.within_bound) {
        std::cerr << "assertion failed: the count exceeds the dispatched bound\n";
        return kAssertionFailed;
    }
    if (!residual_ok) {
        std::cerr << "assertion failed: a root has a residual of at least " << tol << "\n";
        return kAssertionFailed;
    }
    if (r.continuum || !r.certified) {
        std::cerr << "numerically indeterminate:\n";
        print_diagnostics(r.diagnostics);
        if (r.continuum) std::cerr << "  positive-dimensional solution set\n";
        return kIndeterminate;
    }
    return kOk;
}

const Fewnomial& single_curve(const FewnomialSystem& system)
{
    if (system.dimension() != 2 || system.size() != 1) {
        throw SchemaError("/polys", "expected a single bivariate polynomial");
    }
    return system.member(0);
}

int check_components(const ComponentReport& r, const Fewnomial& f, const std::optional<FacetCertificate>& cert)
{
    const ComponentBounds cb = component_bounds(2, static_cast<int>(f.size()));
    if ((cb.compact.value && BigInt(r.compact) > *cb.compact.value) ||
        (cb.non_compact.value && BigInt(r.non_compact) > *cb.non_compact.value)) {
        std::cerr << "assertion failed: traced counts exceed the component bounds\n";
        return kAssertionFailed;
    }
    if (cert && cert->available && !cert->consistent) {
        std::cerr << "assertion failed: more non-compact components than paired branch ends\n";
        return kAssertionFailed;
    }
    if (r.indeterminate > 0 || !r.certified) {
        std::cerr << "numerically indeterminate:\n";
        print_diagnostics(r.diagnostics);
        return kIndeterminate;
    }
    return kOk;
}

int cmd_components(const Flags& flags)
{
    const FewnomialSystem system = read_system_file(flags.file);
    const Fewnomial& f = single_curve(system);
    const ComponentReport r = count_components(f, component_options(flags));
    std::optional<FacetCertificate> cert;
    if (affine_dimension(f.support()) == 2) cert = facet_component_certificate(f, &r);
    if (flags.json) {
        Json out;
        out["components"] = to_json(r);
        if (cert) out["facet_certificate"] = to_json(*cert);
        std::cout << dump(out);
    } else {
        std::cout << r.compact << " compact, " << r.non_compact << " non-compact";
        if (r.indeterminate) std::cout << ", " << r.indeterminate << " unstable";
        std::cout << " component(s) in [-" << r.window << ", " << r.window << "]^2 (log coordinates, grid " << r.grid
                  << ")\n";
        for (std::size_t i = 0; i < r.components.size(); ++i) {
            const TracedComponent& c = r.components[i];
            std::cout << "  component " << i << ": " << (c.stable ? (c.compact ? "compact" : "non-compact") : "unstable");
            for (const BranchEnd& e : c.ends) std::cout << ", end -> edge " << e.edge;
            std::cout << "\n";
        }
        if (cert) {
            if (cert->available) {
                std::cout << "facet certificate: " << cert->ends << " branch ends, at most " << cert->paired
                          << " non-compact component(s)\n";
            } else {
                std::cout << "facet certificate unavailable\n";
                for (const std::string& d : cert->diagnostics) std::cout << "  " << d << "\n";
            }
        }
    }
    if (!flags.svg.empty()) {
        std::ofstream(flags.svg) << render_components_svg(r, flags.file);
    }
    return check_components(r, f, cert);
}

int cmd_plot(const Flags& flags)
{
    if (flags.svg.empty()) throw SchemaError("", "plot needs --svg PATH");
    const FewnomialSystem system = read_system_file(flags.file);
    const Fewnomial& f = single_curve(system);
    const ComponentReport r = count_components(f, component_options(flags));
    std::ofstream out(flags.svg);
    if (!out) throw SchemaError("", "cannot write " + flags.svg);
    out << render_components_svg(r, flags.file);
    if (flags.json) {
        Json doc;
        doc["svg"] = flags.svg;
        doc["components"] = to_json(r, true);
        std::cout << dump(doc);
    } else {
        std::cout << "wrote " << flags.svg << "\n";
    }
    return kOk;
}

int cmd_classify(const Flags& flags)
{
    const FewnomialSystem system = read_system_file(flags.file);
    Json out;
    Json type = Json::array();
    for (std::size_t m : system.type_signature()) type.push_back(m);
    out["n"] = system.dimension();
    out["type"] = type;
    out["sparsity"] = system.sparsity();
    if (system.dimension() == 2) {
        Json polygons = Json::array();
        for (const Fewnomial& f : system.members()) {
            Json verts = Json::array();
            for (const Point2& v : newton_polygon(f).vertices) verts.push_back(Json::array({v[0], v[1]}));
            polygons.push_back(verts);
        }
        out["newton_polygons"] = polygons;
    }
    if (system.size() == system.dimension()) {
        const MixedVolumeZeroWitness mv = mixed_volume_zero(system);
        out["mixed_volume_zero"] = mv.zero;
        out["pyramidal"] = is_pyramidal(system).has_value();
        try {
            const PolygonClass pc = polygon_class_bound(system);
            Json jc;
            jc["edges"] = pc.edges;
            jc["bound"] = to_json(pc.bound.value);
            jc["rule"] = pc.bound.trail.empty() ? "" : pc.bound.trail.back().rule;
            out["polygon_class"] = jc;
            const CanonicalOutcome co = trinomial_canonical(system);
            out["canonical_status"] = to_string(co.status);
            if (co.canonical) {
                const TrinomialCanonical& tc = *co.canonical;
                out["case"] = to_string(classify_case(tc.a, tc.b, tc.c, tc.d));
                const CubicPair cp = cubic_F_coeffs(tc.a, tc.b, tc.c, tc.d);
                out["cubic_positive_roots"] = Json::array({cp.positive_roots_F, cp.positive_roots_F_hat});
            }
        } catch (const NotApplicableError&) {
            // not a pair of trinomials
        }
    }
    if (flags.json) {
        std::cout << dump(out);
    } else {
        std::cout << "type (";
        for (std::size_t i = 0; i < type.size(); ++i) std::cout << (i ? "," : "") << type[i];
        std::cout << "), " << system.sparsity() << " distinct exponents\n";
        if (out.contains("mixed_volume_zero")) {
            std::cout << "mixed volume zero: " << (out["mixed_volume_zero"].get<bool>() ? "yes" : "no")
                      << ", pyramidal: " << (out["pyramidal"].get<bool>() ? "yes" : "no") << "\n";
        }
        if (out.contains("polygon_class")) {
            std::cout << "Minkowski sum with " << out["polygon_class"]["edges"] << " edge(s), root bound "
                      << out["polygon_class"]["bound"] << "\n";
        }
        if (out.contains("case")) std::cout << "canonical sign case " << out["case"].get<std::string>() << "\n";
    }
    return kOk;
}

int cmd_reduce(const Flags& flags)
{
    const FewnomialSystem system = read_system_file(flags.file);
    Json out;
    const CanonicalOutcome co = trinomial_canonical(system);
    if (co.canonical) {
        out["form"] = "trinomial-canonical";
        out["canonical"] = to_json(*co.canonical);
        out["univariate"] = to_json(canonical_lfp(*co.canonical));
        out["interval"] = Json::array({0.0, 1.0});
    } else {
        try {
            const UnivariateReduction ur = univariate_reduction(system);
            out["form"] = "shared-support";
            out["free_member"] = ur.free_member;
            out["parameter"] = ur.parameter;
            Json pts = Json::array();
            for (const ExponentVector& p : ur.points) {
                Json jp = Json::array();
                for (double v : p) jp.push_back(number(v));
                pts.push_back(jp);
            }
            out["common_points"] = pts;
            out["univariate"] = to_json(ur.f);
            out["interval"] = Json::array({number(ur.interval.first), number(ur.interval.second)});
            out["empty_interval"] = ur.empty_interval;
        } catch (const NotApplicableError& e) {
            out["form"] = "none";
            out["reason"] = std::string(e.what());
            if (!co.note.empty()) out["trinomial_note"] = co.note;
        }
    }
    // The reduced form is structured data; it is printed as JSON either way.
    std::cout << dump(out);
    return kOk;
}

int cmd_verify(const Flags& flags)
{
    std::string dir = flags.corpus;
    if (const char* env = std::getenv("FEWNOMIAL_CORPUS"); env != nullptr && *env != '\0') dir = env;
    if (dir.empty()) dir = FEWNOMIAL_DEFAULT_CORPUS;
    const std::vector<CorpusEntry> entries = load_corpus(dir);
    CorpusRunOptions options;
    options.desk = desk_options(flags);
    options.components = component_options(flags);
    options.tol = flags.tol;
    const std::vector<CorpusOutcome> outcomes = run_corpus(entries, options);
    bool failed = false, undecided = false;
    Json out = Json::array();
    for (const CorpusOutcome& o : outcomes) {
        failed = failed || (!o.pass && !o.indeterminate);
        undecided = undecided || o.indeterminate;
        if (flags.json) {
            Json jo;
            jo["name"] = o.name;
            jo["pipeline"] = to_string(o.pipeline);
            jo["pass"] = o.pass;
            jo["indeterminate"] = o.indeterminate;
            jo["detail"] = o.detail;
            out.push_back(jo);
        } else {
            char line[256];
            std::snprintf(line, sizeof line, "%-4s %-30s %-11s %7.2fs  ", o.pass ? "PASS" : "FAIL", o.name.c_str(),
                          to_string(o.pipeline).c_str(), o.seconds);
            std::cout << line << o.detail << "\n";
        }
    }
    if (flags.json) std::cout << dump(out);
    if (failed) return kAssertionFailed;
    if (undecided) return kIndeterminate;
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Root counts, bounds and component analysis for fewnomial systems"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags flags;
    double tol = 0.0;
    app.add_option("--window", flags.window, "half-width of the log-coordinate window for tracing")
        ->check(CLI::PositiveNumber);
    app.add_option("--grid", flags.grid, "grid cells per axis for tracing")->check(CLI::Range(2, 1 << 20));
    app.add_option("--seed", flags.seed, "seed for randomized starting points");
    app.add_flag("--json", flags.json, "print reports as JSON");
    app.add_option("--svg", flags.svg, "write the traced components as SVG");
    auto* tol_opt = app.add_option("--tol", tol, "residual / root-matching tolerance")->check(CLI::PositiveNumber);

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Flags&);
    };
    const Sub subs[] = {
        {"bound", "best available bounds for a system or a single polynomial", cmd_bound},
        {"count", "isolate the positive roots of a square system", cmd_count},
        {"components", "trace the components of a bivariate curve", cmd_components},
        {"classify", "Newton-polygon class and canonical sign case", cmd_classify},
        {"reduce", "reduce to a univariate linear-form product", cmd_reduce},
        {"plot", "render the traced components as SVG", cmd_plot},
    };
    int (*selected)(const Flags&) = nullptr;
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("file", flags.file, "system JSON document")->required();
        sub->callback([&selected, run = s.run] { selected = run; });
    }
    CLI::App* verify = app.add_subcommand("verify", "check every corpus entry against its expected outcome");
    verify->add_option("--corpus", flags.corpus, "corpus directory (FEWNOMIAL_CORPUS overrides)");
    verify->callback([&selected] { selected = cmd_verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kSchemaError;
    }
    if (*tol_opt) flags.tol = tol;

    try {
        return selected(flags);
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return kSchemaError;
    } catch (const ValidationError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kSchemaError;
    } catch (const NotApplicableError& e) {
        std::cerr << "not applicable: " << e.what() << "\n";
        return kIndeterminate;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kIndeterminate;
    }
}
