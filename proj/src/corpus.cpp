#include "fewnomial/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <sstream>

namespace fewnomial {

std::string to_string(Pipeline p)
{
    switch (p) {
        case Pipeline::Count:
            return "count";
        case Pipeline::Components:
            return "components";
        case Pipeline::Evaluate:
            return "evaluate";
        case Pipeline::Univariate:
            return "univariate";
    }
    return "?";
}

namespace {

std::optional<Pipeline> pipeline_from_string(const std::string& s)
{
    for (Pipeline p : {Pipeline::Count, Pipeline::Components, Pipeline::Evaluate, Pipeline::Univariate}) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

void require_number(const Json& obj, const std::string& key, const std::string& loc)
{
    if (!obj.contains(key)) throw SchemaError(loc + "/" + key, "missing");
    if (!obj[key].is_number()) throw SchemaError(loc + "/" + key, "expected a number");
}

void check_points(const Json& pts, const std::string& loc, std::optional<std::size_t> dim)
{
    if (!pts.is_array()) throw SchemaError(loc, "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string ploc = loc + "/" + std::to_string(i);
        if (!dim) {
            if (!pts[i].is_number()) throw SchemaError(ploc, "expected a number");
            continue;
        }
        if (!pts[i].is_array() || pts[i].size() != *dim) {
            throw SchemaError(ploc, "expected a point with " + std::to_string(*dim) + " coordinates");
        }
        for (std::size_t j = 0; j < *dim; ++j) {
            if (!pts[i][j].is_number()) throw SchemaError(ploc + "/" + std::to_string(j), "expected a number");
        }
    }
}

std::vector<Point> points_of(const Json& pts)
{
    std::vector<Point> out;
    for (const Json& p : pts) out.push_back(p.get<Point>());
    return out;
}

/** Every expected point has a distinct found point within tol (max norm). */
std::string match_points(const std::vector<Point>& expected, const std::vector<Point>& found, double tol)
{
    std::vector<bool> used(found.size(), false);
    for (const Point& e : expected) {
        bool hit = false;
        for (std::size_t k = 0; k < found.size() && !hit; ++k) {
            if (used[k] || found[k].size() != e.size()) continue;
            double d = 0.0;
            for (std::size_t i = 0; i < e.size(); ++i) d = std::max(d, std::abs(found[k][i] - e[i]));
            if (d <= tol) {
                used[k] = true;
                hit = true;
            }
        }
        if (!hit) {
            std::ostringstream msg;
            msg << "no root within " << tol << " of (";
            for (std::size_t i = 0; i < e.size(); ++i) msg << (i ? ", " : "") << e[i];
            msg << ")";
            return msg.str();
        }
    }
    return {};
}

void run_count(const CorpusEntry& entry, const CorpusRunOptions& options, CorpusOutcome& out)
{
    const FewnomialSystem system = parse_system(entry.system);
    const SystemRootReport rep = count_roots(system, options.desk);
    const Json& ex = entry.expect;
    std::ostringstream detail;
    detail << rep.roots.size() << " roots via " << rep.method << (rep.certified ? " (certified)" : " (uncertified)");
    out.pass = true;
    std::string failure;
    if (rep.continuum) {
        out.indeterminate = true;
        failure = "positive-dimensional solution set";
    }
    if (failure.empty() && ex.contains("count")) {
        const auto want = ex["count"].get<std::size_t>();
        if (rep.roots.size() != want) failure = "expected " + std::to_string(want) + " roots";
        if (!rep.certified && failure.empty()) out.indeterminate = true;
    }
    if (failure.empty() && ex.contains("count_max")) {
        const auto cap = ex["count_max"].get<std::size_t>();
        if (rep.roots.size() > cap) failure = "expected at most " + std::to_string(cap) + " roots";
    }
    if (failure.empty() && ex.contains("max_residual")) {
        const double cap = options.tol.value_or(ex["max_residual"].get<double>());
        double worst = 0.0;
        for (const SystemRoot& r : rep.roots) {
            for (double v : system.residuals(r.x)) worst = std::max(worst, v);
        }
        detail << ", max residual " << worst;
        if (!(worst < cap)) failure = "residual above " + std::to_string(cap);
    }
    if (failure.empty() && ex.contains("roots")) {
        const double tol = options.tol.value_or(ex["tol"].get<double>());
        failure = match_points(points_of(ex["roots"]), rep.points(), tol);
    }
    if (failure.empty() && !rep.within_bound) failure = "count exceeds the dispatched bound";
    if (!failure.empty()) {
        out.pass = false;
        detail << "; " << failure;
    }
    out.detail = detail.str();
}

void run_components(const CorpusEntry& entry, const CorpusRunOptions& options, CorpusOutcome& out)
{
    const FewnomialSystem system = parse_system(entry.system);
    const ComponentReport rep = count_components(system.member(0), options.components);
    const Json& ex = entry.expect;
    std::ostringstream detail;
    detail << rep.compact << " compact, " << rep.non_compact << " non-compact";
    std::string failure;
    if (rep.indeterminate > 0 || !rep.certified) {
        out.indeterminate = true;
        failure = std::to_string(rep.indeterminate) + " unstable component(s)";
    }
    if (failure.empty() && ex.contains("compact") && rep.compact != ex["compact"].get<std::size_t>()) {
        failure = "expected " + std::to_string(ex["compact"].get<std::size_t>()) + " compact";
    }
    if (failure.empty() && ex.contains("non_compact") && rep.non_compact != ex["non_compact"].get<std::size_t>()) {
        failure = "expected " + std::to_string(ex["non_compact"].get<std::size_t>()) + " non-compact";
    }
    if (failure.empty() && ex.contains("total") && rep.compact + rep.non_compact != ex["total"].get<std::size_t>()) {
        failure = "expected " + std::to_string(ex["total"].get<std::size_t>()) + " components";
    }
    out.pass = failure.empty();
    if (!failure.empty()) detail << "; " << failure;
    out.detail = detail.str();
}

void run_evaluate(const CorpusEntry& entry, const CorpusRunOptions& options, CorpusOutcome& out)
{
    const FewnomialSystem system = parse_system(entry.system);
    const double cap = options.tol.value_or(entry.expect["max_residual"].get<double>());
    const std::vector<Point> pts = points_of(entry.expect["points"]);
    double worst = 0.0;
    for (const Point& p : pts) {
        for (double v : system.residuals(p)) worst = std::max(worst, v);
    }
    std::ostringstream detail;
    detail << pts.size() << " points, max residual " << worst;
    out.pass = worst < cap;
    if (!out.pass) detail << "; residual above " << cap;
    out.detail = detail.str();
}

void run_univariate(const CorpusEntry& entry, const CorpusRunOptions& options, CorpusOutcome& out)
{
    const Json& c = entry.canonical;
    const LinearFormProduct f = canonical_lfp(c["A"].get<double>(), c["B"].get<double>(), c["a"].get<double>(),
                                              c["b"].get<double>(), c["c"].get<double>(), c["d"].get<double>());
    const RootReport rep = isolate_lfp_roots(f, std::make_pair(0.0, 1.0));
    std::ostringstream detail;
    detail << rep.roots.size() << " roots" << (rep.certified ? " (certified)" : " (uncertified)");
    std::string failure;
    if (!rep.certified) out.indeterminate = true;
    if (entry.expect.contains("count") && rep.roots.size() != entry.expect["count"].get<std::size_t>()) {
        failure = "expected " + std::to_string(entry.expect["count"].get<std::size_t>()) + " roots";
    }
    if (failure.empty() && entry.expect.contains("roots")) {
        std::vector<Point> expected, found;
        for (const Json& v : entry.expect["roots"]) expected.push_back({v.get<double>()});
        for (double t : rep.values()) found.push_back({t});
        failure = match_points(expected, found, options.tol.value_or(entry.expect["tol"].get<double>()));
    }
    out.pass = failure.empty() && !out.indeterminate;
    if (!failure.empty()) detail << "; " << failure;
    out.detail = detail.str();
}

}  // namespace

CorpusEntry parse_corpus_entry(const Json& doc, const std::string& source)
{
    const std::string loc = source.empty() ? "" : source + "#";
    if (!doc.is_object()) throw SchemaError(loc + "/", "expected an object");
    CorpusEntry e;
    e.source = source;
    if (!doc.contains("name") || !doc["name"].is_string()) throw SchemaError(loc + "/name", "expected a string");
    e.name = doc["name"].get<std::string>();
    if (doc.contains("claim")) {
        if (!doc["claim"].is_string()) throw SchemaError(loc + "/claim", "expected a string");
        e.claim = doc["claim"].get<std::string>();
    }
    if (!doc.contains("pipeline") || !doc["pipeline"].is_string()) {
        throw SchemaError(loc + "/pipeline", "expected a string");
    }
    auto p = pipeline_from_string(doc["pipeline"].get<std::string>());
    if (!p) throw SchemaError(loc + "/pipeline", "unknown pipeline '" + doc["pipeline"].get<std::string>() + "'");
    e.pipeline = *p;
    if (!doc.contains("expect") || !doc["expect"].is_object()) throw SchemaError(loc + "/expect", "expected an object");
    e.expect = doc["expect"];
    const std::string xloc = loc + "/expect";
    std::optional<std::size_t> dim;
    if (e.pipeline == Pipeline::Univariate) {
        if (!doc.contains("canonical") || !doc["canonical"].is_object()) {
            throw SchemaError(loc + "/canonical", "expected an object");
        }
        for (const char* k : {"A", "B", "a", "b", "c", "d"}) require_number(doc["canonical"], k, loc + "/canonical");
        e.canonical = doc["canonical"];
    } else {
        if (!doc.contains("system")) throw SchemaError(loc + "/system", "missing");
        const FewnomialSystem system = parse_system(doc["system"], loc + "/system");
        dim = system.dimension();
        if (e.pipeline == Pipeline::Count && system.size() != system.dimension()) {
            throw SchemaError(loc + "/system/polys", "count needs a square system");
        }
        if (e.pipeline == Pipeline::Components && (system.dimension() != 2 || system.size() != 1)) {
            throw SchemaError(loc + "/system", "components needs a single bivariate polynomial");
        }
        e.system = doc["system"];
    }
    const Json& ex = e.expect;
    switch (e.pipeline) {
        case Pipeline::Count:
        case Pipeline::Univariate:
            if (!ex.contains("count") && !ex.contains("count_max")) {
                throw SchemaError(xloc, "needs \"count\" or \"count_max\"");
            }
            for (const char* k : {"count", "count_max"}) {
                if (ex.contains(k) && !(ex[k].is_number_integer() && ex[k].get<long long>() >= 0)) {
                    throw SchemaError(xloc + "/" + k, "expected a non-negative integer");
                }
            }
            if (ex.contains("roots")) {
                check_points(ex["roots"], xloc + "/roots", dim);
                require_number(ex, "tol", xloc);
            }
            if (ex.contains("max_residual")) require_number(ex, "max_residual", xloc);
            break;
        case Pipeline::Components:
            if (!ex.contains("compact") && !ex.contains("non_compact") && !ex.contains("total")) {
                throw SchemaError(xloc, "needs \"compact\", \"non_compact\" or \"total\"");
            }
            for (const char* k : {"compact", "non_compact", "total"}) {
                if (ex.contains(k) && !(ex[k].is_number_integer() && ex[k].get<long long>() >= 0)) {
                    throw SchemaError(xloc + "/" + k, "expected a non-negative integer");
                }
            }
            break;
        case Pipeline::Evaluate:
            if (!ex.contains("points")) throw SchemaError(xloc + "/points", "missing");
            check_points(ex["points"], xloc + "/points", dim);
            require_number(ex, "max_residual", xloc);
            break;
    }
    return e;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw SchemaError("", "corpus directory " + dir + " not found");
    std::vector<fs::path> files;
    for (const fs::directory_entry& d : fs::directory_iterator(dir)) {
        if (d.is_regular_file() && d.path().extension() == ".json") files.push_back(d.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<CorpusEntry> out;
    for (const fs::path& p : files) out.push_back(parse_corpus_entry(read_json_file(p.string()), p.filename().string()));
    return out;
}

CorpusOutcome run_corpus_entry(const CorpusEntry& entry, const CorpusRunOptions& options)
{
    CorpusOutcome out;
    out.name = entry.name;
    out.pipeline = entry.pipeline;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (entry.pipeline) {
            case Pipeline::Count:
                run_count(entry, options, out);
                break;
            case Pipeline::Components:
                run_components(entry, options, out);
                break;
            case Pipeline::Evaluate:
                run_evaluate(entry, options, out);
                break;
            case Pipeline::Univariate:
                run_univariate(entry, options, out);
                break;
        }
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("error: ") + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<CorpusOutcome> run_corpus(const std::vector<CorpusEntry>& entries, const CorpusRunOptions& options)
{
    std::vector<CorpusOutcome> out;
    if (!options.parallel) {
        for (const CorpusEntry& e : entries) out.push_back(run_corpus_entry(e, options));
        return out;
    }
    std::vector<std::future<CorpusOutcome>> jobs;
    for (const CorpusEntry& e : entries) {
        jobs.push_back(std::async(std::launch::async, [&e, &options] { return run_corpus_entry(e, options); }));
    }
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace fewnomial
