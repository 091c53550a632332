#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "fewnomial/corpus.hpp"
#include "fewnomial/json_io.hpp"

using namespace fewnomial;
namespace fs = std::filesystem;

namespace {

std::string location_of(const std::string& text)
{
    try {
        parse_system(Json::parse(text));
    } catch (const SchemaError& e) {
        return e.location;
    }
    return "<no error>";
}

/** Scratch directory removed at scope exit. */
struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("fewnomial-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return path / name;
    }
};

struct RunResult {
    int code = -1;
    std::string out;
};

/** Runs the command-line tool with the given arguments, capturing stdout. */
RunResult run_cli(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" FEWNOMIAL_CLI "\" " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const char* kHaas = R"({"n": 2, "polys": [
  [{"c": 1, "a": [108, 0]}, {"c": 1.1, "a": [0, 54]}, {"c": -1.1, "a": [0, 1]}],
  [{"c": 1, "a": [0, 108]}, {"c": 1.1, "a": [54, 0]}, {"c": -1.1, "a": [1, 0]}]]})";

}  // namespace

TEST_CASE("schema errors carry a JSON pointer")
{
    CHECK(location_of(R"({"polys": []})") == "/n");
    CHECK(location_of(R"({"n": 2, "polys": [[{"c": 0, "a": [1, 0]}]]})") == "/polys/0/0/c");
    CHECK(location_of(R"({"n": 2, "polys": [[{"c": 1, "a": [1, 0]}], [{"c": 1, "a": [1]}]]})") == "/polys/1/0/a");
    CHECK(location_of(R"({"n": 2, "polys": [[{"c": 1, "a": [1, 0]}, {"c": 2, "a": [1, 0]}]]})") == "/polys/0/1/a");
    CHECK(location_of(R"({"n": 2, "polys": [[{"c": "x", "a": [1, 0]}]]})") == "/polys/0/0/c");
    CHECK(location_of(R"({"n": 2, "polys": "none"})") == "/polys");
    CHECK(location_of(kHaas) == "<no error>");
}

TEST_CASE("systems survive a JSON round trip")
{
    const FewnomialSystem s = parse_system(Json::parse(kHaas));
    const Json doc = to_json(s);
    const FewnomialSystem t = parse_system(doc);
    REQUIRE(t.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        REQUIRE(t.member(i).size() == s.member(i).size());
        for (const Point& x : {Point{0.9, 0.95}, Point{0.5, 1.2}}) {
            CHECK(t.member(i).evaluate(x) == s.member(i).evaluate(x));
        }
    }
    CHECK(dump(to_json(t)) == dump(doc));
}

TEST_CASE("extended integers and non-finite numbers")
{
    CHECK(to_json(ExtendedInt{}) == Json("inf"));
    CHECK(to_json(ExtendedInt{BigInt(5)}) == Json(5));
    CHECK(to_json(ExtendedInt{BigInt(1) << 80}).is_string());
    CHECK(number(kInfinity) == Json("inf"));
    CHECK(number(-kInfinity) == Json("-inf"));
    CHECK(number(2.5) == Json(2.5));
}

TEST_CASE("corpus entries are validated")
{
    const Json good = Json::parse(R"({"name": "x", "claim": "y", "pipeline": "count",
        "system": {"n": 1, "polys": [[{"c": 1, "a": [2]}, {"c": -3, "a": [1]}, {"c": 2, "a": [0]}]]},
        "expect": {"count": 2, "roots": [[1], [2]], "tol": 1e-9}})");
    const CorpusEntry e = parse_corpus_entry(good);
    CHECK(e.pipeline == Pipeline::Count);
    const CorpusOutcome o = run_corpus_entry(e);
    CHECK(o.pass);

    Json bad = good;
    bad["pipeline"] = "guess";
    CHECK_THROWS_AS(parse_corpus_entry(bad), SchemaError);
    bad = good;
    bad.erase("expect");
    CHECK_THROWS_AS(parse_corpus_entry(bad), SchemaError);
    bad = good;
    bad["system"]["polys"][0][0]["c"] = 0;
    try {
        parse_corpus_entry(bad);
        FAIL("expected a schema error");
    } catch (const SchemaError& err) {
        CHECK(err.location == "/system/polys/0/0/c");
    }

    Json wrong = good;
    wrong["expect"]["count"] = 3;
    CHECK_FALSE(run_corpus_entry(parse_corpus_entry(wrong)).pass);
}

TEST_CASE("the shipped corpus passes")
{
    const std::vector<CorpusEntry> entries = load_corpus(FEWNOMIAL_CORPUS_DIR);
    CHECK(entries.size() >= 15);
    CorpusRunOptions options;
    options.components.grid = 512;
    const std::vector<CorpusOutcome> outcomes = run_corpus(entries, options);
    REQUIRE(outcomes.size() == entries.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        CHECK(outcomes[i].name == entries[i].name);
        CHECK_MESSAGE(outcomes[i].pass, outcomes[i].name << ": " << outcomes[i].detail);
    }
}

TEST_CASE("command-line exit codes and determinism")
{
    TempDir tmp;
    const fs::path haas = tmp.write("haas.json", kHaas);
    const fs::path broken = tmp.write("broken.json", R"({"n": 2, "polys": [[{"c": 0, "a": [1, 0]}]]})");
    const fs::path malformed = tmp.write("malformed.json", "{not json");

    SUBCASE("count")
    {
        const RunResult a = run_cli("--json count " + haas.string());
        CHECK(a.code == 0);
        const Json doc = Json::parse(a.out);
        CHECK(doc["roots"].size() == 5);
        const RunResult b = run_cli("--json count " + haas.string());
        CHECK(a.out == b.out);
    }
    SUBCASE("schema errors")
    {
        CHECK(run_cli("count " + broken.string()).code == 2);
        CHECK(run_cli("count " + malformed.string()).code == 2);
        CHECK(run_cli("count " + (tmp.path / "missing.json").string()).code == 2);
        CHECK(run_cli("frobnicate").code == 2);
    }
    SUBCASE("bound and classify")
    {
        const RunResult b = run_cli("--json bound " + haas.string());
        CHECK(b.code == 0);
        CHECK(Json::parse(b.out)["roots"]["value"] == Json(5));
        CHECK(run_cli("classify " + haas.string()).code == 0);
        const RunResult r = run_cli("reduce " + haas.string());
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["form"] == "trinomial-canonical");
    }
    SUBCASE("components with SVG output")
    {
        const fs::path lines = tmp.write(
            "lines.json", R"({"n": 2, "polys": [[{"c": 1, "a": [0, 2]}, {"c": -3, "a": [1, 1]}, {"c": 2, "a": [2, 0]}]]})");
        const fs::path svg = tmp.path / "lines.svg";
        const RunResult r = run_cli("--grid 256 --json --svg " + svg.string() + " components " + lines.string());
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["components"]["non_compact"] == 2);
        std::ifstream in(svg);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str().rfind("<svg", 0) == 0);
        CHECK(run_cli("plot " + lines.string()).code == 2);
    }
    SUBCASE("verify uses the corpus directory from the environment")
    {
        CHECK(run_cli("verify").code == 0);
        const fs::path dir = tmp.path / "corpus";
        fs::create_directories(dir);
        std::ofstream(dir / "wrong.json") << R"({"name": "wrong", "claim": "deliberately wrong", "pipeline": "count",
            "system": )" << kHaas << R"(, "expect": {"count": 4}})";
        CHECK(run_cli("verify --corpus " + std::string(FEWNOMIAL_CORPUS_DIR)).code == 0);
        CHECK(run_cli("verify", "FEWNOMIAL_CORPUS=" + dir.string()).code == 1);
        CHECK(run_cli("verify --corpus " + std::string(FEWNOMIAL_CORPUS_DIR), "FEWNOMIAL_CORPUS=" + dir.string()).code == 1);
    }
}
