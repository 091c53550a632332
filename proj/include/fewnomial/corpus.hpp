/**
 * Corpus of worked examples with expected outcomes, and the runner that
 * checks each entry through exactly one pipeline.
 *
 * An entry is a JSON object
 *   { "name": str, "claim": str, "pipeline": "count" | "components" | "evaluate" | "univariate",
 *     "system": <system document>            (count, components, evaluate)
 *     "canonical": {"A","B","a","b","c","d"}  (univariate)
 *     "expect": { ... } }
 * with expectations
 *   count       "count" | "count_max", optional "roots" + "tol", optional "max_residual"
 *   components  any of "compact", "non_compact", "total"
 *   evaluate    "points", "max_residual"
 *   univariate  "count", optional "roots" + "tol"
 */

#ifndef FEWNOMIAL_CORPUS_HPP
#define FEWNOMIAL_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fewnomial/curves.hpp"
#include "fewnomial/json_io.hpp"
#include "fewnomial/reduce.hpp"

namespace fewnomial {

enum class Pipeline { Count, Components, Evaluate, Univariate };

std::string to_string(Pipeline p);

struct CorpusEntry {
    std::string name;
    std::string claim;
    Pipeline pipeline = Pipeline::Count;
    Json system;     ///< system document (validated when the entry is parsed)
    Json canonical;  ///< canonical univariate parameters
    Json expect;
    std::string source;  ///< file the entry was read from
};

/** Validates the entry shape, including the embedded system; throws SchemaError. */
CorpusEntry parse_corpus_entry(const Json& doc, const std::string& source = "");

/** Every *.json file of a directory, in file-name order. */
std::vector<CorpusEntry> load_corpus(const std::string& dir);

struct CorpusRunOptions {
    DeskOptions desk;
    ComponentOptions components;
    /** Overrides the tolerances stored in the entries when set. */
    std::optional<double> tol;
    /** Run entries concurrently (results are reported in entry order either way). */
    bool parallel = true;
};

struct CorpusOutcome {
    std::string name;
    Pipeline pipeline = Pipeline::Count;
    bool pass = false;
    bool indeterminate = false;  ///< the pipeline could not decide (not certified / unstable)
    std::string detail;          ///< observed values and the first failed expectation
    double seconds = 0.0;
};

CorpusOutcome run_corpus_entry(const CorpusEntry& entry, const CorpusRunOptions& options = {});
std::vector<CorpusOutcome> run_corpus(const std::vector<CorpusEntry>& entries, const CorpusRunOptions& options = {});

}  // namespace fewnomial

#endif
