/**
 * JSON reading and writing of systems and reports.
 *
 * System documents have the shape
 *   { "n": int, "polys": [ [ {"c": float, "a": [float x n]}, ... ], ... ] }.
 * Reports are written with a fixed key order so that identical inputs give
 * byte-identical output.  Infinite values are written as the string "inf".
 */

#ifndef FEWNOMIAL_JSON_IO_HPP
#define FEWNOMIAL_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "fewnomial/bounds.hpp"
#include "fewnomial/core.hpp"
#include "fewnomial/curves.hpp"
#include "fewnomial/reduce.hpp"

namespace fewnomial {

using Json = nlohmann::ordered_json;

/** A schema violation; location is a JSON pointer to the offending value. */
class SchemaError : public ValidationError {
  public:
    SchemaError(const std::string& location, const std::string& what)
        : ValidationError(location + ": " + what), location(location) {}
    std::string location;
};

/**
 * Parses a system document.  Zero coefficients, duplicated exponent vectors
 * within a member, wrong exponent lengths and non-finite numbers are schema
 * errors.  The system need not be square.
 */
FewnomialSystem parse_system(const Json& doc, const std::string& location = "");

/** Reads and parses a file; unreadable files and malformed JSON are SchemaErrors at "". */
Json read_json_file(const std::string& path);
FewnomialSystem read_system_file(const std::string& path);

Json to_json(const Fewnomial& f);
Json to_json(const FewnomialSystem& system);
Json to_json(const ExtendedInt& v);
Json to_json(const BoundReport& report);
Json to_json(const ComponentBounds& bounds);
Json to_json(const RootReport& report);
Json to_json(const SystemRootReport& report);
Json to_json(const ComponentReport& report, bool with_traces = false);
Json to_json(const FacetCertificate& certificate);
Json to_json(const CurveFeatureCount& count);
Json to_json(const TrinomialCanonical& canonical);
Json to_json(const LinearFormProduct& f);

/** Finite doubles as numbers, infinities as "inf" / "-inf". */
Json number(double v);

/** Compact, deterministic serialization followed by a newline. */
std::string dump(const Json& doc, bool pretty = true);

}  // namespace fewnomial

#endif
