/**
 * Closed-form bounds on root counts, connected components and curve features
 * of fewnomial systems, evaluated in exact integer arithmetic.
 *
 * Every bound is reported together with the list of rules that produced a
 * candidate value; the reported value is the smallest candidate.  Generators
 * for the explicit systems that realise the known lower bounds live here too.
 */

#ifndef FEWNOMIAL_BOUNDS_HPP
#define FEWNOMIAL_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fewnomial/core.hpp"
#include "fewnomial/univar.hpp"

namespace fewnomial {

/** Integer or +infinity (nullopt). */
using ExtendedInt = std::optional<BigInt>;

std::string to_string(const ExtendedInt& v);
/** min over extended integers, infinity being the largest element. */
ExtendedInt ext_min(const ExtendedInt& a, const ExtendedInt& b);

enum class BoundKind { Roots, Components, CompactComponents, NonCompactComponents, Inflections, VerticalTangents };

std::string to_string(BoundKind kind);

struct BoundStep {
    std::string rule;    ///< short identifier of the rule that produced the value
    std::string inputs;  ///< the parameters the rule was evaluated at
    ExtendedInt value;
    std::string note;    ///< hypotheses or substitutions made by the rule
};

struct BoundReport {
    BoundKind kind = BoundKind::Roots;
    ExtendedInt value;  ///< minimum over the trail
    std::vector<BoundStep> trail;

    explicit BoundReport(BoundKind k = BoundKind::Roots) : kind(k) {}
    /** Appends a rule and lowers value if the new candidate is smaller. */
    void add(std::string rule, std::string inputs, ExtendedInt v, std::string note = {});
    /** Appends every entry of another report (same kind expected). */
    void merge(const BoundReport& other);
    bool finite() const { return value.has_value(); }
};

/** (n+1)^mu 2^{mu(mu-1)/2}: non-degenerate roots of a mu-sparse n x n system. */
BigInt khovanski_fewnomial(int n, int mu);

/** 2^{mu(mu-1)/2} (1 + sum D_i)^mu prod D_i for degree-D_i polynomials in x and mu monomials. */
BigInt khovanski_mixed(int n, int mu, const std::vector<int>& degrees);

/**
 * Best known value for K(n, mu), the maximal number of isolated positive roots
 * of a mu-sparse n x n system: 0 for mu <= 1, 1 for mu <= n + 1, mu - 1 for
 * n = 1, 5 for (2, 4), the explicit Khovanski bound otherwise.
 */
BoundReport sparse_root_bound(int n, int mu);

/**
 * Bound from the type (m_1, ..., m_n) alone: members with at most one term,
 * peeling of binomials, the univariate rule of signs, (3,3) and (3,m) pairs,
 * and the sparse bound with mu = sum m_i - n + 1.
 */
BoundReport type_root_bound(std::vector<std::size_t> type);

/** 4 Area(Newt p) + 2D + 1 for a trinomial paired with p(x^r y^s, x^u y^v). */
BigInt part_c_bound(const BigInt& area, const BigInt& degree);

/** A second member of the form p(x^{g1}, x^{g2}) with Area(Newt p) and deg p. */
struct PolynomialStructure {
    long long area = 0;  ///< normalized area (unit square = 2)
    long long degree = 0;
    ExponentVector g1;
    ExponentVector g2;
};

/**
 * Searches for generators g1, g2 (differences of support points) such that
 * every exponent of f is a non-negative integer combination of them after
 * division by one term; returns the choice with the smallest part-(c) bound.
 */
std::optional<PolynomialStructure> detect_polynomial_structure(const Fewnomial& f);

struct BoundHints {
    /** Declared structure of the non-trinomial member of a 2 x 2 system. */
    std::optional<PolynomialStructure> structure;
};

/**
 * Structure-aware root bound: evaluates every applicable rule (mixed volume
 * zero, shared n + 1 points, pyramidal, trinomial pairs, the n + n^2 + ...
 * shape, the trinomial-with-polynomial shape, binomial peeling, sparsity) and
 * returns the minimum together with the full trail.
 */
BoundReport best_root_bound(const FewnomialSystem& system, const BoundHints& hints = {});

/** Number of edges of Newt(f1) + Newt(f2) and the matching root bound for a (3,3) pair. */
struct PolygonClass {
    int edges = 0;  ///< 0 for a point, 1 for a segment
    BoundReport bound;
};

PolygonClass polygon_class_bound(const FewnomialSystem& system);

struct ComponentBoundOptions {
    bool smooth = false;            ///< Z_+(f) known to be smooth (drops a factor 2 for compact components)
    bool facet_refinement = true;   ///< use the facet-sum bound for non-compact components when n = 2
};

struct ComponentBounds {
    BigInt compact_lower = 0;
    BigInt non_compact_lower = 0;
    std::vector<BoundStep> lower_trail;
    BoundReport compact{BoundKind::CompactComponents};
    BoundReport non_compact{BoundKind::NonCompactComponents};
    BoundReport total{BoundKind::Components};
};

/** Bounds on the components of the positive zero set of an n-variate m-nomial. */
ComponentBounds component_bounds(int n, int m, const ComponentBoundOptions& options = {});

/** floor(2^{n-1/2} (2n+1)^mu 2^{mu(mu+1)/2}): components of a mu-sparse system. */
BigInt finite_components_bound(int n, int mu);

/**
 * Non-compact components via the facets of Newt(f): sum over facets Q of
 * P(n-1, #Supp(f) on Q); for n = 2 and assume_smooth also floor(m'/2), m' the
 * number of support points on the boundary.  Throws NotApplicableError when
 * Newt(f) is not full-dimensional.
 */
BoundReport moment_facet_bound(const Fewnomial& f, bool assume_smooth = false);

/** Optional description of a curve f = p(x^{g1}, x^{g2}). */
struct CurveFamily {
    std::optional<long long> area;  ///< normalized area of Newt(p)
};

struct CurveFeatureBounds {
    BoundReport vertical{BoundKind::VerticalTangents};
    BoundReport inflections{BoundKind::Inflections};
};

/** Isolated vertical tangents and inflection points of a smooth m-nomial curve. */
CurveFeatureBounds curve_feature_bounds(int m, const CurveFamily& family = {});

enum class WitnessKind { G1, G2, H1, H2, EqEasy, EqDegen };

std::string to_string(WitnessKind kind);
std::optional<WitnessKind> witness_kind_from_string(const std::string& s);

struct Witness {
    WitnessKind kind = WitnessKind::EqEasy;
    FewnomialSystem system;
    /** What expected_count counts: "isolated points", "non-compact components" or "roots". */
    std::string counts;
    std::size_t expected_count = 0;
    /** The closed-form lower bound the construction is meant to realise. */
    BigInt formula_value = 0;
    std::vector<Point> known_roots;  ///< explicit zeros when they are isolated points
};

/**
 * Explicit systems with integer coefficients:
 *   g1, g2  single n-variate polynomials with isolated positive zeros,
 *   h1, h2  single polynomials whose zero sets are unions of parallel flats,
 *   eq-easy the system (prod_{i<m} (x_j - i))_j with (m-1)^n roots,
 *   eq-degen the trivariate system with 25 degenerate roots (n, m ignored).
 * Throws ValidationError when the construction is empty for (n, m).
 */
Witness make_witness(WitnessKind kind, int n, int m);

}  // namespace fewnomial

#endif
