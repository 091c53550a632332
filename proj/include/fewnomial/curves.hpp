/**
 * Plane curves Z_+(f) = {x in R^2_+ : f(x) = 0} of bivariate fewnomials:
 *   - the polynomial systems whose roots are inflection points and points of
 *     vertical tangency,
 *   - intersections with straight lines,
 *   - the momentum map of a polytope and its inverse,
 *   - numerical tracing of the connected components in log coordinates with
 *     attribution of every unbounded branch to an edge of Newt(f).
 */

#ifndef FEWNOMIAL_CURVES_HPP
#define FEWNOMIAL_CURVES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fewnomial/bounds.hpp"
#include "fewnomial/core.hpp"
#include "fewnomial/polytope.hpp"
#include "fewnomial/reduce.hpp"

namespace fewnomial {

/**
 * x1^2 x2^2 (f11 f2^2 - 2 f12 f1 f2 + f22 f1^2), written with the log
 * derivatives D_i = x_i d_i so that every term stays of the form c x^a:
 *   (D1^2 f - D1 f)(D2 f)^2 - 2 (D1 D2 f)(D1 f)(D2 f) + (D2^2 f - D2 f)(D1 f)^2.
 * On Z_+(f) it vanishes exactly at inflection and singular points.
 */
Fewnomial inflection_form(const Fewnomial& f);

/** (f, x2 d2 f): its roots are the singular points and points of vertical tangency. */
FewnomialSystem vertical_tangency_system(const Fewnomial& f);

struct CurveFeatureCount {
    std::size_t inflections = 0;
    std::size_t vertical_tangents = 0;
    bool inflections_certified = false;
    bool vertical_certified = false;
    /** The feature system has a positive-dimensional solution set (only isolated points are counted). */
    bool inflection_locus_curve = false;
    bool vertical_locus_curve = false;
    std::string path;  ///< how the counts were obtained
    CurveFeatureBounds bounds;
    bool within_bounds = true;
    std::vector<Point> inflection_points;
    std::vector<Point> vertical_points;
    std::vector<std::string> diagnostics;
};

/**
 * Isolated inflection points and vertical tangents of Z_+(f).  A support on a
 * line gives a union of binomial curves with neither.  Otherwise the 2 x 2
 * feature systems are solved by count_roots (certified for trinomials).
 */
CurveFeatureCount count_curve_features(const Fewnomial& f, const DeskOptions& options = {});

/** I + N + V + 1: the most finitely many points a line can share with such a curve. */
BigInt line_intersection_bound(const BigInt& inflections, const BigInt& non_compact, const BigInt& vertical);

/** The line m1 x1 + m2 x2 = m0 in the original coordinates. */
struct Line {
    double m1 = 0.0;
    double m2 = 1.0;
    double m0 = 0.0;
};

struct LineCheck {
    std::size_t count = 0;
    std::vector<Point> points;
    bool indeterminate = false;  ///< the line overlaps the curve or isolation was not certified
    bool pass = true;            ///< count <= bound (true when indeterminate)
    std::vector<std::string> diagnostics;
};

/** Counts the points of Z_+(f) on the line (certified univariate isolation) and compares with bound. */
LineCheck check_line_intersections(const Fewnomial& f, const Line& line, const ExtendedInt& bound);

/** sum_p p x^p / sum_p x^p over the vertices p of P; always in the interior of P. */
Point momentum_map(const std::vector<Point>& vertices, const Point& x);
Point momentum_map(const Polygon& polygon, const Point& x);

/**
 * Inverse of the momentum map by damped Newton iteration in log coordinates.
 * Throws DomainError when the point is not at least tol inside P, and
 * NotApplicableError when P is not full-dimensional.
 */
Point momentum_inverse(const std::vector<Point>& vertices, const Point& q, double tol = 1e-9);
Point momentum_inverse(const Polygon& polygon, const Point& q, double tol = 1e-9);

/** One end of a traced branch leaving the window. */
struct BranchEnd {
    Point2 point{};      ///< where the trace meets the window boundary (log coordinates)
    Point2 direction{};  ///< unit escape direction in log coordinates
    int edge = -1;       ///< edge of Newt(f) (index into ComponentReport::edges) the end is attributed to
};

struct TracedComponent {
    std::vector<Point2> trace;  ///< polyline in log coordinates, from the largest window traced
    bool touches_boundary = false;
    bool compact = false;
    bool stable = true;  ///< classification unchanged when the window is doubled
    std::vector<BranchEnd> ends;
};

/** Edge of Newt(f) with its unit inner normal. */
struct NewtonEdge {
    Point2 normal{};
    std::vector<ExponentVector> points;  ///< support points on the edge
};

struct ComponentOptions {
    double window = 12.0;  ///< half-width of the square window in log coordinates
    int grid = 1024;       ///< cells per axis
    bool confirm = true;   ///< re-run on the doubled window to confirm compactness
};

struct ComponentReport {
    std::size_t compact = 0;
    std::size_t non_compact = 0;
    std::size_t indeterminate = 0;  ///< classification changed under window doubling
    std::vector<TracedComponent> components;
    std::vector<NewtonEdge> edges;
    bool certified = true;  ///< no persistent sign ambiguity at grid nodes
    double window = 0.0;
    int grid = 0;
    std::vector<std::string> diagnostics;
};

/**
 * Marching squares on z -> f(e^z) over [-W, W]^2 with union-find over the
 * contour crossings.  Only sign-changing zero sets are visible: isolated
 * zeros where f keeps its sign are not traced.
 */
ComponentReport count_components(const Fewnomial& f, const ComponentOptions& options = {});

struct FacetInitialCount {
    Point2 normal{};
    Fewnomial initial;
    std::size_t roots = 0;      ///< positive roots of the initial form (as a univariate fewnomial)
    bool available = true;      ///< false when the initial form has a degenerate positive root
    std::string note;
};

struct FacetCertificate {
    std::vector<FacetInitialCount> facets;
    bool available = true;       ///< every facet certified
    std::size_t ends = 0;        ///< sum of N_w over certified facets: escape directions of branches
    std::size_t paired = 0;      ///< floor(ends / 2): each non-compact component has two ends
    std::optional<std::size_t> traced_non_compact;
    bool consistent = true;      ///< traced count <= paired (checked only when available)
    std::vector<std::string> diagnostics;
};

/**
 * For each edge normal w of Newt(f), N_w = number of positive roots of
 * Init_w(f) reduced to one variable.  When a report is given, checks that its
 * non-compact count does not exceed the paired count.
 */
FacetCertificate facet_component_certificate(const Fewnomial& f, const ComponentReport* traced = nullptr);

}  // namespace fewnomial

#endif
