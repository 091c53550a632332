/**
 * Newton polytopes: planar hulls, Minkowski sums and normalized area, small
 * dimensional facet descriptions, initial forms, and the combinatorial tests
 * for mixed volume zero and pyramidal (complete flag) structure.
 */

#ifndef FEWNOMIAL_POLYTOPE_HPP
#define FEWNOMIAL_POLYTOPE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "fewnomial/core.hpp"

namespace fewnomial {

inline constexpr double kGeometryTol = 1e-9;
inline constexpr double kRankTol = 1e-8;

using Point2 = std::array<double, 2>;

/** Convex polygon with counter-clockwise vertices (1 vertex = point, 2 = segment). */
struct Polygon {
    std::vector<Point2> vertices;

    /** -1 for empty, 0 for a point, 1 for a segment, 2 for a proper polygon. */
    int dimension() const;
};

/** Monotone-chain convex hull; collinear and duplicate points are discarded. */
Polygon convex_hull_2d(std::vector<Point2> points);
/** Newton polygon of a bivariate fewnomial. */
Polygon newton_polygon(const Fewnomial& f);
/** Minkowski sum by merging the edge sequences of both polygons. */
Polygon minkowski_sum(const Polygon& p, const Polygon& q);
/** Twice the Euclidean area, so that the unit square has area 2. */
double normalized_area(const Polygon& p);

/** A facet: unit inner normal w (in the span of the polytope), offset = min w.p. */
struct Facet {
    std::vector<double> normal;
    double offset = 0.0;
    std::vector<std::size_t> vertices;  ///< indices into PolytopeInfo::vertices
    std::vector<std::size_t> points;    ///< indices into PolytopeInfo::points lying on the facet
};

/** Vertex/facet description of the convex hull of a small point set (ambient n <= 4). */
struct PolytopeInfo {
    std::size_t ambient = 0;
    std::vector<Point> points;    ///< distinct input points
    std::vector<Point> vertices;  ///< extreme points
    int dimension = -1;           ///< intrinsic dimension of the affine hull
    std::vector<Facet> facets;    ///< facets relative to the affine hull

    /** True when the point lies on no facet (the relative interior). */
    bool in_relative_interior(const Point& p) const;
};

PolytopeInfo polytope_info(const std::vector<Point>& points);
PolytopeInfo newton_polytope(const Fewnomial& f);

/** Numerical rank of a set of vectors (singular values above kRankTol relative). */
int span_rank(const std::vector<Point>& vectors);
/** Dimension of the affine hull of a point set. */
int affine_dimension(const std::vector<Point>& points);

/** Sum of the terms of f whose exponents minimise a.w (within 1e-9 (1 + |min|)). */
Fewnomial initial_form(const Fewnomial& f, const std::vector<double>& w);

struct MixedVolumeZeroWitness {
    bool zero = false;
    std::vector<std::size_t> subset;  ///< members whose polytopes fit in a low-dimensional subspace
    int subspace_dimension = 0;
};

/**
 * Tests whether some subset T of the polytopes (given by their point sets)
 * has all its edge directions in a subspace of dimension <= |T| - 1.
 */
MixedVolumeZeroWitness mixed_volume_zero(const std::vector<std::vector<Point>>& supports);
MixedVolumeZeroWitness mixed_volume_zero(const FewnomialSystem& system);

/** Ordering of the members together with the dimensions of the generated subspaces. */
struct FlagCertificate {
    std::vector<std::size_t> ordering;
    std::vector<int> dimensions;
};

/**
 * Returns an ordering sigma such that the Newton polytopes of the first i
 * members span a subspace of dimension exactly i, for every i, if one exists.
 */
std::optional<FlagCertificate> is_pyramidal(const FewnomialSystem& system);

/** Common points and per-support translations found by place_in_common_points. */
struct SupportPlacement {
    std::vector<Point> points;
    std::vector<ExponentVector> shifts;  ///< shifts[i] + supports[i] is contained in points
};

/**
 * Searches for translations b_i such that the union of the b_i + supports[i]
 * consists of exactly cap affinely independent points.
 */
std::optional<SupportPlacement> place_in_common_points(const std::vector<std::vector<Point>>& supports,
                                                       std::size_t cap);

struct OverdetCheck {
    bool simplicial = false;           ///< every facet is a simplex
    bool support_vertex_only = false;  ///< no support point in the relative interior of a proper face
    bool holds() const { return simplicial && support_vertex_only; }
};

OverdetCheck overdet_smoothness_check(const Fewnomial& f);

}  // namespace fewnomial

#endif
