/**
 * Monomial changes of variables x = y^A, coordinate scalings and term
 * divisions, recorded as a replayable map so that roots found in transformed
 * coordinates can be carried back to the original ones.
 *
 * Convention: under x = y^A (x_j = prod_i y_i^{A_ij}) a monomial x^a becomes
 * y^{A a}; in logarithmic coordinates log x = A^T log y.
 */

#ifndef FEWNOMIAL_TRANSFORM_HPP
#define FEWNOMIAL_TRANSFORM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "fewnomial/core.hpp"

namespace fewnomial {

/** Relative determinant threshold below which a monomial map is singular. */
inline constexpr double kDeterminantTol = 1e-10;
/** Condition number above which a monomial map is flagged in the warnings. */
inline constexpr double kConditionWarn = 1e8;

class SingularMapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<double>>;  // row-major, square

Matrix identity_matrix(std::size_t n);
Matrix matrix_product(const Matrix& a, const Matrix& b);
Matrix matrix_inverse(const Matrix& a);
double matrix_determinant(const Matrix& a);
double matrix_condition(const Matrix& a);

struct MapStep {
    enum class Kind { Monomial, Scale, Divide };
    Kind kind = Kind::Monomial;
    Matrix matrix;                 ///< Monomial: exponent a -> matrix * a
    std::vector<double> scale;     ///< Scale: x_i = scale_i * y_i
    std::size_t member = 0;        ///< Divide: which member was divided
    double coeff = 1.0;            ///< Divide: coefficient of the divisor term
    ExponentVector exponent;       ///< Divide: exponent of the divisor term
};

class MonomialMap {
  public:
    MonomialMap() = default;
    explicit MonomialMap(std::size_t n) : n_(n) {}

    static MonomialMap monomial(const Matrix& a);

    std::size_t dimension() const { return n_; }
    const std::vector<MapStep>& steps() const { return steps_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /** Appends a change x = y^A; throws SingularMapError when |det A| is too small. */
    void add_monomial(const Matrix& a);
    /** Appends a scaling x_i = s_i y_i (all s_i > 0). */
    void add_scale(const std::vector<double>& s);
    /** Records the division of a member by the term c x^a (coordinates unchanged). */
    void add_divide(std::size_t member, double c, const ExponentVector& a);
    /** Appends every step of another map. */
    void append(const MonomialMap& other);

    /** Composite exponent matrix of all monomial steps. */
    Matrix composite_matrix() const;

    /** Original coordinates -> transformed coordinates. */
    Point forward(const Point& x) const;
    /** Transformed coordinates -> original coordinates. */
    Point inverse(const Point& y) const;

  private:
    std::size_t n_ = 0;
    std::vector<MapStep> steps_;
    std::vector<std::string> warnings_;
};

/** Applies a single monomial/scale step to a fewnomial. */
Fewnomial transform_fewnomial(const Fewnomial& f, const MapStep& step);
/** Applies every step of the map (including recorded divisions) to the system. */
FewnomialSystem apply_monomial_map(const FewnomialSystem& system, const MonomialMap& map);

/** Divides f by its index-th term so that this term becomes the constant 1. */
Fewnomial divide_by_term(const Fewnomial& f, std::size_t index);

/** Replays the inverse map; throws DomainError on a non-positive intermediate. */
std::vector<Point> back_map_roots(const std::vector<Point>& roots, const MonomialMap& map);

struct CanonicalPair {
    enum class Status { Ok, Segment, Infeasible, NotTrinomial };
    Status status = Status::NotTrinomial;
    FewnomialSystem system;  ///< (1 - x1 - x2, 1 + c1 x^alpha + c2 x^beta ...) when Ok
    MonomialMap map;         ///< original coordinates -> canonical coordinates
    std::size_t first_member = 0;  ///< index of the input member that became 1 - x1 - x2
    std::string note;
};

std::string to_string(CanonicalPair::Status status);

/**
 * Sends a 2x2 system with a triangle trinomial member to the form
 * (1 - x1 - x2, g).  When the second member is a trinomial it is divided by
 * its sign-odd term so that g = 1 - A x^alpha - B x^beta with A, B > 0.
 */
CanonicalPair canonicalize_trinomial_pair(const FewnomialSystem& system);

}  // namespace fewnomial

#endif
