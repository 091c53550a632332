/**
 * Sparse real-exponent polynomials ("fewnomials") over the positive orthant.
 *
 * A fewnomial is a finite sum of terms c * x^a where a is an arbitrary real
 * exponent vector.  Point evaluation multiplies powers directly (exact for
 * small integer data) and falls back to exp/log when a power leaves the
 * double range; evaluate_log works entirely in log coordinates.
 */

#ifndef FEWNOMIAL_CORE_HPP
#define FEWNOMIAL_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fewnomial {

/** Max-norm distance below which two exponent vectors are considered equal. */
inline constexpr double kExponentTol = 1e-9;
/** A merged coefficient smaller than this times the largest contributor is dropped. */
inline constexpr double kMergeDropTol = 1e-15;

/** Input outside the domain of an operation (e.g. a non-positive coordinate). */
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/** An addend evaluated to an infinite or NaN value. */
class OverflowError : public std::runtime_error {
  public:
    OverflowError(const std::string& what, std::size_t term)
        : std::runtime_error(what), term_index(term) {}
    std::size_t term_index;
};

/** Malformed input data: duplicate exponents, zero coefficients, bad shapes. */
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/** A structural precondition of an algorithm does not hold for the input. */
class NotApplicableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using ExponentVector = std::vector<double>;
using Point = std::vector<double>;

struct Term {
    double coeff = 0.0;
    ExponentVector exponent;
};

/** True when two exponent vectors agree within kExponentTol in the max norm. */
bool same_exponent(const ExponentVector& a, const ExponentVector& b, double tol = kExponentTol);

/**
 * Error-free-transform (Neumaier) summation.  The addends are first sorted by
 * magnitude (ties broken by value), which makes the result independent of the
 * order in which the addends were supplied.
 */
double compensated_sum(std::vector<double> values);

/**
 * A value represented as mantissa * exp(log_factor).  Used wherever the
 * individual addends may overflow a double but their relative sizes and the
 * sign of the total are what matters.
 */
struct ScaledValue {
    double mantissa = 0.0;    ///< compensated sum of the rescaled addends
    double magnitude = 0.0;   ///< sum of absolute values of the rescaled addends
    double log_factor = 0.0;  ///< common scale, true value = mantissa * exp(log_factor)

    int sign(double rel_tol = 0.0) const;
    double value() const;
};

/**
 * Sum addends given as sign * exp(log_abs).  Entries with sign 0 are ignored.
 */
ScaledValue scaled_sum(const std::vector<double>& signs, const std::vector<double>& log_abs);

class Fewnomial {
  public:
    Fewnomial() = default;
    explicit Fewnomial(std::size_t n) : n_(n) {}
    /** Builds a fewnomial, merging terms whose exponents coincide within kExponentTol. */
    Fewnomial(std::size_t n, const std::vector<Term>& terms);

    /**
     * Builds a fewnomial from user data, rejecting zero coefficients and
     * duplicated exponent vectors instead of merging them.
     */
    static Fewnomial from_terms_strict(std::size_t n, const std::vector<Term>& terms);
    static Fewnomial constant(std::size_t n, double c);
    static Fewnomial monomial(double c, const ExponentVector& a);

    std::size_t dimension() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& term(std::size_t i) const { return terms_.at(i); }
    std::vector<ExponentVector> support() const;

    /** Adds c * x^a, merging with an existing term of (numerically) equal exponent. */
    void add_term(double c, const ExponentVector& a);

    /** f(x) = sum c x^a with compensated summation. */
    double evaluate(const Point& x) const;
    /** Evaluation in log coordinates z = log x, robust to overflow of individual terms. */
    ScaledValue evaluate_log(const Point& z) const;
    /** Sum of |c x^a|, the natural scale for residuals. */
    double term_scale(const Point& x) const;
    /** (x_1 d_1 f, ..., x_n d_n f) at x. */
    std::vector<double> log_gradient(const Point& x) const;

    /** The fewnomial x_i d_i f (same support, coefficients scaled by a_i). */
    Fewnomial log_derivative(std::size_t i) const;
    /** The fewnomial d_i f. */
    Fewnomial partial(std::size_t i) const;
    /** Multiply by the monomial c x^shift. */
    Fewnomial times_monomial(double c, const ExponentVector& shift) const;
    Fewnomial scaled(double s) const;

    Fewnomial operator+(const Fewnomial& other) const;
    Fewnomial operator-(const Fewnomial& other) const;
    Fewnomial operator*(const Fewnomial& other) const;
    Fewnomial operator-() const { return scaled(-1.0); }

    /** Terms sorted lexicographically by exponent; used for canonical output. */
    Fewnomial sorted() const;

  private:
    void check_point(const Point& x) const;

    std::size_t n_ = 0;
    std::vector<Term> terms_;
};

Fewnomial pow(const Fewnomial& f, unsigned k);

class FewnomialSystem {
  public:
    FewnomialSystem() = default;
    FewnomialSystem(std::size_t n, std::vector<Fewnomial> members);

    std::size_t dimension() const { return n_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Fewnomial>& members() const { return members_; }
    const Fewnomial& member(std::size_t i) const { return members_.at(i); }

    /** (m_1, ..., m_k): number of terms of each member. */
    std::vector<std::size_t> type_signature() const;
    /** Number of distinct exponent vectors across all members. */
    std::size_t sparsity() const;
    /** Absolute residual of each member at x. */
    std::vector<double> residuals(const Point& x) const;
    /** Residual of each member divided by its term scale at x. */
    std::vector<double> relative_residuals(const Point& x) const;

  private:
    std::size_t n_ = 0;
    std::vector<Fewnomial> members_;
};

}  // namespace fewnomial

#endif
