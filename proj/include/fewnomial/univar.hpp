/**
 * Univariate root isolation for
 *   - exponential sums  sum c_i x^{a_i}  (real exponents), and
 *   - linear-form products  sum_i p_i(L(t)) prod_j L_j(t)^{alpha_ij}  with
 *     L_j(t) = u_j + v_j t and p_i homogeneous polynomials.
 *
 * Both use the same Rolle chain: divide by a positive factor, differentiate,
 * isolate the roots of the derivative recursively, then bracket the roots of
 * the function between consecutive critical points.  Each bracket holds at
 * most one root because the function is monotone there.
 */

#ifndef FEWNOMIAL_UNIVAR_HPP
#define FEWNOMIAL_UNIVAR_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fewnomial/core.hpp"

namespace fewnomial {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kRootTol = 1e-12;
inline constexpr double kResidualTol = 1e-10;
/** |f(c)| below this fraction of the term magnitude at a critical point c marks a suspect root. */
inline constexpr double kSuspectTol = 1e-10;
inline constexpr int kDegreeCap = 10000;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/** Number of sign changes in the sequence, zeros skipped. */
int sign_alternations(const std::vector<double>& coeffs);

/** sum c_i x^{a_i} with strictly increasing exponents. */
class ExponentialSum {
  public:
    ExponentialSum() = default;
    /** Sorts by exponent and merges exponents closer than kExponentTol. */
    ExponentialSum(std::vector<double> coeffs, std::vector<double> exponents);

    std::size_t size() const { return coeffs_.size(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::vector<double>& exponents() const { return exponents_; }

    double evaluate(double x) const;
    /** Evaluation at x = exp(s). */
    ScaledValue evaluate_log(double s) const;

  private:
    std::vector<double> coeffs_;
    std::vector<double> exponents_;
};

int descartes_bound(const ExponentialSum& f);

struct RootEntry {
    double t = 0.0;
    double residual = 0.0;  ///< |f(t)| divided by the sum of the absolute values of its addends
    bool suspect = false;   ///< sign-touching (possibly multiple) root
    /** The sign change was narrowed to neighbouring doubles; the residual then reflects rounding of t. */
    bool at_resolution = false;
};

struct RootReport {
    double lo = 0.0;
    double hi = kInfinity;
    std::vector<RootEntry> roots;
    bool certified = false;
    bool continuum = false;       ///< the function vanishes identically on the interval
    std::size_t count_low = 0;    ///< lower end of the root count range
    std::size_t count_high = 0;   ///< upper end of the root count range
    BigInt bound = 0;             ///< bound certifying completeness
    std::string bound_source;
    std::vector<std::string> diagnostics;

    std::vector<double> values() const;
};

/** Isolates the roots of f in the open interval (lo, hi), 0 <= lo < hi <= inf. */
RootReport isolate_expsum_roots(const ExponentialSum& f, double lo = 0.0, double hi = kInfinity);

struct LinearForm {
    double u = 0.0;
    double v = 0.0;
    double operator()(double t) const { return u + v * t; }
};

/** Homogeneous polynomial in n symbols S_1..S_n, stored by exponent tuple. */
class HomogeneousPolynomial {
  public:
    HomogeneousPolynomial() = default;
    explicit HomogeneousPolynomial(std::size_t nvars) : n_(nvars) {}
    static HomogeneousPolynomial constant(std::size_t nvars, double c);

    std::size_t variables() const { return n_; }
    /** Total degree, or -1 for the zero polynomial. */
    int degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<std::vector<int>, double>& coeffs() const { return coeffs_; }

    void add(const std::vector<int>& exponent, double c);
    double evaluate(const std::vector<double>& s) const;
    /** Appends (sign, log|addend|) of every monomial at the given positive point. */
    void collect_log_addends(const std::vector<double>& log_s, double extra_log, std::vector<double>& signs,
                             std::vector<double>& logs) const;
    /** sum_j v_j d p / d S_j. */
    HomogeneousPolynomial directional_derivative(const std::vector<double>& v) const;
    /** Coefficients of p(a + eps b) as a polynomial in eps (index = power of eps). */
    std::vector<double> restrict_to_line(const std::vector<double>& a, const std::vector<double>& b) const;

  private:
    std::size_t n_ = 0;
    std::map<std::vector<int>, double> coeffs_;
};

struct LfpTerm {
    HomogeneousPolynomial p;
    std::vector<double> alpha;  ///< real exponents of the linear forms
};

/** sum_i p_i(L(t)) prod_j L_j(t)^{alpha_ij}. */
struct LinearFormProduct {
    std::vector<LinearForm> forms;
    std::vector<LfpTerm> terms;

    std::size_t size() const { return terms.size(); }
    /** Largest degree of the coefficient polynomials. */
    int degree() const;
    /** {t > 0 : L_j(t) > 0 for all j}; returns nullopt when empty. */
    std::optional<std::pair<double, double>> default_interval() const;
    ScaledValue evaluate_scaled(double t) const;
    double evaluate(double t) const;
    /** Value of a single term at t. */
    double evaluate_term(std::size_t i, double t) const;
};

/**
 * d/dt [p(L(t)) prod L_j^{alpha_j}] = q(L(t)) prod L_j^{alpha_j - 1} with
 * q = (sum_j v_j d_j p) S_1...S_n + p sum_i alpha_i v_i S_1...S_n / S_i.
 * The returned term has q (possibly zero) and exponents alpha - 1.
 */
LfpTerm lfp_differentiate(const LfpTerm& term, const std::vector<LinearForm>& forms);

struct RolleBound {
    BigInt recursion;    ///< unrolled A(m, D) with A(1, D) = D
    BigInt closed_form;  ///< (1 + n + ... + n^m)(D + 1) - 1
};

RolleBound rolle_bound(int m, int n, int d);

/**
 * Isolates the roots of f in the open interval I (default: where t and every
 * form are positive).  Roots closer than 10 * kRootTol * max(1, |e|) to a
 * finite endpoint e are excluded.
 */
RootReport isolate_lfp_roots(const LinearFormProduct& f,
                             std::optional<std::pair<double, double>> interval = std::nullopt);

}  // namespace fewnomial

#endif
