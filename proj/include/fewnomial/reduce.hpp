/**
 * Root counting for square fewnomial systems over the positive orthant.
 *
 * Several exact reductions are tried in turn:
 *   - a member with at most one term, or Newton polytopes of mixed volume
 *     zero: no isolated roots;
 *   - all supports inside n + 1 points: a linear solve in the monomials;
 *   - pyramidal supports: triangular back-substitution of univariate
 *     exponential sums;
 *   - a pair of trinomials: the canonical form 1 - A t^a (1-t)^b - B t^c (1-t)^d;
 *   - n - 1 members sharing n + 1 monomials (after translation): elimination
 *     down to a univariate linear-form product.
 * Anything else goes to a seeded Newton solver whose counts are not certified.
 */

#ifndef FEWNOMIAL_REDUCE_HPP
#define FEWNOMIAL_REDUCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fewnomial/core.hpp"
#include "fewnomial/polytope.hpp"
#include "fewnomial/transform.hpp"
#include "fewnomial/univar.hpp"

namespace fewnomial {

/** f(t) = 1 - A t^a (1-t)^b - B t^c (1-t)^d on (0, 1), with A, B > 0. */
struct TrinomialCanonical {
    double A = 0.0;
    double B = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    MonomialMap map;               ///< original coordinates -> canonical coordinates (x1, x2) = (t, 1-t)
    std::size_t first_member = 0;  ///< input member that became 1 - x1 - x2
};

struct CanonicalOutcome {
    CanonicalPair::Status status = CanonicalPair::Status::NotTrinomial;
    std::optional<TrinomialCanonical> canonical;
    std::string note;
};

/** Canonical univariate form of a 2x2 system of two trinomials. */
CanonicalOutcome trinomial_canonical(const FewnomialSystem& system);

/** The canonical instance as a linear-form product in the forms (t, 1 - t). */
LinearFormProduct canonical_lfp(double A, double B, double a, double b, double c, double d);
LinearFormProduct canonical_lfp(const TrinomialCanonical& tc);

/** Sign-pattern class of (a, b, c, d) after the term-swap and t <-> 1 - t symmetries. */
enum class CaseTag { A, B, C, D, E, F, G, H };

std::string to_string(CaseTag tag);
CaseTag classify_case(double a, double b, double c, double d);

/** The two auxiliary cubics; coefficients ordered (u^3, u^2, u^1, u^0). */
struct CubicPair {
    std::array<double, 4> F{};
    std::array<double, 4> F_hat{};
    int positive_roots_F = 0;
    int positive_roots_F_hat = 0;
    int M = 0;  ///< max of the two positive-root counts
};

CubicPair cubic_F_coeffs(double a, double b, double c, double d);

/** Result of reducing a system to one linear-form product in a parameter t. */
struct UnivariateReduction {
    LinearFormProduct f;
    std::pair<double, double> interval{0.0, kInfinity};
    bool empty_interval = false;
    std::size_t free_member = 0;         ///< member that became f
    std::vector<ExponentVector> points;  ///< the n + 1 common points a_0, ..., a_n
    Matrix basis;                        ///< rows a_j - a_0, so that log y = basis * log x
    std::size_t parameter = 0;           ///< index j of the monomial y_j used as t

    /** Original coordinates of the point with parameter t. */
    Point back_map(double t) const;
};

/**
 * Reduces an n x n system where n - 1 members have supports that, after
 * independent translations, lie in n + 1 affinely independent points.
 * Throws NotApplicableError otherwise, and DegenerateEliminationError when
 * the linear part is rank deficient.
 */
UnivariateReduction univariate_reduction(const FewnomialSystem& system);

class DegenerateEliminationError : public NotApplicableError {
  public:
    DegenerateEliminationError(const std::string& what, bool consistent)
        : NotApplicableError(what), consistent(consistent) {}
    bool consistent;  ///< the affine equations have solutions (a positive-dimensional family)
};

struct SystemRoot {
    Point x;
    std::vector<double> residuals;  ///< relative residual of each member
    bool suspect = false;
};

struct SystemRootReport {
    std::string method;
    std::vector<SystemRoot> roots;
    bool certified = false;
    bool continuum = false;
    std::size_t count_low = 0;
    std::size_t count_high = 0;
    /** Bound for the structure class the pipeline dispatched on. */
    BigInt dispatched_bound = 0;
    std::string bound_source;
    bool within_bound = true;
    std::optional<TrinomialCanonical> canonical;
    std::optional<CaseTag> case_tag;
    std::optional<CubicPair> cubics;
    std::optional<RootReport> univariate;
    std::optional<MixedVolumeZeroWitness> mixed_volume_witness;
    std::vector<std::string> diagnostics;

    std::vector<Point> points() const;
};

/** Seeded Newton search for roots in log coordinates; not a certified method. */
struct DeskOptions {
    double window = 8.0;  ///< search box [-window, window]^n in log coordinates
    int grid = 24;        ///< seeds per axis
    std::uint64_t seed = 0;
    int random_seeds = 64;
};

/**
 * Converged points whose Jacobian is numerically singular are discarded; their
 * number is stored in rejected_singular when given.
 */
std::vector<Point> desk_solve(const FewnomialSystem& system, const DeskOptions& options = {},
                              std::size_t* rejected_singular = nullptr);

/** Newton iteration in log coordinates; returns the input when it does not improve. */
Point polish_root(const FewnomialSystem& system, const Point& x, int iterations = 8);

/** Zero-root report when the Newton polytopes have mixed volume zero; nullopt otherwise. */
std::optional<SystemRootReport> mixed_volume_zero_shortcut(const FewnomialSystem& system);

/** Triangular back-substitution for pyramidal systems. */
SystemRootReport solve_pyramidal(const FewnomialSystem& system);

/** Dispatches to the first applicable reduction (see the file comment). */
SystemRootReport count_roots(const FewnomialSystem& system, const DeskOptions& options = {});

}  // namespace fewnomial

#endif
