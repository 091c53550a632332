#include "fewnomial/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace fewnomial {

// ---------------------------------------------------------------------------
// Canonical trinomial pairs

LinearFormProduct canonical_lfp(double A, double B, double a, double b, double c, double d)
{
    LinearFormProduct f;
    f.forms = {{0.0, 1.0}, {1.0, -1.0}};
    f.terms.push_back({HomogeneousPolynomial::constant(2, 1.0), {0.0, 0.0}});
    f.terms.push_back({HomogeneousPolynomial::constant(2, -A), {a, b}});
    f.terms.push_back({HomogeneousPolynomial::constant(2, -B), {c, d}});
    return f;
}

LinearFormProduct canonical_lfp(const TrinomialCanonical& tc)
{
    return canonical_lfp(tc.A, tc.B, tc.a, tc.b, tc.c, tc.d);
}

CanonicalOutcome trinomial_canonical(const FewnomialSystem& system)
{
    CanonicalOutcome out;
    CanonicalPair pair = canonicalize_trinomial_pair(system);
    out.status = pair.status;
    out.note = pair.note;
    if (pair.status != CanonicalPair::Status::Ok) return out;
    const Fewnomial& g = pair.system.member(1);
    if (g.size() != 3) {
        out.status = CanonicalPair::Status::NotTrinomial;
        out.note = "second member is not a trinomial";
        return out;
    }
    std::vector<Term> others;
    bool has_one = false;
    for (const Term& t : g.terms()) {
        if (same_exponent(t.exponent, ExponentVector(2, 0.0))) {
            has_one = std::abs(t.coeff - 1.0) < 1e-12;
        } else {
            others.push_back(t);
        }
    }
    if (!has_one || others.size() != 2 || others[0].coeff >= 0 || others[1].coeff >= 0) {
        out.status = CanonicalPair::Status::Infeasible;
        out.note = "second member could not be normalized to 1 - A x^alpha - B x^beta";
        return out;
    }
    TrinomialCanonical tc;
    tc.A = -others[0].coeff;
    tc.a = others[0].exponent[0];
    tc.b = others[0].exponent[1];
    tc.B = -others[1].coeff;
    tc.c = others[1].exponent[0];
    tc.d = others[1].exponent[1];
    tc.map = pair.map;
    tc.first_member = pair.first_member;
    out.canonical = tc;
    return out;
}

std::string to_string(CaseTag tag)
{
    static const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H"};
    return names[static_cast<int>(tag)];
}

CaseTag classify_case(double a, double b, double c, double d)
{
    auto sgn = [](double x) { return std::abs(x) <= kExponentTol ? 0 : (x > 0 ? 1 : -1); };
    std::array<int, 4> s = {sgn(a), sgn(b), sgn(c), sgn(d)};
    for (int x : s) {
        if (x == 0) return CaseTag::H;
    }
    // The orbit under term swap (a,b,c,d) -> (c,d,a,b) and t <-> 1 - t (a,b,c,d) -> (b,a,d,c).
    std::vector<std::array<int, 4>> orbit = {
        s, {s[2], s[3], s[0], s[1]}, {s[1], s[0], s[3], s[2]}, {s[3], s[2], s[1], s[0]}};
    auto match = [&](std::array<int, 4> pattern) {
        return std::find(orbit.begin(), orbit.end(), pattern) != orbit.end();
    };
    if (match({1, 1, 1, 1})) return CaseTag::D;
    if (match({-1, -1, -1, -1})) return CaseTag::E;
    if (match({1, 1, 1, -1})) return CaseTag::A;
    if (match({1, -1, 1, -1})) return CaseTag::B;
    if (match({1, 1, -1, -1})) return CaseTag::C;
    if (match({1, -1, -1, -1})) return CaseTag::F;
    if (match({1, -1, -1, 1})) return CaseTag::G;
    return CaseTag::H;  // unreachable: the seven orbits cover all sign patterns
}

namespace {

std::array<double, 4> basic_cubic(double a, double b, double c, double d)
{
    return {-a * (a - c) * (a - c - 1), (a - c) * (2 * a * (b - d + 1) + b * (a - c + 1)),
            (d - b) * (a * (b - d + 1) + 2 * b * (a - c + 1)), b * (b - d) * (b - d - 1)};
}

int positive_cubic_roots(const std::array<double, 4>& k)
{
    ExponentialSum f({k[3], k[2], k[1], k[0]}, {0.0, 1.0, 2.0, 3.0});
    if (f.size() == 0) return 0;
    return static_cast<int>(isolate_expsum_roots(f).count_high);
}

}  // namespace

CubicPair cubic_F_coeffs(double a, double b, double c, double d)
{
    CubicPair out;
    out.F = basic_cubic(a, b, c, d);
    out.F_hat = basic_cubic(c, d, a, b);
    out.positive_roots_F = positive_cubic_roots(out.F);
    out.positive_roots_F_hat = positive_cubic_roots(out.F_hat);
    out.M = std::max(out.positive_roots_F, out.positive_roots_F_hat);
    return out;
}

// ---------------------------------------------------------------------------
// Newton polishing and the desk solver

namespace {

struct LogSystem {
    const FewnomialSystem& system;
    std::vector<std::vector<Fewnomial>> log_partials;

    explicit LogSystem(const FewnomialSystem& s) : system(s)
    {
        for (const Fewnomial& f : s.members()) {
            std::vector<Fewnomial> row;
            for (std::size_t j = 0; j < s.dimension(); ++j) row.push_back(f.log_derivative(j));
            log_partials.push_back(std::move(row));
        }
    }

    /** Residuals and Jacobian relative to each member's term scale. */
    bool eval(const Eigen::VectorXd& z, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const
    {
        const std::size_t k = system.size();
        const std::size_t n = system.dimension();
        Point zp(z.data(), z.data() + n);
        r.resize(static_cast<Eigen::Index>(k));
        if (jac) jac->resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < k; ++i) {
            ScaledValue v = system.member(i).evaluate_log(zp);
            if (!(v.magnitude > 0) || !std::isfinite(v.log_factor)) return false;
            r[static_cast<Eigen::Index>(i)] = v.mantissa / v.magnitude;
            if (!jac) continue;
            for (std::size_t j = 0; j < n; ++j) {
                ScaledValue g = log_partials[i][j].evaluate_log(zp);
                double val = g.mantissa == 0.0 ? 0.0 : g.mantissa * std::exp(g.log_factor - v.log_factor) / v.magnitude;
                (*jac)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = val;
            }
        }
        return r.allFinite();
    }
};

double merit(const Eigen::VectorXd& r)
{
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

/** Damped Newton from z; returns true when the relative residual drops below tol. */
bool newton_log(const LogSystem& ls, Eigen::VectorXd& z, int iterations, double tol)
{
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    if (!ls.eval(z, r, &jac)) return false;
    double m = merit(r);
    for (int it = 0; it < iterations && m > tol; ++it) {
        Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
        if (!step.allFinite()) return false;
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k) {
            Eigen::VectorXd trial = z + lambda * step;
            Eigen::VectorXd rt;
            Eigen::MatrixXd jt;
            if (ls.eval(trial, rt, &jt) && merit(rt) < m) {
                z = trial;
                r = rt;
                jac = jt;
                m = merit(rt);
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    return m <= tol;
}

}  // namespace

Point polish_root(const FewnomialSystem& system, const Point& x, int iterations)
{
    const std::size_t n = system.dimension();
    Eigen::VectorXd z(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        if (!(x[j] > 0)) return x;
        z[static_cast<Eigen::Index>(j)] = std::log(x[j]);
    }
    LogSystem ls(system);
    Eigen::VectorXd r0;
    if (!ls.eval(z, r0, nullptr)) return x;
    double m0 = merit(r0);
    Eigen::VectorXd zz = z;
    newton_log(ls, zz, iterations, 1e-15);
    Eigen::VectorXd r1;
    if (!ls.eval(zz, r1, nullptr) || !(merit(r1) < m0)) return x;
    // Refuse to move to a different root.
    if ((zz - z).cwiseAbs().maxCoeff() > 1e-6 * std::max(1.0, z.cwiseAbs().maxCoeff())) return x;
    Point out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = std::exp(zz[static_cast<Eigen::Index>(j)]);
    return out;
}

std::vector<Point> desk_solve(const FewnomialSystem& system, const DeskOptions& options,
                              std::size_t* rejected_singular)
{
    const std::size_t n = system.dimension();
    if (system.size() != n) throw NotApplicableError("desk solver needs a square system");
    LogSystem ls(system);
    std::vector<Eigen::VectorXd> seeds;
    if (n <= 2) {
        const int g = std::max(options.grid, 2);
        std::vector<double> axis;
        for (int i = 0; i < g; ++i) axis.push_back(-options.window + 2.0 * options.window * (i + 0.5) / g);
        if (n == 1) {
            for (double a : axis) seeds.push_back(Eigen::VectorXd::Constant(1, a));
        } else {
            for (double a : axis) {
                for (double b : axis) seeds.push_back(Eigen::Vector2d(a, b));
            }
        }
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-options.window, options.window);
    int extra = n <= 2 ? options.random_seeds : options.random_seeds * options.grid;
    for (int i = 0; i < extra; ++i) {
        Eigen::VectorXd z(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) z[static_cast<Eigen::Index>(j)] = uni(rng);
        seeds.push_back(z);
    }
    std::vector<Eigen::VectorXd> found;
    std::size_t singular = 0;
    for (Eigen::VectorXd z : seeds) {
        if (!newton_log(ls, z, 60, 1e-13)) continue;
        // A converged point with a (numerically) singular Jacobian is typically
        // a cancellation of dominant terms near the boundary of the orthant,
        // not an isolated root.
        Eigen::VectorXd r;
        Eigen::MatrixXd jac;
        ls.eval(z, r, &jac);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
        const auto& sv = svd.singularValues();
        if (sv.size() == 0 || sv[sv.size() - 1] <= 1e-7 * sv[0]) {
            ++singular;
            continue;
        }
        bool dup = false;
        for (const Eigen::VectorXd& w : found) {
            if ((w - z).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, w.cwiseAbs().maxCoeff())) {
                dup = true;
                break;
            }
        }
        if (!dup) found.push_back(z);
    }
    std::sort(found.begin(), found.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    if (rejected_singular) *rejected_singular = singular;
    std::vector<Point> out;
    for (const Eigen::VectorXd& z : found) {
        Point x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = std::exp(z[static_cast<Eigen::Index>(j)]);
        out.push_back(x);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Univariate reduction

Point UnivariateReduction::back_map(double t) const
{
    const std::size_t n = f.forms.size();
    Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[i][j];
    }
    Eigen::VectorXd ly(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        double y = f.forms[j](t);
        if (!(y > 0)) throw DomainError("back-map of a parameter outside the positive interval");
        ly[static_cast<Eigen::Index>(j)] = std::log(y);
    }
    Eigen::VectorXd lx = w.fullPivLu().solve(ly);
    Point x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = std::exp(lx[static_cast<Eigen::Index>(j)]);
    return x;
}

namespace {

std::size_t find_point(const std::vector<ExponentVector>& pts, const ExponentVector& a)
{
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (same_exponent(pts[i], a)) return i;
    }
    return pts.size();
}

ExponentVector add(const ExponentVector& a, const ExponentVector& b)
{
    ExponentVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

ExponentVector sub(const ExponentVector& a, const ExponentVector& b)
{
    ExponentVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace

UnivariateReduction univariate_reduction(const FewnomialSystem& system)
{
    const std::size_t n = system.dimension();
    if (system.size() != n || n < 2) throw NotApplicableError("univariate reduction needs an n x n system, n >= 2");
    for (std::size_t trial = 0; trial < n; ++trial) {
        const std::size_t free = n - 1 - trial;
        std::vector<std::size_t> constrained;
        std::vector<std::vector<ExponentVector>> supports;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == free) continue;
            constrained.push_back(i);
            supports.push_back(system.member(i).support());
        }
        bool small = true;
        for (const auto& s : supports) small = small && !s.empty() && s.size() <= n + 1;
        if (!small) continue;
        std::vector<ExponentVector> pts;
        std::vector<ExponentVector> shifts;
        auto placement = place_in_common_points(supports, n + 1);
        if (!placement) continue;
        pts = placement->points;
        shifts = placement->shifts;

        UnivariateReduction out;
        out.free_member = free;
        out.points = pts;
        const ExponentVector& a0 = pts[0];
        out.basis.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t j = 1; j <= n; ++j) out.basis[j - 1] = sub(pts[j], a0);

        // Affine equations sum_j C_ij y_j = 0 with y_0 = 1.
        const std::size_t k = n - 1;
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n + 1));
        for (std::size_t r = 0; r < k; ++r) {
            for (const Term& t : system.member(constrained[r]).terms()) {
                std::size_t j = find_point(pts, add(t.exponent, shifts[r]));
                c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) += t.coeff;
            }
        }
        // Gaussian elimination with full pivoting over the columns y_1..y_n.
        std::vector<std::size_t> cols(n);
        for (std::size_t j = 0; j < n; ++j) cols[j] = j + 1;
        const double scale = std::max(c.cwiseAbs().maxCoeff(), 1e-300);
        std::vector<std::size_t> pivots;
        for (std::size_t r = 0; r < k; ++r) {
            double best = 0.0;
            std::size_t br = r, bc = 0;
            for (std::size_t i = r; i < k; ++i) {
                for (std::size_t j = 1; j <= n; ++j) {
                    if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) continue;
                    double v = std::abs(c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
                    if (v > best) {
                        best = v;
                        br = i;
                        bc = j;
                    }
                }
            }
            if (best <= kRankTol * scale) {
                bool consistent = true;
                for (std::size_t i = r; i < k; ++i) {
                    if (std::abs(c(static_cast<Eigen::Index>(i), 0)) > kRankTol * scale) consistent = false;
                }
                throw DegenerateEliminationError("the affine part is rank deficient", consistent);
            }
            c.row(static_cast<Eigen::Index>(r)).swap(c.row(static_cast<Eigen::Index>(br)));
            c.row(static_cast<Eigen::Index>(r)) /= c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(bc));
            for (std::size_t i = 0; i < k; ++i) {
                if (i == r) continue;
                double factor = c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(bc));
                if (factor != 0.0) c.row(static_cast<Eigen::Index>(i)) -= factor * c.row(static_cast<Eigen::Index>(r));
            }
            pivots.push_back(bc);
        }
        std::size_t param = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) param = j;
        }
        out.parameter = param - 1;
        // Row r: y_{pivot_r} + C_{r,param} t + C_{r,0} = 0.
        out.f.forms.assign(n, LinearForm{});
        out.f.forms[param - 1] = {0.0, 1.0};
        for (std::size_t r = 0; r < k; ++r) {
            out.f.forms[pivots[r] - 1] = {-c(static_cast<Eigen::Index>(r), 0),
                                          -c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(param))};
        }
        // x^b = prod y_j^{beta_j} with beta = basis^{-T} b.
        Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = out.basis[i][j];
        }
        auto lu = w.transpose().fullPivLu();
        for (const Term& t : system.member(free).terms()) {
            Eigen::VectorXd b(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j) b[static_cast<Eigen::Index>(j)] = t.exponent[j];
            Eigen::VectorXd beta = lu.solve(b);
            LfpTerm term{HomogeneousPolynomial::constant(n, t.coeff), std::vector<double>(beta.data(), beta.data() + n)};
            out.f.terms.push_back(std::move(term));
        }
        auto interval = out.f.default_interval();
        if (interval) {
            out.interval = *interval;
        } else {
            out.empty_interval = true;
        }
        return out;
    }
    throw NotApplicableError("no n - 1 members share n + 1 affinely independent monomials after translation");
}

// ---------------------------------------------------------------------------
// Reports

std::vector<Point> SystemRootReport::points() const
{
    std::vector<Point> out;
    for (const SystemRoot& r : roots) out.push_back(r.x);
    return out;
}

namespace {

SystemRoot make_root(const FewnomialSystem& system, Point x, bool suspect, std::vector<std::string>& diag)
{
    SystemRoot root;
    Point polished = polish_root(system, x);
    root.x = polished;
    root.residuals = system.relative_residuals(polished);
    root.suspect = suspect;
    double worst = 0.0;
    for (double r : root.residuals) worst = std::max(worst, r);
    if (worst > 1e-8 && !suspect) diag.push_back("back-mapped root has a relative residual above 1e-8");
    return root;
}

void sort_roots(std::vector<SystemRoot>& roots)
{
    std::sort(roots.begin(), roots.end(), [](const SystemRoot& a, const SystemRoot& b) { return a.x < b.x; });
}

void finalize_counts(SystemRootReport& rep)
{
    std::size_t simple = 0, suspect = 0;
    for (const SystemRoot& r : rep.roots) (r.suspect ? suspect : simple)++;
    rep.count_low = simple;
    rep.count_high = simple + 2 * suspect;
    rep.within_bound = rep.continuum || BigInt(rep.roots.size()) <= rep.dispatched_bound;
    if (!rep.within_bound) {
        rep.certified = false;
        rep.diagnostics.push_back("root count exceeds the dispatched bound");
    }
}

BigInt pow2(unsigned k)
{
    BigInt one = 1;
    return one << k;
}

/** Back-substitution state for the pyramidal solver. */
struct PyramidalContext {
    const FewnomialSystem& system;
    std::vector<std::size_t> order;
    Eigen::MatrixXd basis;  ///< columns w_1..w_n, orthonormal, flag-adapted
    /** coords[i][t] = W^T (a_t - a_first) of member order[i]. */
    std::vector<std::vector<Eigen::VectorXd>> coords;
    std::vector<std::vector<double>> coeffs;
    std::vector<Point> roots;
    std::vector<bool> suspects;
    bool certified = true;
    bool continuum = false;
    std::vector<std::string> diagnostics;
};

void back_substitute(PyramidalContext& ctx, std::size_t level, std::vector<double>& z, bool suspect)
{
    const std::size_t n = ctx.system.dimension();
    if (level == n) {
        Eigen::VectorXd zz(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) zz[static_cast<Eigen::Index>(j)] = z[j];
        Eigen::VectorXd lx = ctx.basis * zz;
        Point x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = std::exp(lx[static_cast<Eigen::Index>(j)]);
        ctx.roots.push_back(x);
        ctx.suspects.push_back(suspect);
        return;
    }
    // Group terms by their exponent in the new coordinate z_level.
    struct Group {
        double e;
        double sum;
        double abs;
    };
    std::vector<Group> groups;
    const auto& pts = ctx.coords[level];
    for (std::size_t t = 0; t < pts.size(); ++t) {
        double logc = 0.0;
        for (std::size_t k = 0; k < level; ++k) logc += pts[t][static_cast<Eigen::Index>(k)] * z[k];
        double c = ctx.coeffs[level][t] * std::exp(logc);
        double e = pts[t][static_cast<Eigen::Index>(level)];
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return std::abs(g.e - e) <= kExponentTol; });
        if (it == groups.end()) {
            groups.push_back({e, c, std::abs(c)});
        } else {
            it->sum += c;
            it->abs += std::abs(c);
        }
    }
    std::vector<double> cs, es;
    for (const Group& g : groups) {
        if (std::abs(g.sum) > 1e-12 * g.abs) {
            cs.push_back(g.sum);
            es.push_back(g.e);
        }
    }
    if (cs.empty()) {
        ctx.continuum = true;
        ctx.certified = false;
        ctx.diagnostics.push_back("back-substitution produced a member that vanishes identically");
        return;
    }
    ExponentialSum f(cs, es);
    RootReport rep = isolate_expsum_roots(f);
    if (!rep.certified) ctx.certified = false;
    for (const std::string& d : rep.diagnostics) ctx.diagnostics.push_back(d);
    for (const RootEntry& r : rep.roots) {
        z[level] = std::log(r.t);
        back_substitute(ctx, level + 1, z, suspect || r.suspect);
    }
}

}  // namespace

std::optional<SystemRootReport> mixed_volume_zero_shortcut(const FewnomialSystem& system)
{
    MixedVolumeZeroWitness w = mixed_volume_zero(system);
    if (!w.zero) return std::nullopt;
    SystemRootReport rep;
    rep.method = "mixed-volume-zero";
    rep.certified = true;
    rep.dispatched_bound = 0;
    rep.bound_source = "mixed volume zero: no isolated roots in the positive orthant";
    rep.mixed_volume_witness = w;
    std::ostringstream note;
    note << "members {";
    for (std::size_t i = 0; i < w.subset.size(); ++i) note << (i ? "," : "") << w.subset[i];
    note << "} fit in a subspace of dimension " << w.subspace_dimension;
    rep.diagnostics.push_back(note.str());
    return rep;
}

SystemRootReport solve_pyramidal(const FewnomialSystem& system)
{
    auto cert = is_pyramidal(system);
    if (!cert) throw NotApplicableError("system is not pyramidal");
    const std::size_t n = system.dimension();
    PyramidalContext ctx{system, cert->ordering, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), {}, {}, {}, {}, true, false, {}};
    // Flag-adapted orthonormal basis by Gram-Schmidt on each member's differences.
    std::size_t filled = 0;
    for (std::size_t i = 0; i < n && filled < n; ++i) {
        const Fewnomial& f = system.member(ctx.order[i]);
        Eigen::VectorXd best;
        double best_norm = 0.0;
        for (const Term& t : f.terms()) {
            Eigen::VectorXd v(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j) v[static_cast<Eigen::Index>(j)] = t.exponent[j] - f.term(0).exponent[j];
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < filled; ++k) {
                    Eigen::VectorXd w = ctx.basis.col(static_cast<Eigen::Index>(k));
                    v -= w.dot(v) * w;
                }
            }
            if (v.norm() > best_norm) {
                best_norm = v.norm();
                best = v;
            }
        }
        if (best_norm <= kRankTol) throw NotApplicableError("pyramidal flag is degenerate");
        ctx.basis.col(static_cast<Eigen::Index>(filled++)) = best / best_norm;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Fewnomial& f = system.member(ctx.order[i]);
        std::vector<Eigen::VectorXd> pts;
        std::vector<double> cs;
        for (const Term& t : f.terms()) {
            Eigen::VectorXd v(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j) v[static_cast<Eigen::Index>(j)] = t.exponent[j] - f.term(0).exponent[j];
            Eigen::VectorXd e = ctx.basis.transpose() * v;
            for (std::size_t k = i + 1; k < n; ++k) e[static_cast<Eigen::Index>(k)] = 0.0;
            pts.push_back(e);
            cs.push_back(t.coeff);
        }
        ctx.coords.push_back(pts);
        ctx.coeffs.push_back(cs);
    }
    std::vector<double> z(n, 0.0);
    back_substitute(ctx, 0, z, false);

    SystemRootReport rep;
    rep.method = "pyramidal";
    rep.continuum = ctx.continuum;
    rep.certified = ctx.certified && !ctx.continuum;
    rep.diagnostics = ctx.diagnostics;
    BigInt bound = 1;
    for (std::size_t m : system.type_signature()) bound *= BigInt(m) - 1;
    rep.dispatched_bound = bound;
    rep.bound_source = "pyramidal systems: at most prod (m_i - 1) isolated roots";
    if (!ctx.continuum) {
        for (std::size_t i = 0; i < ctx.roots.size(); ++i) {
            rep.roots.push_back(make_root(system, ctx.roots[i], ctx.suspects[i], rep.diagnostics));
            if (ctx.suspects[i]) rep.certified = false;
        }
    } else {
        rep.diagnostics.push_back("infinitely many roots: no isolated roots are reported");
    }
    sort_roots(rep.roots);
    finalize_counts(rep);
    return rep;
}

namespace {

/** All supports inside n + 1 affinely independent points: at most one root. */
std::optional<SystemRootReport> solve_shared_support(const FewnomialSystem& system)
{
    const std::size_t n = system.dimension();
    // Each member may be divided by a monomial, so its support only matters up to translation.
    std::vector<std::vector<ExponentVector>> supports;
    for (const Fewnomial& f : system.members()) supports.push_back(f.support());
    std::vector<ExponentVector> pts;
    std::vector<ExponentVector> shifts;
    auto placement = place_in_common_points(supports, n + 1);
    if (!placement) return std::nullopt;
    pts = placement->points;
    shifts = placement->shifts;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (const Term& t : system.member(i).terms()) {
            std::size_t j = find_point(pts, add(t.exponent, shifts[i]));
            if (j == 0) {
                rhs[static_cast<Eigen::Index>(i)] -= t.coeff;
            } else {
                c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) += t.coeff;
            }
        }
    }
    SystemRootReport rep;
    rep.method = "shared-support";
    rep.dispatched_bound = 1;
    rep.bound_source = "supports inside n + 1 affinely independent points: 0, 1 or infinitely many roots";
    auto lu = c.fullPivLu();
    lu.setThreshold(kRankTol);
    if (lu.rank() < static_cast<Eigen::Index>(n)) {
        Eigen::VectorXd y = lu.solve(rhs);
        bool consistent = (c * y - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm());
        rep.continuum = consistent;
        rep.certified = !consistent;
        rep.diagnostics.push_back(consistent ? "the monomial equations have a positive-dimensional solution set"
                                             : "the monomial equations are inconsistent");
        finalize_counts(rep);
        return rep;
    }
    Eigen::VectorXd y = lu.solve(rhs);
    rep.certified = true;
    bool positive = true;
    for (Eigen::Index j = 0; j < y.size(); ++j) positive = positive && y[j] > 0;
    if (positive) {
        Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = pts[j + 1][k] - pts[0][k];
            }
        }
        // x^{a_j} / x^{a_0} = y_j  <=>  w log x = log y
        Eigen::VectorXd lx = w.fullPivLu().solve(Eigen::VectorXd(y.array().log()));
        Point x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = std::exp(lx[static_cast<Eigen::Index>(j)]);
        rep.roots.push_back(make_root(system, x, false, rep.diagnostics));
    }
    finalize_counts(rep);
    return rep;
}

SystemRootReport from_lfp(const FewnomialSystem& system, const RootReport& uni,
                          const std::function<Point(double)>& back)
{
    SystemRootReport rep;
    rep.univariate = uni;
    rep.certified = uni.certified;
    rep.continuum = uni.continuum;
    rep.diagnostics = uni.diagnostics;
    for (const RootEntry& r : uni.roots) {
        try {
            rep.roots.push_back(make_root(system, back(r.t), r.suspect, rep.diagnostics));
        } catch (const DomainError& e) {
            rep.certified = false;
            rep.diagnostics.push_back(e.what());
        }
    }
    sort_roots(rep.roots);
    return rep;
}

SystemRootReport solve_canonical(const FewnomialSystem& system, const TrinomialCanonical& tc)
{
    RootReport uni = isolate_lfp_roots(canonical_lfp(tc), std::make_pair(0.0, 1.0));
    SystemRootReport rep = from_lfp(system, uni, [&](double t) {
        Point y = {t, 1.0 - t};
        return tc.map.inverse(y);
    });
    rep.method = "trinomial-canonical";
    rep.canonical = tc;
    rep.case_tag = classify_case(tc.a, tc.b, tc.c, tc.d);
    rep.cubics = cubic_F_coeffs(tc.a, tc.b, tc.c, tc.d);
    rep.dispatched_bound = 5;
    rep.bound_source = "two trinomials in two variables: at most 5 roots";
    finalize_counts(rep);
    return rep;
}

SystemRootReport solve_reduction(const FewnomialSystem& system, const UnivariateReduction& red)
{
    const std::size_t n = system.dimension();
    SystemRootReport rep;
    if (red.empty_interval) {
        rep.certified = true;
    } else {
        RootReport uni = isolate_lfp_roots(red.f, red.interval);
        rep = from_lfp(system, uni, [&](double t) { return red.back_map(t); });
    }
    rep.method = "univariate-reduction";
    const std::size_t m = system.member(red.free_member).size();
    RolleBound rb = rolle_bound(static_cast<int>(m), static_cast<int>(n), 0);
    rep.dispatched_bound = rb.recursion;
    rep.bound_source = "univariate reduction: at most n + n^2 + ... + n^(m-1) roots";
    std::vector<std::size_t> sig = system.type_signature();
    if (n == 2 && sig.size() == 2 && (sig[0] == 3 || sig[1] == 3)) {
        std::size_t mm = sig[0] == 3 ? sig[1] : sig[0];
        BigInt tri = pow2(static_cast<unsigned>(mm)) - 2;
        if (tri < rep.dispatched_bound) {
            rep.dispatched_bound = tri;
            rep.bound_source = "a trinomial and an m-nomial in two variables: at most 2^m - 2 roots";
        }
    }
    finalize_counts(rep);
    return rep;
}

}  // namespace

SystemRootReport count_roots(const FewnomialSystem& system, const DeskOptions& options)
{
    const std::size_t n = system.dimension();
    if (system.size() != n) throw NotApplicableError("root counting needs a square system");
    std::vector<std::size_t> sig = system.type_signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (sig[i] == 0) throw ValidationError("member " + std::to_string(i) + " is identically zero");
        if (sig[i] == 1) {
            SystemRootReport rep;
            rep.method = "monomial-member";
            rep.certified = true;
            rep.dispatched_bound = 0;
            rep.bound_source = "a member with one term never vanishes on the positive orthant";
            finalize_counts(rep);
            return rep;
        }
    }
    if (n == 1) {
        const Fewnomial& f = system.member(0);
        std::vector<double> cs, es;
        for (const Term& t : f.terms()) {
            cs.push_back(t.coeff);
            es.push_back(t.exponent[0]);
        }
        ExponentialSum g(cs, es);
        RootReport uni = isolate_expsum_roots(g);
        SystemRootReport rep = from_lfp(system, uni, [](double t) { return Point{t}; });
        rep.method = "descartes";
        rep.dispatched_bound = uni.bound;
        rep.bound_source = uni.bound_source;
        finalize_counts(rep);
        return rep;
    }
    if (auto mvz = mixed_volume_zero_shortcut(system)) {
        finalize_counts(*mvz);
        return *mvz;
    }
    if (auto shared = solve_shared_support(system)) return *shared;
    if (is_pyramidal(system)) return solve_pyramidal(system);
    if (n == 2 && sig[0] == 3 && sig[1] == 3) {
        CanonicalOutcome co = trinomial_canonical(system);
        if (co.status == CanonicalPair::Status::Infeasible) {
            SystemRootReport rep;
            rep.method = "trinomial-canonical";
            rep.certified = true;
            rep.dispatched_bound = 5;
            rep.bound_source = "two trinomials in two variables: at most 5 roots";
            rep.diagnostics.push_back(co.note);
            finalize_counts(rep);
            return rep;
        }
        if (co.canonical) return solve_canonical(system, *co.canonical);
    }
    try {
        UnivariateReduction red = univariate_reduction(system);
        return solve_reduction(system, red);
    } catch (const DegenerateEliminationError& e) {
        SystemRootReport rep;
        rep.method = "univariate-reduction";
        rep.continuum = e.consistent;
        rep.certified = !e.consistent;
        rep.diagnostics.push_back(e.consistent ? "rank-deficient elimination with a consistent affine part"
                                               : "rank-deficient elimination with an inconsistent affine part: no roots");
        finalize_counts(rep);
        return rep;
    } catch (const NotApplicableError&) {
        // fall through to the desk solver
    }
    SystemRootReport rep;
    rep.method = "desk-newton";
    rep.certified = false;
    rep.diagnostics.push_back("no exact reduction applies; roots come from a seeded Newton search and are not certified");
    std::size_t singular = 0;
    for (const Point& x : desk_solve(system, options, &singular)) {
        rep.roots.push_back(make_root(system, x, false, rep.diagnostics));
    }
    if (singular > 0) {
        rep.diagnostics.push_back(std::to_string(singular) +
                                  " Newton seed(s) converged to points with a singular Jacobian and were discarded");
    }
    sort_roots(rep.roots);
    rep.dispatched_bound = 0;
    rep.bound_source = "none (desk solver)";
    rep.within_bound = true;
    std::size_t simple = rep.roots.size();
    rep.count_low = simple;
    rep.count_high = simple;
    return rep;
}

}  // namespace fewnomial
