#include "fewnomial/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fewnomial/polytope.hpp"

namespace fewnomial {

namespace {

BigInt pow_big(const BigInt& base, long long e)
{
    BigInt out = 1;
    for (long long i = 0; i < e; ++i) out *= base;
    return out;
}

BigInt pow2(long long e) { return BigInt(1) << static_cast<unsigned>(e); }

/** 2^{mu(mu-1)/2} computed without overflow of the exponent. */
BigInt pow2_triangle(long long mu) { return mu <= 1 ? BigInt(1) : pow2(mu * (mu - 1) / 2); }

std::string join(std::initializer_list<std::pair<const char*, std::string>> items)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : items) {
        if (!first) os << ", ";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

std::string str(long long v) { return std::to_string(v); }

std::string type_string(const std::vector<std::size_t>& type)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < type.size(); ++i) os << (i ? "," : "") << type[i];
    os << ")";
    return os.str();
}

long long floor_div(long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

/** max(base, 0)^e with base possibly negative (the formulas clamp at zero). */
BigInt clamped_power(long long base, long long e) { return base <= 0 ? BigInt(0) : pow_big(BigInt(base), e); }

}  // namespace

std::string to_string(const ExtendedInt& v) { return v ? v->str() : std::string("inf"); }

ExtendedInt ext_min(const ExtendedInt& a, const ExtendedInt& b)
{
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

std::string to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::Roots: return "roots";
    case BoundKind::Components: return "components";
    case BoundKind::CompactComponents: return "compact-components";
    case BoundKind::NonCompactComponents: return "non-compact-components";
    case BoundKind::Inflections: return "inflections";
    case BoundKind::VerticalTangents: return "vertical-tangents";
    }
    return "unknown";
}

void BoundReport::add(std::string rule, std::string inputs, ExtendedInt v, std::string note)
{
    value = trail.empty() ? v : ext_min(value, v);
    trail.push_back(BoundStep{std::move(rule), std::move(inputs), std::move(v), std::move(note)});
}

void BoundReport::merge(const BoundReport& other)
{
    for (const BoundStep& s : other.trail) add(s.rule, s.inputs, s.value, s.note);
}

BigInt khovanski_fewnomial(int n, int mu)
{
    if (n < 1 || mu < 0) throw ValidationError("khovanski_fewnomial needs n >= 1 and mu >= 0");
    return pow_big(BigInt(n + 1), mu) * pow2_triangle(mu);
}

BigInt khovanski_mixed(int n, int mu, const std::vector<int>& degrees)
{
    if (n < 1 || mu < 0) throw ValidationError("khovanski_mixed needs n >= 1 and mu >= 0");
    if (degrees.size() != static_cast<std::size_t>(n)) throw ValidationError("khovanski_mixed needs n degrees");
    BigInt sum = 1;
    BigInt prod = 1;
    for (int d : degrees) {
        if (d < 0) throw ValidationError("degrees must be non-negative");
        sum += d;
        prod *= d;
    }
    return pow2_triangle(mu) * pow_big(sum, mu) * prod;
}

BoundReport sparse_root_bound(int n, int mu)
{
    BoundReport rep(BoundKind::Roots);
    const std::string in = join({{"n", str(n)}, {"mu", str(mu)}});
    if (mu <= 1) {
        rep.add("sparse:monomial", in, BigInt(0), "a single monomial never vanishes on the positive orthant");
        return rep;
    }
    if (mu <= n + 1) {
        rep.add("sparse:at-most-n+1", in, BigInt(1), "K(n,mu) <= 1 exactly when mu <= n + 1");
        return rep;
    }
    if (n == 1) {
        rep.add("sparse:descartes", in, BigInt(mu - 1), "univariate rule of signs with real exponents");
        return rep;
    }
    if (n == 2 && mu == 4) {
        rep.add("sparse:K(2,4)", in, BigInt(5), "K'(2,4) = K(2,4) = 5, from N(3,3) = 5 and the sandwich inequalities");
        return rep;
    }
    rep.add("khovanski", in, khovanski_fewnomial(n, mu),
            "(n+1)^mu 2^{mu(mu-1)/2}; bounds non-degenerate roots, used in place of K(n,mu)");
    return rep;
}

BoundReport type_root_bound(std::vector<std::size_t> type)
{
    BoundReport rep(BoundKind::Roots);
    const std::string in = "type=" + type_string(type);
    if (type.empty()) {
        rep.add("empty-system", in, std::nullopt);
        return rep;
    }
    for (std::size_t m : type) {
        if (m == 1) {
            rep.add("member-at-most-one-term", in, BigInt(0), "a nonzero monomial has no positive zeros");
            return rep;
        }
    }
    if (std::find(type.begin(), type.end(), std::size_t{0}) != type.end()) {
        rep.add("zero-member", in, std::nullopt, "an identically zero member imposes no condition");
        return rep;
    }
    std::sort(type.begin(), type.end());
    std::vector<std::size_t> rest;
    for (std::size_t m : type) {
        if (m != 2) rest.push_back(m);
    }
    if (rest.size() != type.size()) {
        if (rest.empty()) {
            rep.add("binomial-peel", in, BigInt(1), "N(2,...,2) = 1: a binomial system is linear in log coordinates");
            return rep;
        }
        BoundReport sub = type_root_bound(rest);
        rep.add("binomial-peel", in + " -> " + type_string(rest), sub.value,
                "N(2,m_2,...,m_n) = N(m_2,...,m_n): each binomial eliminates one variable");
        for (const BoundStep& s : sub.trail) rep.add(s.rule, s.inputs, s.value, s.note);
        return rep;
    }
    const std::size_t n = type.size();
    if (n == 1) {
        rep.add("descartes", in, BigInt(type[0] - 1), "univariate rule of signs with real exponents");
        return rep;
    }
    if (n == 2 && type[0] == 3) {
        if (type[1] == 3) {
            rep.add("trinomial-pair", in, BigInt(5), "N(3,3) = 5");
        } else {
            rep.add("trinomial-and-m-nomial", in, pow2(static_cast<long long>(type[1])) - 2, "N(3,m) <= 2^m - 2");
        }
    }
    long long mu = -static_cast<long long>(n) + 1;
    for (std::size_t m : type) mu += static_cast<long long>(m);
    BoundReport sparse = sparse_root_bound(static_cast<int>(n), static_cast<int>(mu));
    for (const BoundStep& s : sparse.trail) {
        rep.add("sandwich:" + s.rule, in + ", " + s.inputs, s.value,
                "N(m_1,...,m_n) <= K(n, m_1+...+m_n-n+1) after dividing each member by a term; " + s.note);
    }
    return rep;
}

BigInt part_c_bound(const BigInt& area, const BigInt& degree)
{
    if (area < 0 || degree < 0) throw ValidationError("part_c_bound needs non-negative area and degree");
    return 4 * area + 2 * degree + 1;
}

std::optional<PolynomialStructure> detect_polynomial_structure(const Fewnomial& f)
{
    if (f.dimension() != 2 || f.size() < 2 || f.size() > 160) return std::nullopt;
    const std::vector<ExponentVector> supp = f.support();
    const std::size_t m = supp.size();
    constexpr double tol = 1e-7;
    std::optional<PolynomialStructure> best;
    BigInt best_value = 0;
    for (std::size_t o = 0; o < m; ++o) {
        std::vector<ExponentVector> d(m);
        for (std::size_t k = 0; k < m; ++k) d[k] = {supp[k][0] - supp[o][0], supp[k][1] - supp[o][1]};
        for (std::size_t i = 0; i < m; ++i) {
            if (i == o) continue;
            for (std::size_t j = i + 1; j < m; ++j) {
                if (j == o) continue;
                const double det = d[i][0] * d[j][1] - d[i][1] * d[j][0];
                const double scale = std::hypot(d[i][0], d[i][1]) * std::hypot(d[j][0], d[j][1]);
                if (std::abs(det) <= 1e-9 * scale) continue;
                std::vector<std::array<long long, 2>> coords;
                bool ok = true;
                for (std::size_t k = 0; k < m && ok; ++k) {
                    const double u = (d[k][0] * d[j][1] - d[k][1] * d[j][0]) / det;
                    const double v = (d[i][0] * d[k][1] - d[i][1] * d[k][0]) / det;
                    const double ru = std::round(u);
                    const double rv = std::round(v);
                    if (std::abs(u - ru) > tol || std::abs(v - rv) > tol || ru < 0 || rv < 0 || ru + rv > 1e6) {
                        ok = false;
                        break;
                    }
                    coords.push_back({static_cast<long long>(ru), static_cast<long long>(rv)});
                }
                if (!ok) continue;
                long long degree = 0;
                std::vector<Point2> pts;
                for (const auto& c : coords) {
                    degree = std::max(degree, c[0] + c[1]);
                    pts.push_back({static_cast<double>(c[0]), static_cast<double>(c[1])});
                }
                const long long area = std::llround(normalized_area(convex_hull_2d(pts)));
                BigInt value = part_c_bound(area, degree);
                if (!best || value < best_value) {
                    best = PolynomialStructure{area, degree, d[i], d[j]};
                    best_value = value;
                }
            }
        }
    }
    return best;
}

BoundReport best_root_bound(const FewnomialSystem& system, const BoundHints& hints)
{
    BoundReport rep(BoundKind::Roots);
    const std::size_t n = system.dimension();
    if (system.size() != n) throw ValidationError("best_root_bound needs a square system");
    const std::vector<std::size_t> type = system.type_signature();
    const std::string tin = "type=" + type_string(type);

    const bool has_zero = std::find(type.begin(), type.end(), std::size_t{0}) != type.end();
    if (has_zero) {
        rep.add("finite-components", tin + ", mu=" + str(static_cast<long long>(system.sparsity())),
                finite_components_bound(static_cast<int>(n), static_cast<int>(system.sparsity())),
                "an identically zero member: isolated roots are components of the remaining equations");
    }

    if (!has_zero && mixed_volume_zero(system).zero) {
        rep.add("mixed-volume-zero", tin, BigInt(0),
                "some k Newton polytopes span a subspace of dimension < k: no isolated roots");
    }

    std::vector<std::vector<Point>> supports;
    for (const Fewnomial& f : system.members()) supports.push_back(f.support());
    if (!has_zero && place_in_common_points(supports, n + 1)) {
        rep.add("shared-n+1-points", tin, BigInt(1),
                "after translations all supports lie in n + 1 affinely independent points");
    }
    if (!has_zero && is_pyramidal(system)) {
        BigInt prod = 1;
        for (std::size_t m : type) prod *= BigInt(m) - 1;
        rep.add("pyramidal", tin, prod, "product of (m_i - 1) by triangular back-substitution");
    }

    rep.merge(type_root_bound(type));

    if (n == 1 && type[0] >= 1) {
        std::vector<double> c, a;
        for (const Term& t : system.member(0).terms()) {
            c.push_back(t.coeff);
            a.push_back(t.exponent[0]);
        }
        rep.add("sign-alternations", tin, BigInt(descartes_bound(ExponentialSum(c, a))),
                "number of sign changes of the coefficients ordered by exponent");
    }

    if (n >= 2 && !has_zero) {
        for (std::size_t last = n; last-- > 0;) {
            std::vector<std::vector<Point>> others;
            for (std::size_t i = 0; i < n; ++i) {
                if (i != last) others.push_back(supports[i]);
            }
            if (!place_in_common_points(others, n + 1)) continue;
            BigInt sum = 0;
            BigInt power = 1;
            for (std::size_t k = 1; k < type[last]; ++k) {
                power *= BigInt(n);
                sum += power;
            }
            rep.add("n+1-points-and-m-nomial",
                    tin + ", free member=" + str(static_cast<long long>(last)) + ", m=" + str(static_cast<long long>(type[last])),
                    sum, "n + n^2 + ... + n^{m-1}; assumes the other members have a smooth common zero set");
            break;
        }
    }

    if (n == 2 && !has_zero) {
        for (std::size_t t = 0; t < 2; ++t) {
            if (type[t] != 3) continue;
            const Fewnomial& other = system.member(1 - t);
            std::optional<PolynomialStructure> ps = hints.structure;
            std::string origin = "declared";
            if (!ps) {
                ps = detect_polynomial_structure(other);
                origin = "detected";
            }
            if (!ps) continue;
            const std::string in = join({{"area", str(ps->area)}, {"D", str(ps->degree)}}) + " (" + origin + ")";
            rep.add("trinomial-and-polynomial", in, part_c_bound(ps->area, ps->degree),
                    "4 Area(Newt p) + 2D + 1; assumes Z_+(p) smooth");
            rep.add("trinomial-and-polynomial:cap", in, BigInt(6 * ps->degree + 1),
                    "the stated cap 6D + 1 for the same family");
            break;
        }
    }

    if (!has_zero) {
        BoundReport sparse =
            sparse_root_bound(static_cast<int>(n), static_cast<int>(system.sparsity()));
        for (const BoundStep& s : sparse.trail) {
            rep.add("sparsity:" + s.rule, s.inputs, s.value, "distinct exponent vectors of the system; " + s.note);
        }
    }
    return rep;
}

PolygonClass polygon_class_bound(const FewnomialSystem& system)
{
    const std::vector<std::size_t> type = system.type_signature();
    if (system.dimension() != 2 || type.size() != 2 || type[0] != 3 || type[1] != 3) {
        throw NotApplicableError("polygon class bound needs a 2 x 2 system of two trinomials");
    }
    Polygon sum = minkowski_sum(newton_polygon(system.member(0)), newton_polygon(system.member(1)));
    PolygonClass out;
    const int dim = sum.dimension();
    out.edges = dim <= 0 ? 0 : dim == 1 ? 1 : static_cast<int>(sum.vertices.size());
    out.bound = BoundReport(BoundKind::Roots);
    const std::string in = "edges=" + std::to_string(out.edges);
    if (out.edges <= 1) {
        out.bound.add("minkowski-sum:segment", in, BigInt(0), "mixed volume zero");
    } else if (out.edges == 3) {
        out.bound.add("minkowski-sum:triangle", in, BigInt(2));
    } else if (out.edges <= 5) {
        out.bound.add("minkowski-sum:4-or-5-gon", in, BigInt(4));
    } else {
        out.bound.add("minkowski-sum:hexagon", in, BigInt(5), "the general trinomial-pair bound");
    }
    return out;
}

BigInt finite_components_bound(int n, int mu)
{
    if (n < 1 || mu < 0) throw ValidationError("finite_components_bound needs n >= 1 and mu >= 0");
    // 2^{n-1/2} X = sqrt(2^{2n-1} X^2) with X = (2n+1)^mu 2^{mu(mu+1)/2}.
    BigInt x = pow_big(BigInt(2 * n + 1), mu) * pow2(static_cast<long long>(mu) * (mu + 1) / 2);
    BigInt radicand = pow2(2LL * n - 1) * x * x;
    return boost::multiprecision::sqrt(radicand);
}

ComponentBounds component_bounds(int n, int m, const ComponentBoundOptions& options)
{
    if (n < 1 || m < 0) throw ValidationError("component_bounds needs n >= 1 and m >= 0");
    ComponentBounds cb;
    const std::string in = join({{"n", str(n)}, {"m", str(m)}});
    auto lower = [&](const char* rule, BigInt comp, BigInt non) {
        cb.compact_lower = comp;
        cb.non_compact_lower = non;
        cb.lower_trail.push_back(BoundStep{std::string(rule) + ":compact", in, comp, {}});
        cb.lower_trail.push_back(BoundStep{std::string(rule) + ":non-compact", in, non, {}});
    };

    if (m == 0) {
        cb.compact.add("zero-polynomial", in, BigInt(0));
        cb.non_compact.add("zero-polynomial", in, BigInt(1), "the whole orthant is one non-compact component");
        cb.total.add("zero-polynomial", in, BigInt(1));
        lower("zero-polynomial", 0, 1);
        return cb;
    }
    if (m == 1) {
        cb.compact.add("monomial", in, BigInt(0));
        cb.non_compact.add("monomial", in, BigInt(0));
        cb.total.add("monomial", in, BigInt(0), "a nonzero monomial never vanishes");
        lower("monomial", 0, 0);
        return cb;
    }
    if (n == 1) {
        cb.compact.add("univariate", in, BigInt(m - 1), "P_comp(1,m) = m - 1");
        cb.non_compact.add("univariate", in, BigInt(0), "P_non(1,m) = 0");
        cb.total.add("univariate", in, BigInt(m - 1));
        lower("univariate", m - 1, 0);
        return cb;
    }
    if (m == 2) {
        cb.compact.add("binomial", in, BigInt(0), "P_comp(n+1,2) = 0");
        cb.non_compact.add("binomial", in, BigInt(1), "P_non(n+1,2) = 1");
        cb.total.add("binomial", in, BigInt(1));
        lower("binomial", 0, 1);
        return cb;
    }
    ComponentBoundOptions sub_options = options;
    sub_options.smooth = false;
    if (m <= n + 1) {
        // P_non(n,m) = P_non(m-1,m) <= P(m-2,m).
        ComponentBounds sub = component_bounds(m - 2, m, sub_options);
        cb.compact.add("few-terms", in, BigInt(0), "P_comp(n,m) = 0 for 3 <= m <= n + 1");
        cb.non_compact.add("few-terms", in + " -> P(" + str(m - 2) + "," + str(m) + ")", sub.total.value,
                           "P_non(n,m) = P_non(m-1,m) <= P(m-2,m)");
        cb.total.add("few-terms", in, sub.total.value);
        const long long n1 = m - 1;
        BigInt non = std::max(BigInt(m - 1), clamped_power(floor_div(m - 1, 2 * (n1 - 1)) - 1, n1 - 1));
        lower("few-terms", 0, non);
        return cb;
    }

    const ExtendedInt kprime = sparse_root_bound(n, m).value;
    const std::string kin = in + ", K'(n,m)=" + to_string(kprime);
    if (options.smooth) {
        cb.compact.add("critical-points:smooth", kin, kprime, "compact components <= K'(n,m) for smooth Z_+(f)");
    } else {
        cb.compact.add("critical-points", kin, kprime ? ExtendedInt(2 * (*kprime / 2)) : std::nullopt,
                       "compact components <= 2 floor(K'(n,m)/2)");
    }

    ComponentBounds lower_dim = component_bounds(n - 1, m, sub_options);
    const ExtendedInt p_sub = lower_dim.total.value;
    cb.non_compact.add("slicing", in + ", P(n-1,m)=" + to_string(p_sub),
                       p_sub ? ExtendedInt(2 * *p_sub) : std::nullopt, "non-compact components <= 2 P(n-1,m)");
    if (n == 2 && options.facet_refinement) {
        cb.non_compact.add("facet-sum", in, BigInt(m),
                           "sum over edges Q of Newt(f) of (#Supp(f) on Q - 1) <= m; assumes smooth initial forms");
    }

    const ExtendedInt comp = cb.compact.value;
    const ExtendedInt non = cb.non_compact.value;
    cb.total.add("compact-plus-non-compact", in, comp && non ? ExtendedInt(*comp + *non) : std::nullopt);
    cb.total.add("recursive", in, kprime && p_sub ? ExtendedInt(*kprime + 2 * *p_sub) : std::nullopt,
                 "P(n,m) <= K'(n,m) + 2 P(n-1,m)");
    ExtendedInt chain = BigInt(0);
    for (int i = 0; i < n && chain; ++i) {
        const ExtendedInt k = sparse_root_bound(n - i, m).value;
        chain = k ? ExtendedInt(*chain + pow2(i) * *k) : std::nullopt;
    }
    cb.total.add("recursive-sum", in, chain, "sum_i 2^i K(n-i,m), with K' values substituted for K");
    cb.total.add("recursive-explicit", in,
                 BigInt(n) * pow_big(BigInt(n + 1), m) * pow2(n - 1) * pow2_triangle(m),
                 "n (n+1)^m 2^{n-1} 2^{m(m-1)/2}");
    cb.total.add("finite-components", in, finite_components_bound(n, m),
                 "floor(2^{n-1/2} (2n+1)^m 2^{m(m+1)/2})");

    BigInt comp_lo = std::max({BigInt(m / 2 - n - 1), clamped_power(floor_div(m - 1, 2 * n) - 1, n), BigInt(0)});
    BigInt non_lo = std::max(BigInt(m - 1), clamped_power(floor_div(m - 1, 2 * (n - 1)) - 1, n - 1));
    lower("witness-families", comp_lo, non_lo);
    return cb;
}

BoundReport moment_facet_bound(const Fewnomial& f, bool assume_smooth)
{
    const std::size_t n = f.dimension();
    PolytopeInfo info = newton_polytope(f);
    if (info.dimension != static_cast<int>(n) || n < 1) {
        throw NotApplicableError("moment_facet_bound needs a full-dimensional Newton polytope");
    }
    BoundReport rep(BoundKind::NonCompactComponents);
    const std::string in = join({{"n", str(static_cast<long long>(n))},
                                 {"m", str(static_cast<long long>(info.points.size()))},
                                 {"facets", str(static_cast<long long>(info.facets.size()))}});
    std::ostringstream counts;
    ExtendedInt coarse = BigInt(0);
    ExtendedInt fine = BigInt(0);
    ComponentBoundOptions coarse_opts;
    coarse_opts.facet_refinement = false;
    for (std::size_t i = 0; i < info.facets.size(); ++i) {
        const int k = static_cast<int>(info.facets[i].points.size());
        counts << (i ? "," : "") << k;
        if (n == 1) {
            // Facets of a segment are single points: P(0, 1) = 0.
            continue;
        }
        const ExtendedInt pc = component_bounds(static_cast<int>(n) - 1, k, coarse_opts).total.value;
        const ExtendedInt pf = component_bounds(static_cast<int>(n) - 1, k).total.value;
        coarse = coarse && pc ? ExtendedInt(*coarse + *pc) : std::nullopt;
        fine = fine && pf ? ExtendedInt(*fine + *pf) : std::nullopt;
    }
    const std::string note = "sum over facets Q of P(n-1, #Supp(f) on Q); assumes smooth initial forms";
    rep.add("facet-sum", in + ", points per facet=(" + counts.str() + ")", coarse, note);
    rep.add("facet-sum:refined", in + ", points per facet=(" + counts.str() + ")", fine,
            note + "; facet counts use the facet-sum refinement recursively");
    if (n == 2 && assume_smooth) {
        std::size_t boundary = 0;
        for (const Point& p : info.points) {
            if (!info.in_relative_interior(p)) ++boundary;
        }
        rep.add("boundary-points", in + ", m'=" + str(static_cast<long long>(boundary)), BigInt(boundary / 2),
                "floor(m'/2) for a smooth curve with smooth initial forms");
    }
    return rep;
}

CurveFeatureBounds curve_feature_bounds(int m, const CurveFamily& family)
{
    if (m < 0) throw ValidationError("curve_feature_bounds needs m >= 0");
    CurveFeatureBounds out;
    const std::string in = "m=" + str(m);
    if (m <= 2) {
        out.vertical.add("binomial-curve", in, BigInt(0), "a binomial curve is a line in log coordinates");
        out.inflections.add("binomial-curve", in, BigInt(0), "a binomial curve is a line in log coordinates");
    } else {
        const BoundReport k = sparse_root_bound(2, m);
        out.vertical.add("tangency-system", in + ", K(2,m)=" + to_string(k.value), k.value,
                         "(f, x2 d2 f) is m-sparse: V(m) <= K(2,m)");
        if (m == 3) {
            out.vertical.add("trinomial", in, BigInt(1), "V(3) <= 1");
            out.inflections.add("trinomial", in, BigInt(3), "I(3) <= 3 K'(2,3) = 3");
        } else {
            out.inflections.add("no-closed-form", in, std::nullopt, "inflection bounds are stated for m <= 3 only");
        }
    }
    if (family.area) {
        const std::string fin = "Area=" + str(*family.area);
        out.vertical.add("polynomial-family", fin, BigInt(*family.area), "Area(Newt p) vertical tangents");
        out.inflections.add("polynomial-family", fin, BigInt(3 * *family.area), "3 Area(Newt p) inflection points");
    }
    return out;
}

std::string to_string(WitnessKind kind)
{
    switch (kind) {
    case WitnessKind::G1: return "g1";
    case WitnessKind::G2: return "g2";
    case WitnessKind::H1: return "h1";
    case WitnessKind::H2: return "h2";
    case WitnessKind::EqEasy: return "eq-easy";
    case WitnessKind::EqDegen: return "eq-degen";
    }
    return "unknown";
}

std::optional<WitnessKind> witness_kind_from_string(const std::string& s)
{
    for (WitnessKind k : {WitnessKind::G1, WitnessKind::G2, WitnessKind::H1, WitnessKind::H2, WitnessKind::EqEasy,
                          WitnessKind::EqDegen}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

namespace {

/** x_j - c in n variables. */
Fewnomial shifted_variable(std::size_t n, std::size_t j, double c)
{
    ExponentVector e(n, 0.0);
    e[j] = 1.0;
    return Fewnomial(n, {Term{1.0, e}, Term{-c, ExponentVector(n, 0.0)}});
}

/** prod_{i=1}^{k} (x_j - i)^power. */
Fewnomial grid_product(std::size_t n, std::size_t j, int k, unsigned power)
{
    Fewnomial out = Fewnomial::constant(n, 1.0);
    for (int i = 1; i <= k; ++i) out = out * pow(shifted_variable(n, j, i), power);
    return out;
}

void check_exact(const FewnomialSystem& system)
{
    for (const Fewnomial& f : system.members()) {
        for (const Term& t : f.terms()) {
            if (std::abs(t.coeff) >= 9007199254740992.0) {
                throw ValidationError("witness coefficients exceed the exactly representable integer range");
            }
        }
    }
}

/** All points of {1..k}^dims, padded with `rest` in the remaining coordinates. */
std::vector<Point> grid_points(int k, std::size_t dims, std::size_t n)
{
    std::vector<Point> out;
    Point p(n, 1.0);
    std::vector<int> idx(dims, 1);
    if (k < 1) return out;
    while (true) {
        for (std::size_t d = 0; d < dims; ++d) p[d] = idx[d];
        out.push_back(p);
        std::size_t d = 0;
        while (d < dims && idx[d] == k) idx[d++] = 1;
        if (d == dims) break;
        ++idx[d];
    }
    return out;
}

}  // namespace

Witness make_witness(WitnessKind kind, int n, int m)
{
    Witness w;
    w.kind = kind;
    const auto un = static_cast<std::size_t>(std::max(n, 1));
    switch (kind) {
    case WitnessKind::G1: {
        if (n < 1) throw ValidationError("g1 needs n >= 1");
        const int k = m / 2 - n - 1;
        if (k < 1) throw ValidationError("g1 is empty unless floor(m/2) - n - 1 >= 1");
        Fewnomial f = grid_product(un, 0, k, 2);
        for (std::size_t i = 1; i < un; ++i) f = f + pow(shifted_variable(un, i, 1.0), 2);
        w.system = FewnomialSystem(un, {f});
        w.counts = "isolated points";
        w.expected_count = static_cast<std::size_t>(k);
        w.formula_value = k;
        w.known_roots = grid_points(k, 1, un);
        break;
    }
    case WitnessKind::G2: {
        if (n < 1) throw ValidationError("g2 needs n >= 1");
        const int k = (m - 1) / (2 * n);
        if (m < 1 || k < 1) throw ValidationError("g2 is empty unless floor((m-1)/(2n)) >= 1");
        Fewnomial f(un);
        for (std::size_t j = 0; j < un; ++j) f = f + grid_product(un, j, k, 2);
        w.system = FewnomialSystem(un, {f});
        w.counts = "isolated points";
        w.known_roots = grid_points(k, un, un);
        w.expected_count = w.known_roots.size();
        w.formula_value = clamped_power(k - 1, n);
        break;
    }
    case WitnessKind::H1: {
        if (n < 1 || m < 2) throw ValidationError("h1 needs n >= 1 and m >= 2");
        w.system = FewnomialSystem(un, {grid_product(un, 0, m - 1, 1)});
        w.counts = "non-compact components";
        w.expected_count = static_cast<std::size_t>(m - 1);
        w.formula_value = m - 1;
        break;
    }
    case WitnessKind::H2: {
        if (n < 2) throw ValidationError("h2 needs n >= 2");
        const int k = (m - 1) / (2 * n - 2);
        if (m < 1 || k < 1) throw ValidationError("h2 is empty unless floor((m-1)/(2n-2)) >= 1");
        Fewnomial f(un);
        for (std::size_t j = 0; j + 1 < un; ++j) f = f + grid_product(un, j, k, 2);
        w.system = FewnomialSystem(un, {f});
        w.counts = "non-compact components";
        w.expected_count = static_cast<std::size_t>(pow_big(BigInt(k), n - 1));
        w.formula_value = clamped_power(k - 1, n - 1);
        break;
    }
    case WitnessKind::EqEasy: {
        if (n < 1 || m < 2) throw ValidationError("eq-easy needs n >= 1 and m >= 2");
        std::vector<Fewnomial> members;
        for (std::size_t j = 0; j < un; ++j) members.push_back(grid_product(un, j, m - 1, 1));
        w.system = FewnomialSystem(un, members);
        w.counts = "roots";
        w.known_roots = grid_points(m - 1, un, un);
        w.expected_count = w.known_roots.size();
        w.formula_value = w.expected_count;
        break;
    }
    case WitnessKind::EqDegen: {
        const std::size_t d = 3;
        Fewnomial zm1 = shifted_variable(d, 2, 1.0);
        Fewnomial x = Fewnomial::monomial(1.0, {1, 0, 0});
        Fewnomial y = Fewnomial::monomial(1.0, {0, 1, 0});
        Fewnomial g = grid_product(d, 0, 5, 2) + grid_product(d, 1, 5, 2);
        w.system = FewnomialSystem(d, {x * zm1, y * zm1, g});
        w.counts = "roots";
        for (int i = 1; i <= 5; ++i) {
            for (int j = 1; j <= 5; ++j) w.known_roots.push_back({double(i), double(j), 1.0});
        }
        w.expected_count = w.known_roots.size();
        w.formula_value = 25;
        break;
    }
    }
    check_exact(w.system);
    return w;
}

}  // namespace fewnomial
