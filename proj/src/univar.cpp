#include "fewnomial/univar.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

namespace fewnomial {

int sign_alternations(const std::vector<double>& coeffs)
{
    int count = 0;
    int last = 0;
    for (double c : coeffs) {
        int s = (c > 0) - (c < 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

ExponentialSum::ExponentialSum(std::vector<double> coeffs, std::vector<double> exponents)
{
    if (coeffs.size() != exponents.size()) throw ValidationError("coefficient and exponent counts differ");
    std::vector<std::size_t> order(coeffs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return exponents[i] < exponents[j]; });
    for (std::size_t i : order) {
        if (!std::isfinite(coeffs[i]) || !std::isfinite(exponents[i])) throw ValidationError("non-finite term");
        if (coeffs[i] == 0.0) continue;
        if (!exponents_.empty() && std::abs(exponents_.back() - exponents[i]) <= kExponentTol) {
            double old = coeffs_.back();
            double merged = old + coeffs[i];
            if (std::abs(merged) < kMergeDropTol * std::max(std::abs(old), std::abs(coeffs[i]))) {
                coeffs_.pop_back();
                exponents_.pop_back();
            } else {
                coeffs_.back() = merged;
            }
            continue;
        }
        coeffs_.push_back(coeffs[i]);
        exponents_.push_back(exponents[i]);
    }
}

double ExponentialSum::evaluate(double x) const
{
    if (!(x > 0.0)) throw DomainError("exponential sums are evaluated at positive points only");
    std::vector<double> parts;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) parts.push_back(coeffs_[i] * std::pow(x, exponents_[i]));
    return compensated_sum(std::move(parts));
}

ScaledValue ExponentialSum::evaluate_log(double s) const
{
    std::vector<double> signs(coeffs_.size()), logs(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        signs[i] = coeffs_[i] > 0 ? 1.0 : -1.0;
        logs[i] = std::log(std::abs(coeffs_[i])) + exponents_[i] * s;
    }
    return scaled_sum(signs, logs);
}

int descartes_bound(const ExponentialSum& f)
{
    return sign_alternations(f.coeffs());
}

std::vector<double> RootReport::values() const
{
    std::vector<double> out;
    for (const RootEntry& r : roots) out.push_back(r.t);
    return out;
}

namespace {

/** One function of a Rolle chain, on an interval of the real line. */
class ChainFunction {
  public:
    virtual ~ChainFunction() = default;
    virtual ScaledValue eval(double x) const = 0;
    /** Sign of the limit at +inf (upper) or -inf (lower); 0 when undetermined. */
    virtual int limit_sign(bool upper) const = 0;
};

struct Domain {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_inf = false;
    bool hi_inf = false;
};

struct ChainOutcome {
    std::vector<RootEntry> roots;
    std::size_t suspects = 0;
    bool converged = true;
    bool ambiguous_end = false;
    std::vector<std::string> diagnostics;
};

double common_value(const ScaledValue& v, double ref)
{
    if (v.mantissa == 0.0) return 0.0;
    return v.mantissa * std::exp(v.log_factor - ref);
}

/** Illinois regula falsi on a bracket [a, b] with a strict sign change. */
double refine_bracket(const ChainFunction& f, double a, double b, ScaledValue fa, ScaledValue fb, bool& converged,
                      bool& at_resolution)
{
    at_resolution = false;
    int side = 0;
    int sa = fa.sign();
    for (int iter = 0; iter < 400; ++iter) {
        double ref = std::max(fa.log_factor, fb.log_factor);
        double va = common_value(fa, ref);
        double vb = common_value(fb, ref);
        double c;
        if (iter % 3 == 2 || !(std::isfinite(va) && std::isfinite(vb)) || va == vb) {
            c = 0.5 * (a + b);
        } else {
            c = b - vb * (b - a) / (vb - va);
            if (!(c > a && c < b)) c = 0.5 * (a + b);
        }
        if (c <= a || c >= b) {
            at_resolution = true;
            return std::abs(va) < std::abs(vb) ? a : b;
        }
        ScaledValue fc = f.eval(c);
        int sc = fc.sign();
        if (sc == 0) return c;
        if (sc == sa) {
            a = c;
            fa = fc;
            if (side == -1) fb.mantissa *= 0.5;
            side = -1;
        } else {
            b = c;
            fb = fc;
            if (side == 1) fa.mantissa *= 0.5;
            side = 1;
        }
        double width = b - a;
        double scale = std::max(std::abs(a), std::abs(b));
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * scale || width <= 1e-300) {
            at_resolution = true;
            return 0.5 * (a + b);
        }
    }
    converged = false;
    return 0.5 * (a + b);
}

/** Finds a finite point beyond p (towards +inf or -inf) where f has the given sign. */
std::optional<double> expand_bracket(const ChainFunction& f, double p, bool upper, int target)
{
    double step = std::max(1.0, std::abs(p));
    for (int i = 0; i < 2100; ++i) {
        double x = upper ? p + step : p - step;
        if (!std::isfinite(x)) return std::nullopt;
        if (f.eval(x).sign() == target) return x;
        step *= 2.0;
    }
    return std::nullopt;
}

/**
 * Roots of chain[0] in the domain, given that chain[k+1] is (up to a positive
 * factor) the derivative of chain[k] times a positive function and that
 * chain.back() has no roots in the domain.
 */
ChainOutcome isolate_chain(const std::vector<std::unique_ptr<ChainFunction>>& chain, const Domain& dom)
{
    ChainOutcome out;
    std::vector<double> critical;
    for (std::size_t level = chain.size() - 1; level-- > 0;) {
        const ChainFunction& f = *chain[level];
        std::vector<RootEntry> roots;
        struct Node {
            double x;
            ScaledValue v;
            int sign;
            bool infinite;
        };
        std::vector<Node> nodes;
        if (dom.lo_inf) {
            int s = f.limit_sign(false);
            if (s == 0) out.ambiguous_end = true;
            nodes.push_back({-kInfinity, ScaledValue{}, s, true});
        } else {
            ScaledValue v = f.eval(dom.lo);
            nodes.push_back({dom.lo, v, v.sign(kSuspectTol), false});
        }
        for (double c : critical) {
            ScaledValue v = f.eval(c);
            int s = v.sign(kSuspectTol);
            nodes.push_back({c, v, s, false});
            if (s == 0) {
                double residual = v.magnitude > 0 ? std::abs(v.mantissa) / v.magnitude : 0.0;
                roots.push_back({c, residual, true});
                ++out.suspects;
            }
        }
        if (dom.hi_inf) {
            int s = f.limit_sign(true);
            if (s == 0) out.ambiguous_end = true;
            nodes.push_back({kInfinity, ScaledValue{}, s, true});
        } else {
            ScaledValue v = f.eval(dom.hi);
            nodes.push_back({dom.hi, v, v.sign(kSuspectTol), false});
        }
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            Node a = nodes[i];
            Node b = nodes[i + 1];
            if (a.sign == 0 || b.sign == 0 || a.sign == b.sign) continue;
            if (a.infinite && b.infinite) {
                ScaledValue v0 = f.eval(0.0);
                int s0 = v0.sign();
                if (s0 == 0) {
                    roots.push_back({0.0, 0.0, false});
                    continue;
                }
                if (s0 == a.sign) {
                    a = {0.0, v0, s0, false};
                } else {
                    b = {0.0, v0, s0, false};
                }
            }
            if (a.infinite) {
                auto x = expand_bracket(f, b.x, false, a.sign);
                if (!x) {
                    out.converged = false;
                    out.diagnostics.push_back("could not bracket a root towards -infinity");
                    continue;
                }
                a = {*x, f.eval(*x), a.sign, false};
            }
            if (b.infinite) {
                auto x = expand_bracket(f, a.x, true, b.sign);
                if (!x) {
                    out.converged = false;
                    out.diagnostics.push_back("could not bracket a root towards +infinity");
                    continue;
                }
                b = {*x, f.eval(*x), b.sign, false};
            }
            bool ok = true, resolved = false;
            double r = refine_bracket(f, a.x, b.x, a.v, b.v, ok, resolved);
            if (!ok) {
                out.converged = false;
                out.diagnostics.push_back("root refinement did not converge");
            }
            ScaledValue v = f.eval(r);
            double residual = v.magnitude > 0 ? std::abs(v.mantissa) / v.magnitude : 0.0;
            roots.push_back({r, residual, false, resolved});
        }
        std::sort(roots.begin(), roots.end(), [](const RootEntry& x, const RootEntry& y) { return x.t < y.t; });
        if (level == 0) {
            out.roots = roots;
        } else {
            critical.clear();
            for (const RootEntry& r : roots) critical.push_back(r.t);
        }
    }
    return out;
}

double endpoint_gap(double e)
{
    return 10.0 * kRootTol * std::max(1.0, std::abs(e));
}

class ExpSumLevel : public ChainFunction {
  public:
    explicit ExpSumLevel(ExponentialSum f) : f_(std::move(f)) {}
    ScaledValue eval(double s) const override { return f_.evaluate_log(s); }
    int limit_sign(bool upper) const override
    {
        if (f_.size() == 0) return 0;
        double c = upper ? f_.coeffs().back() : f_.coeffs().front();
        return c > 0 ? 1 : -1;
    }

  private:
    ExponentialSum f_;
};

void finish_report(RootReport& rep, const ChainOutcome& out)
{
    rep.roots = out.roots;
    rep.diagnostics.insert(rep.diagnostics.end(), out.diagnostics.begin(), out.diagnostics.end());
    std::size_t simple = 0, suspect = 0;
    for (const RootEntry& r : rep.roots) (r.suspect ? suspect : simple)++;
    rep.count_low = simple;
    rep.count_high = simple + 2 * suspect;
    rep.certified = out.converged && !out.ambiguous_end && out.suspects == 0 && !rep.continuum &&
                    BigInt(rep.roots.size()) <= rep.bound;
    if (out.suspects > 0) {
        rep.diagnostics.push_back(std::to_string(out.suspects) +
                                  " multiplicity-suspect critical value(s) in the derivative chain");
    }
    if (out.ambiguous_end) rep.diagnostics.push_back("limit sign at an infinite end could not be determined");
    for (const RootEntry& r : rep.roots) {
        // A bracket narrowed to neighbouring doubles pins the root as well as t can represent it.
        if (!r.suspect && !r.at_resolution && r.residual > kResidualTol) {
            rep.certified = false;
            rep.diagnostics.push_back("root residual above tolerance");
            break;
        }
    }
}

}  // namespace

RootReport isolate_expsum_roots(const ExponentialSum& f, double lo, double hi)
{
    if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("isolate_expsum_roots needs 0 <= lo < hi");
    RootReport rep;
    rep.lo = lo;
    rep.hi = hi;
    rep.bound = descartes_bound(f);
    rep.bound_source = "generalized Descartes rule (sign alternations)";
    if (f.size() == 0) {
        rep.continuum = true;
        rep.diagnostics.push_back("the zero function vanishes on the whole interval");
        return rep;
    }
    Domain dom;
    dom.lo_inf = (lo == 0.0);
    dom.hi_inf = std::isinf(hi);
    if (!dom.lo_inf) dom.lo = std::log(lo + endpoint_gap(lo));
    if (!dom.hi_inf) dom.hi = std::log(hi - endpoint_gap(hi));
    if (!dom.lo_inf && !dom.hi_inf && !(dom.lo < dom.hi)) {
        rep.certified = true;
        return rep;
    }
    std::vector<std::unique_ptr<ChainFunction>> chain;
    ExponentialSum cur = f;
    while (true) {
        chain.push_back(std::make_unique<ExpSumLevel>(cur));
        if (cur.size() <= 1) break;
        std::vector<double> c, a;
        for (std::size_t i = 1; i < cur.size(); ++i) {
            double shift = cur.exponents()[i] - cur.exponents()[0];
            c.push_back(cur.coeffs()[i] * shift);
            a.push_back(shift);
        }
        cur = ExponentialSum(c, a);
    }
    ChainOutcome out = isolate_chain(chain, dom);
    for (RootEntry& r : out.roots) r.t = std::exp(r.t);
    finish_report(rep, out);
    return rep;
}

// ---------------------------------------------------------------------------
// Homogeneous polynomials and linear-form products

HomogeneousPolynomial HomogeneousPolynomial::constant(std::size_t nvars, double c)
{
    HomogeneousPolynomial p(nvars);
    p.add(std::vector<int>(nvars, 0), c);
    return p;
}

int HomogeneousPolynomial::degree() const
{
    if (coeffs_.empty()) return -1;
    const std::vector<int>& e = coeffs_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

void HomogeneousPolynomial::add(const std::vector<int>& exponent, double c)
{
    if (exponent.size() != n_) throw ValidationError("monomial has the wrong number of symbols");
    if (c == 0.0) return;
    if (!coeffs_.empty()) {
        const std::vector<int>& e = coeffs_.begin()->first;
        if (std::accumulate(e.begin(), e.end(), 0) != std::accumulate(exponent.begin(), exponent.end(), 0)) {
            throw ValidationError("polynomial must stay homogeneous");
        }
    }
    auto it = coeffs_.find(exponent);
    if (it == coeffs_.end()) {
        coeffs_.emplace(exponent, c);
    } else {
        double merged = it->second + c;
        if (std::abs(merged) < kMergeDropTol * std::max(std::abs(it->second), std::abs(c))) {
            coeffs_.erase(it);
        } else {
            it->second = merged;
        }
    }
}

double HomogeneousPolynomial::evaluate(const std::vector<double>& s) const
{
    std::vector<double> parts;
    for (const auto& [e, c] : coeffs_) {
        double v = c;
        for (std::size_t j = 0; j < n_; ++j) v *= std::pow(s[j], e[j]);
        parts.push_back(v);
    }
    return compensated_sum(std::move(parts));
}

void HomogeneousPolynomial::collect_log_addends(const std::vector<double>& log_s, double extra_log,
                                                std::vector<double>& signs, std::vector<double>& logs) const
{
    for (const auto& [e, c] : coeffs_) {
        double l = std::log(std::abs(c)) + extra_log;
        for (std::size_t j = 0; j < n_; ++j) {
            if (e[j] != 0) l += e[j] * log_s[j];
        }
        signs.push_back(c > 0 ? 1.0 : -1.0);
        logs.push_back(l);
    }
}

namespace {

/**
 * Builds a homogeneous polynomial from a list of (exponent, coefficient)
 * contributions, dropping monomials whose contributions cancel to within
 * round-off of their absolute sum.
 */
HomogeneousPolynomial assemble(std::size_t n, const std::vector<std::pair<std::vector<int>, double>>& parts)
{
    std::map<std::vector<int>, std::pair<double, double>> acc;
    for (const auto& [e, c] : parts) {
        auto& slot = acc[e];
        slot.first += c;
        slot.second += std::abs(c);
    }
    HomogeneousPolynomial out(n);
    for (const auto& [e, v] : acc) {
        if (std::abs(v.first) > 1e-13 * v.second) out.add(e, v.first);
    }
    return out;
}

}  // namespace

HomogeneousPolynomial HomogeneousPolynomial::directional_derivative(const std::vector<double>& v) const
{
    std::vector<std::pair<std::vector<int>, double>> parts;
    for (const auto& [e, c] : coeffs_) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (e[j] == 0 || v[j] == 0.0) continue;
            std::vector<int> d = e;
            d[j] -= 1;
            parts.emplace_back(d, c * e[j] * v[j]);
        }
    }
    return assemble(n_, parts);
}

std::vector<double> HomogeneousPolynomial::restrict_to_line(const std::vector<double>& a,
                                                            const std::vector<double>& b) const
{
    const int deg = std::max(degree(), 0);
    std::vector<double> out(static_cast<std::size_t>(deg) + 1, 0.0);
    for (const auto& [e, c] : coeffs_) {
        std::vector<double> poly{c};
        for (std::size_t j = 0; j < n_; ++j) {
            for (int k = 0; k < e[j]; ++k) {
                std::vector<double> next(poly.size() + 1, 0.0);
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i] += poly[i] * a[j];
                    next[i + 1] += poly[i] * b[j];
                }
                poly = std::move(next);
            }
        }
        for (std::size_t i = 0; i < poly.size() && i < out.size(); ++i) out[i] += poly[i];
    }
    return out;
}

int LinearFormProduct::degree() const
{
    int d = 0;
    for (const LfpTerm& t : terms) d = std::max(d, t.p.degree());
    return d;
}

std::optional<std::pair<double, double>> LinearFormProduct::default_interval() const
{
    double lo = 0.0, hi = kInfinity;
    for (const LinearForm& l : forms) {
        if (l.v > 0) {
            lo = std::max(lo, -l.u / l.v);
        } else if (l.v < 0) {
            hi = std::min(hi, -l.u / l.v);
        } else if (!(l.u > 0)) {
            return std::nullopt;
        }
    }
    if (!(lo < hi)) return std::nullopt;
    return std::make_pair(lo, hi);
}

namespace {

ScaledValue evaluate_parts(const std::vector<LinearForm>& forms, const HomogeneousPolynomial* poly,
                           const std::vector<LfpTerm>& terms, double t)
{
    const std::size_t n = forms.size();
    std::vector<double> log_s(n);
    for (std::size_t j = 0; j < n; ++j) {
        double l = forms[j](t);
        log_s[j] = l > 0 ? std::log(l) : -kInfinity;
    }
    std::vector<double> signs, logs;
    if (poly != nullptr) poly->collect_log_addends(log_s, 0.0, signs, logs);
    for (const LfpTerm& term : terms) {
        double extra = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (term.alpha[j] != 0.0) extra += term.alpha[j] * log_s[j];
        }
        term.p.collect_log_addends(log_s, extra, signs, logs);
    }
    return scaled_sum(signs, logs);
}

}  // namespace

ScaledValue LinearFormProduct::evaluate_scaled(double t) const
{
    return evaluate_parts(forms, nullptr, terms, t);
}

double LinearFormProduct::evaluate(double t) const
{
    return evaluate_scaled(t).value();
}

double LinearFormProduct::evaluate_term(std::size_t i, double t) const
{
    return evaluate_parts(forms, nullptr, {terms.at(i)}, t).value();
}

LfpTerm lfp_differentiate(const LfpTerm& term, const std::vector<LinearForm>& forms)
{
    const std::size_t n = forms.size();
    if (term.p.variables() != n || term.alpha.size() != n) throw ValidationError("term does not match the forms");
    std::vector<std::pair<std::vector<int>, double>> parts;
    for (const auto& [e, c] : term.p.coeffs()) {
        // (sum_j v_j d_j p) * S_1...S_n
        for (std::size_t j = 0; j < n; ++j) {
            if (e[j] == 0 || forms[j].v == 0.0) continue;
            std::vector<int> d = e;
            d[j] -= 1;
            for (int& k : d) k += 1;
            parts.emplace_back(d, c * e[j] * forms[j].v);
        }
        // p * sum_i alpha_i v_i S_1...S_n / S_i
        for (std::size_t i = 0; i < n; ++i) {
            if (term.alpha[i] == 0.0 || forms[i].v == 0.0) continue;
            std::vector<int> d = e;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i) d[k] += 1;
            }
            parts.emplace_back(d, c * term.alpha[i] * forms[i].v);
        }
    }
    LfpTerm out;
    out.p = assemble(n, parts);
    out.alpha = term.alpha;
    for (double& a : out.alpha) a -= 1.0;
    return out;
}

RolleBound rolle_bound(int m, int n, int d)
{
    if (m < 1 || n < 1 || d < 0) throw DomainError("rolle_bound needs m >= 1, n >= 1, D >= 0");
    RolleBound out;
    BigInt deg = d;
    BigInt acc = 0;
    for (int k = m; k > 1; --k) {
        acc += deg + 1;
        deg = deg * n + (n - 1);
    }
    out.recursion = acc + deg;
    BigInt geometric = 0;
    BigInt power = 1;
    for (int i = 0; i <= m; ++i) {
        geometric += power;
        power *= n;
    }
    out.closed_form = geometric * (d + 1) - 1;
    return out;
}

namespace {

/** One level of the linear-form-product chain: polynomial part plus terms. */
struct LfpLevelData {
    std::vector<LinearForm> forms;
    HomogeneousPolynomial poly;
    std::vector<LfpTerm> terms;
};

LfpLevelData normalize_terms(const std::vector<LinearForm>& forms, const std::vector<LfpTerm>& terms)
{
    LfpLevelData out;
    out.forms = forms;
    out.poly = terms.front().p;
    for (std::size_t i = 1; i < terms.size(); ++i) {
        LfpTerm t = terms[i];
        for (std::size_t j = 0; j < t.alpha.size(); ++j) t.alpha[j] -= terms.front().alpha[j];
        out.terms.push_back(std::move(t));
    }
    return out;
}

LfpLevelData derive_level(const LfpLevelData& in)
{
    LfpLevelData out;
    out.forms = in.forms;
    std::vector<double> v;
    for (const LinearForm& l : in.forms) v.push_back(l.v);
    out.poly = in.poly.is_zero() ? HomogeneousPolynomial(in.forms.size()) : in.poly.directional_derivative(v);
    for (const LfpTerm& t : in.terms) {
        LfpTerm d = lfp_differentiate(t, in.forms);
        if (!d.p.is_zero()) out.terms.push_back(std::move(d));
    }
    return out;
}

/** Generalized binomial series (1 + r eps)^beta up to eps^order. */
std::vector<double> binomial_series(double r, double beta, int order)
{
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    double c = 1.0;
    double rk = 1.0;
    for (int k = 0; k <= order; ++k) {
        out[static_cast<std::size_t>(k)] = c * rk;
        c *= (beta - k) / (k + 1);
        rk *= r;
    }
    return out;
}

std::vector<double> series_product(const std::vector<double>& a, const std::vector<double>& b, int order)
{
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(order); ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

class LfpLevel : public ChainFunction {
  public:
    explicit LfpLevel(LfpLevelData data) : d_(std::move(data)) {}

    ScaledValue eval(double t) const override { return evaluate_parts(d_.forms, &d_.poly, d_.terms, t); }

    /**
     * Sign at t -> +inf from the dominant power of t.  Every addend is written
     * as C t^E (1 + O(1/t)) series in eps = 1/t; powers whose contributions
     * cancel are skipped.
     */
    int limit_sign(bool upper) const override
    {
        if (!upper) return 0;
        const std::size_t n = d_.forms.size();
        std::vector<double> u(n), v(n);
        for (std::size_t j = 0; j < n; ++j) {
            u[j] = d_.forms[j].u;
            v[j] = d_.forms[j].v;
        }
        const int order = 12;
        struct Contribution {
            double exponent;
            double sign;
            double log_abs;
        };
        std::vector<Contribution> contributions;
        auto add_family = [&](const HomogeneousPolynomial& p, const std::vector<double>* alpha) {
            if (p.is_zero()) return;
            std::vector<double> q = p.restrict_to_line(v, u);  // p(v + eps u)
            std::vector<double> series(q.begin(), q.end());
            series.resize(static_cast<std::size_t>(order) + 1, 0.0);
            double log_c = 0.0;
            double e = p.degree();
            if (alpha != nullptr) {
                for (std::size_t j = 0; j < n; ++j) {
                    double b = (*alpha)[j];
                    if (b == 0.0) continue;
                    if (v[j] > 0) {
                        log_c += b * std::log(v[j]);
                        e += b;
                        series = series_product(series, binomial_series(u[j] / v[j], b, order), order);
                    } else {
                        log_c += b * std::log(u[j]);
                    }
                }
            }
            // Scale of the polynomial coefficients, for the cancellation test.
            double mag = 0.0;
            for (const auto& kv : p.coeffs()) mag += std::abs(kv.second);
            double vmag = 1.0;
            for (std::size_t j = 0; j < n; ++j) vmag = std::max({vmag, std::abs(v[j]), std::abs(u[j])});
            double floor = 1e-12 * mag * std::pow(vmag, std::max(p.degree(), 0));
            for (int k = 0; k <= order; ++k) {
                double s = series[static_cast<std::size_t>(k)];
                if (std::abs(s) <= floor) continue;
                contributions.push_back({e - k, s > 0 ? 1.0 : -1.0, std::log(std::abs(s)) + log_c});
            }
        };
        add_family(d_.poly, nullptr);
        for (const LfpTerm& t : d_.terms) add_family(t.p, &t.alpha);
        std::sort(contributions.begin(), contributions.end(),
                  [](const Contribution& a, const Contribution& b) { return a.exponent > b.exponent; });
        std::size_t i = 0;
        while (i < contributions.size()) {
            std::size_t j = i;
            std::vector<double> signs, logs;
            while (j < contributions.size() && contributions[i].exponent - contributions[j].exponent <= 1e-9) {
                signs.push_back(contributions[j].sign);
                logs.push_back(contributions[j].log_abs);
                ++j;
            }
            ScaledValue s = scaled_sum(signs, logs);
            int sg = s.sign(1e-10);
            if (sg != 0) return sg;
            i = j;
        }
        return 0;
    }

  private:
    LfpLevelData d_;
};

}  // namespace

RootReport isolate_lfp_roots(const LinearFormProduct& f, std::optional<std::pair<double, double>> interval)
{
    RootReport rep;
    const std::size_t n = f.forms.size();
    for (const LfpTerm& t : f.terms) {
        if (t.p.variables() != n || t.alpha.size() != n) throw ValidationError("term does not match the forms");
    }
    auto dflt = f.default_interval();
    if (!interval) interval = dflt;
    if (!interval || !(interval->first < interval->second)) {
        rep.certified = true;
        rep.diagnostics.push_back("empty interval");
        return rep;
    }
    rep.lo = interval->first;
    rep.hi = interval->second;
    for (const LinearForm& l : f.forms) {
        bool ok_lo = l(rep.lo) >= -1e-12 * (std::abs(l.u) + std::abs(l.v * rep.lo));
        bool ok_hi = std::isinf(rep.hi) ? l.v >= 0 : l(rep.hi) >= -1e-12 * (std::abs(l.u) + std::abs(l.v * rep.hi));
        if (!ok_lo || !ok_hi) throw DomainError("a linear form is not positive on the requested interval");
    }
    if (f.terms.empty()) {
        rep.continuum = true;
        rep.diagnostics.push_back("the zero function vanishes on the whole interval");
        return rep;
    }
    const int m = static_cast<int>(f.terms.size());
    RolleBound rb = rolle_bound(m, static_cast<int>(std::max<std::size_t>(n, 1)), std::max(f.degree(), 0));
    rep.bound = rb.recursion;
    rep.bound_source = "Rolle recursion A(m,D) = A(m-1, nD+n-1) + D + 1";

    Domain dom;
    dom.lo = rep.lo + endpoint_gap(rep.lo);
    dom.hi_inf = std::isinf(rep.hi);
    if (!dom.hi_inf) dom.hi = rep.hi - endpoint_gap(rep.hi);
    if (!dom.hi_inf && !(dom.lo < dom.hi)) {
        rep.certified = true;
        return rep;
    }
    const double probe = dom.hi_inf ? dom.lo + 1.0 : 0.5 * (dom.lo + dom.hi);

    std::vector<std::unique_ptr<ChainFunction>> chain;
    LfpLevelData cur = normalize_terms(f.forms, f.terms);
    while (true) {
        if (cur.poly.is_zero()) {
            if (cur.terms.empty()) {
                rep.continuum = true;
                break;
            }
            cur = normalize_terms(cur.forms, cur.terms);
            continue;
        }
        auto level = std::make_unique<LfpLevel>(cur);
        if (cur.terms.empty() && cur.poly.degree() == 0) {
            chain.push_back(std::move(level));
            break;
        }
        LfpLevelData next = derive_level(cur);
        if (next.poly.is_zero() && next.terms.empty()) {
            // The current level is constant along the interval.
            if (level->eval(probe).sign(kSuspectTol) == 0) rep.continuum = true;
            chain.push_back(std::move(level));
            break;
        }
        chain.push_back(std::move(level));
        int deg = next.poly.degree();
        for (const LfpTerm& t : next.terms) deg = std::max(deg, t.p.degree());
        if (deg > kDegreeCap) {
            rep.diagnostics.push_back("degree cap exceeded in the derivative chain");
            return rep;
        }
        cur = std::move(next);
    }
    if (rep.continuum) {
        if (chain.size() <= 1) {
            rep.diagnostics.push_back("the function vanishes identically on the interval");
            return rep;
        }
        rep.diagnostics.push_back("a derivative level vanishes identically; counts below are not certified");
    }
    ChainOutcome out = isolate_chain(chain, dom);
    bool continuum = rep.continuum;
    rep.continuum = false;
    finish_report(rep, out);
    if (continuum) rep.certified = false;
    return rep;
}

}  // namespace fewnomial
