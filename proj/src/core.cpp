#include "fewnomial/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fewnomial {

bool same_exponent(const ExponentVector& a, const ExponentVector& b, double tol)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

double compensated_sum(std::vector<double> values)
{
    std::sort(values.begin(), values.end(), [](double x, double y) {
        double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax < ay;
        return x < y;
    });
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

int ScaledValue::sign(double rel_tol) const
{
    if (std::abs(mantissa) <= rel_tol * magnitude) return 0;
    return mantissa > 0 ? 1 : -1;
}

double ScaledValue::value() const
{
    if (mantissa == 0.0) return 0.0;
    return mantissa * std::exp(log_factor);
}

ScaledValue scaled_sum(const std::vector<double>& signs, const std::vector<double>& log_abs)
{
    ScaledValue out;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 0.0 && std::isfinite(log_abs[i])) top = std::max(top, log_abs[i]);
    }
    if (!std::isfinite(top)) return out;
    std::vector<double> parts;
    parts.reserve(signs.size());
    double magnitude = 0.0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == 0.0 || !std::isfinite(log_abs[i])) continue;
        double e = std::exp(log_abs[i] - top);
        parts.push_back(signs[i] > 0 ? e : -e);
        magnitude += e;
    }
    out.mantissa = compensated_sum(std::move(parts));
    out.magnitude = magnitude;
    out.log_factor = top;
    return out;
}

Fewnomial::Fewnomial(std::size_t n, const std::vector<Term>& terms) : n_(n)
{
    for (const Term& t : terms) add_term(t.coeff, t.exponent);
}

Fewnomial Fewnomial::from_terms_strict(std::size_t n, const std::vector<Term>& terms)
{
    Fewnomial f(n);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Term& t = terms[i];
        if (t.exponent.size() != n) {
            std::ostringstream msg;
            msg << "term " << i << ": exponent has length " << t.exponent.size() << ", expected " << n;
            throw ValidationError(msg.str());
        }
        if (!std::isfinite(t.coeff)) {
            throw ValidationError("term " + std::to_string(i) + ": coefficient is not finite");
        }
        if (t.coeff == 0.0) throw ValidationError("term " + std::to_string(i) + ": zero coefficient");
        for (double a : t.exponent) {
            if (!std::isfinite(a)) throw ValidationError("term " + std::to_string(i) + ": exponent is not finite");
        }
        for (std::size_t j = 0; j < f.terms_.size(); ++j) {
            if (same_exponent(f.terms_[j].exponent, t.exponent)) {
                std::ostringstream msg;
                msg << "terms " << j << " and " << i << ": duplicate exponent vector";
                throw ValidationError(msg.str());
            }
        }
        f.terms_.push_back(t);
    }
    return f;
}

Fewnomial Fewnomial::constant(std::size_t n, double c)
{
    Fewnomial f(n);
    f.add_term(c, ExponentVector(n, 0.0));
    return f;
}

Fewnomial Fewnomial::monomial(double c, const ExponentVector& a)
{
    Fewnomial f(a.size());
    f.add_term(c, a);
    return f;
}

std::vector<ExponentVector> Fewnomial::support() const
{
    std::vector<ExponentVector> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back(t.exponent);
    return out;
}

void Fewnomial::add_term(double c, const ExponentVector& a)
{
    if (a.size() != n_) throw ValidationError("exponent dimension does not match fewnomial dimension");
    if (c == 0.0) return;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        if (same_exponent(terms_[j].exponent, a)) {
            double old = terms_[j].coeff;
            double merged = old + c;
            if (std::abs(merged) < kMergeDropTol * std::max(std::abs(old), std::abs(c))) {
                terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(j));
            } else {
                terms_[j].coeff = merged;
            }
            return;
        }
    }
    terms_.push_back(Term{c, a});
}

void Fewnomial::check_point(const Point& x) const
{
    if (x.size() != n_) throw DomainError("point dimension does not match fewnomial dimension");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
            throw DomainError("coordinate " + std::to_string(i) + " is not strictly positive");
        }
    }
}

double Fewnomial::evaluate(const Point& x) const
{
    check_point(x);
    std::vector<double> logx(n_);
    for (std::size_t i = 0; i < n_; ++i) logx[i] = std::log(x[i]);
    std::vector<double> addends;
    addends.reserve(terms_.size());
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const Term& t = terms_[k];
        // A product of powers is exact for small integer data; exp of the
        // log-linear form is the fallback when a partial power leaves the range.
        double prod = 1.0;
        double e = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (t.exponent[i] == 0.0) continue;
            prod *= std::pow(x[i], t.exponent[i]);
            e += t.exponent[i] * logx[i];
        }
        if (!std::isfinite(prod) || prod == 0.0) prod = std::exp(e);
        double v = t.coeff * prod;
        if (!std::isfinite(v)) {
            throw OverflowError("term " + std::to_string(k) + " overflows at the given point", k);
        }
        addends.push_back(v);
    }
    return compensated_sum(std::move(addends));
}

ScaledValue Fewnomial::evaluate_log(const Point& z) const
{
    if (z.size() != n_) throw DomainError("point dimension does not match fewnomial dimension");
    std::vector<double> signs(terms_.size()), logs(terms_.size());
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const Term& t = terms_[k];
        double e = std::log(std::abs(t.coeff));
        for (std::size_t i = 0; i < n_; ++i) {
            if (t.exponent[i] != 0.0) e += t.exponent[i] * z[i];
        }
        signs[k] = t.coeff > 0 ? 1.0 : -1.0;
        logs[k] = e;
    }
    return scaled_sum(signs, logs);
}

double Fewnomial::term_scale(const Point& x) const
{
    check_point(x);
    double s = 0.0;
    for (const Term& t : terms_) {
        double e = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (t.exponent[i] != 0.0) e += t.exponent[i] * std::log(x[i]);
        }
        s += std::abs(t.coeff) * std::exp(e);
    }
    return s;
}

std::vector<double> Fewnomial::log_gradient(const Point& x) const
{
    std::vector<double> g(n_);
    for (std::size_t i = 0; i < n_; ++i) g[i] = log_derivative(i).evaluate(x);
    return g;
}

Fewnomial Fewnomial::log_derivative(std::size_t i) const
{
    if (i >= n_) throw DomainError("variable index out of range");
    Fewnomial out(n_);
    for (const Term& t : terms_) out.add_term(t.coeff * t.exponent[i], t.exponent);
    return out;
}

Fewnomial Fewnomial::partial(std::size_t i) const
{
    if (i >= n_) throw DomainError("variable index out of range");
    Fewnomial out(n_);
    for (const Term& t : terms_) {
        ExponentVector a = t.exponent;
        double c = t.coeff * a[i];
        a[i] -= 1.0;
        out.add_term(c, a);
    }
    return out;
}

Fewnomial Fewnomial::times_monomial(double c, const ExponentVector& shift) const
{
    if (shift.size() != n_) throw ValidationError("shift dimension does not match fewnomial dimension");
    Fewnomial out(n_);
    for (const Term& t : terms_) {
        ExponentVector a = t.exponent;
        for (std::size_t i = 0; i < n_; ++i) a[i] += shift[i];
        out.add_term(t.coeff * c, a);
    }
    return out;
}

Fewnomial Fewnomial::scaled(double s) const
{
    Fewnomial out(n_);
    for (const Term& t : terms_) out.add_term(t.coeff * s, t.exponent);
    return out;
}

Fewnomial Fewnomial::operator+(const Fewnomial& other) const
{
    if (other.n_ != n_) throw ValidationError("dimension mismatch in fewnomial sum");
    Fewnomial out = *this;
    for (const Term& t : other.terms_) out.add_term(t.coeff, t.exponent);
    return out;
}

Fewnomial Fewnomial::operator-(const Fewnomial& other) const
{
    return *this + other.scaled(-1.0);
}

Fewnomial Fewnomial::operator*(const Fewnomial& other) const
{
    if (other.n_ != n_) throw ValidationError("dimension mismatch in fewnomial product");
    Fewnomial out(n_);
    for (const Term& s : terms_) {
        for (const Term& t : other.terms_) {
            ExponentVector a = s.exponent;
            for (std::size_t i = 0; i < n_; ++i) a[i] += t.exponent[i];
            out.add_term(s.coeff * t.coeff, a);
        }
    }
    return out;
}

Fewnomial Fewnomial::sorted() const
{
    Fewnomial out = *this;
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    return out;
}

Fewnomial pow(const Fewnomial& f, unsigned k)
{
    Fewnomial out = Fewnomial::constant(f.dimension(), 1.0);
    for (unsigned i = 0; i < k; ++i) out = out * f;
    return out;
}

FewnomialSystem::FewnomialSystem(std::size_t n, std::vector<Fewnomial> members)
    : n_(n), members_(std::move(members))
{
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].dimension() != n_) {
            throw ValidationError("member " + std::to_string(i) + " has the wrong dimension");
        }
    }
}

std::vector<std::size_t> FewnomialSystem::type_signature() const
{
    std::vector<std::size_t> out;
    for (const Fewnomial& f : members_) out.push_back(f.size());
    return out;
}

std::size_t FewnomialSystem::sparsity() const
{
    std::vector<ExponentVector> seen;
    for (const Fewnomial& f : members_) {
        for (const Term& t : f.terms()) {
            bool found = false;
            for (const ExponentVector& s : seen) {
                if (same_exponent(s, t.exponent)) {
                    found = true;
                    break;
                }
            }
            if (!found) seen.push_back(t.exponent);
        }
    }
    return seen.size();
}

std::vector<double> FewnomialSystem::residuals(const Point& x) const
{
    std::vector<double> out;
    for (const Fewnomial& f : members_) out.push_back(std::abs(f.evaluate(x)));
    return out;
}

std::vector<double> FewnomialSystem::relative_residuals(const Point& x) const
{
    std::vector<double> out;
    for (const Fewnomial& f : members_) {
        double s = f.term_scale(x);
        out.push_back(s > 0 ? std::abs(f.evaluate(x)) / s : 0.0);
    }
    return out;
}

}  // namespace fewnomial
