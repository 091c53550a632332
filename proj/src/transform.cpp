#include "fewnomial/transform.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "fewnomial/polytope.hpp"

namespace fewnomial {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& a)
{
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a[static_cast<std::size_t>(i)].size() != a.size()) throw ValidationError("matrix is not square");
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

Matrix from_eigen(const Eigen::MatrixXd& m)
{
    Matrix out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return out;
}

double max_abs_entry(const Matrix& a)
{
    double s = 0.0;
    for (const auto& row : a) {
        for (double v : row) s = std::max(s, std::abs(v));
    }
    return s;
}

}  // namespace

Matrix identity_matrix(std::size_t n)
{
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

Matrix matrix_product(const Matrix& a, const Matrix& b)
{
    return from_eigen(to_eigen(a) * to_eigen(b));
}

Matrix matrix_inverse(const Matrix& a)
{
    double det = matrix_determinant(a);
    double scale = max_abs_entry(a);
    if (scale == 0.0 || std::abs(det) <= kDeterminantTol * std::pow(scale, static_cast<double>(a.size()))) {
        throw SingularMapError("matrix is singular to working tolerance");
    }
    return from_eigen(to_eigen(a).fullPivLu().inverse());
}

double matrix_determinant(const Matrix& a)
{
    if (a.empty()) return 1.0;
    return to_eigen(a).fullPivLu().determinant();
}

double matrix_condition(const Matrix& a)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    const Eigen::VectorXd& s = svd.singularValues();
    if (s.size() == 0) return 1.0;
    double lo = s(s.size() - 1);
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / lo;
}

MonomialMap MonomialMap::monomial(const Matrix& a)
{
    MonomialMap m(a.size());
    m.add_monomial(a);
    return m;
}

void MonomialMap::add_monomial(const Matrix& a)
{
    if (a.size() != n_) throw ValidationError("monomial map has the wrong dimension");
    double det = matrix_determinant(a);
    double scale = max_abs_entry(a);
    if (scale == 0.0 || std::abs(det) <= kDeterminantTol * std::pow(scale, static_cast<double>(n_))) {
        throw SingularMapError("monomial map matrix is singular (|det A| below tolerance)");
    }
    double cond = matrix_condition(a);
    if (cond > kConditionWarn) {
        std::ostringstream msg;
        msg << "monomial map is ill-conditioned (condition number " << cond << ")";
        warnings_.push_back(msg.str());
    }
    MapStep step;
    step.kind = MapStep::Kind::Monomial;
    step.matrix = a;
    steps_.push_back(std::move(step));
}

void MonomialMap::add_scale(const std::vector<double>& s)
{
    if (s.size() != n_) throw ValidationError("scaling has the wrong dimension");
    for (double v : s) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("scaling factors must be positive");
    }
    MapStep step;
    step.kind = MapStep::Kind::Scale;
    step.scale = s;
    steps_.push_back(std::move(step));
}

void MonomialMap::add_divide(std::size_t member, double c, const ExponentVector& a)
{
    MapStep step;
    step.kind = MapStep::Kind::Divide;
    step.member = member;
    step.coeff = c;
    step.exponent = a;
    steps_.push_back(std::move(step));
}

void MonomialMap::append(const MonomialMap& other)
{
    if (other.n_ != n_) throw ValidationError("cannot compose maps of different dimensions");
    steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
    warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

Matrix MonomialMap::composite_matrix() const
{
    Matrix m = identity_matrix(n_);
    for (const MapStep& s : steps_) {
        if (s.kind == MapStep::Kind::Monomial) m = matrix_product(s.matrix, m);
    }
    return m;
}

Point MonomialMap::forward(const Point& x) const
{
    if (x.size() != n_) throw DomainError("point has the wrong dimension");
    Point cur = x;
    for (const MapStep& s : steps_) {
        if (s.kind == MapStep::Kind::Monomial) {
            // log y = A^{-T} log x
            Eigen::VectorXd lx(static_cast<Eigen::Index>(n_));
            for (std::size_t i = 0; i < n_; ++i) {
                if (!(cur[i] > 0.0)) throw DomainError("non-positive coordinate in forward map");
                lx(static_cast<Eigen::Index>(i)) = std::log(cur[i]);
            }
            Eigen::VectorXd ly = to_eigen(s.matrix).transpose().fullPivLu().solve(lx);
            for (std::size_t i = 0; i < n_; ++i) cur[i] = std::exp(ly(static_cast<Eigen::Index>(i)));
        } else if (s.kind == MapStep::Kind::Scale) {
            for (std::size_t i = 0; i < n_; ++i) cur[i] /= s.scale[i];
        }
    }
    return cur;
}

Point MonomialMap::inverse(const Point& y) const
{
    if (y.size() != n_) throw DomainError("point has the wrong dimension");
    Point cur = y;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
        const MapStep& s = *it;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(cur[i] > 0.0) || !std::isfinite(cur[i])) {
                throw DomainError("inconsistent back-map: intermediate coordinate is not positive and finite");
            }
        }
        if (s.kind == MapStep::Kind::Monomial) {
            // log x = A^T log y
            std::vector<double> ly(n_);
            for (std::size_t i = 0; i < n_; ++i) ly[i] = std::log(cur[i]);
            for (std::size_t j = 0; j < n_; ++j) {
                double e = 0.0;
                for (std::size_t i = 0; i < n_; ++i) e += s.matrix[i][j] * ly[i];
                cur[j] = std::exp(e);
            }
        } else if (s.kind == MapStep::Kind::Scale) {
            for (std::size_t i = 0; i < n_; ++i) cur[i] *= s.scale[i];
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (!(cur[i] > 0.0) || !std::isfinite(cur[i])) {
            throw DomainError("inconsistent back-map: coordinate is not positive and finite");
        }
    }
    return cur;
}

Fewnomial transform_fewnomial(const Fewnomial& f, const MapStep& step)
{
    const std::size_t n = f.dimension();
    Fewnomial out(n);
    for (const Term& t : f.terms()) {
        if (step.kind == MapStep::Kind::Monomial) {
            ExponentVector a(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) a[i] += step.matrix[i][j] * t.exponent[j];
            }
            out.add_term(t.coeff, a);
        } else if (step.kind == MapStep::Kind::Scale) {
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i) e += t.exponent[i] * std::log(step.scale[i]);
            out.add_term(t.coeff * std::exp(e), t.exponent);
        } else {
            out.add_term(t.coeff, t.exponent);
        }
    }
    return out;
}

FewnomialSystem apply_monomial_map(const FewnomialSystem& system, const MonomialMap& map)
{
    if (map.dimension() != system.dimension()) throw ValidationError("map and system dimensions differ");
    std::vector<Fewnomial> members = system.members();
    for (const MapStep& s : map.steps()) {
        if (s.kind == MapStep::Kind::Divide) {
            if (s.member >= members.size()) throw ValidationError("division step refers to a missing member");
            members[s.member] = members[s.member].times_monomial(1.0 / s.coeff, [&] {
                ExponentVector neg = s.exponent;
                for (double& v : neg) v = -v;
                return neg;
            }());
        } else {
            for (Fewnomial& f : members) f = transform_fewnomial(f, s);
        }
    }
    return FewnomialSystem(system.dimension(), std::move(members));
}

Fewnomial divide_by_term(const Fewnomial& f, std::size_t index)
{
    const Term& t = f.term(index);
    ExponentVector neg = t.exponent;
    for (double& v : neg) v = -v;
    return f.times_monomial(1.0 / t.coeff, neg);
}

std::vector<Point> back_map_roots(const std::vector<Point>& roots, const MonomialMap& map)
{
    std::vector<Point> out;
    out.reserve(roots.size());
    for (const Point& r : roots) out.push_back(map.inverse(r));
    return out;
}

std::string to_string(CanonicalPair::Status status)
{
    switch (status) {
        case CanonicalPair::Status::Ok: return "ok";
        case CanonicalPair::Status::Segment: return "segment";
        case CanonicalPair::Status::Infeasible: return "infeasible";
        case CanonicalPair::Status::NotTrinomial: return "not-trinomial";
    }
    return "unknown";
}

namespace {

/** Index of the unique term whose coefficient sign differs from the other two, or -1. */
int odd_sign_term(const Fewnomial& f)
{
    int pos = 0, neg = 0;
    for (const Term& t : f.terms()) (t.coeff > 0 ? pos : neg)++;
    if (pos == 0 || neg == 0) return -1;
    const bool odd_positive = pos < neg;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if ((f.term(i).coeff > 0) == odd_positive) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

CanonicalPair canonicalize_trinomial_pair(const FewnomialSystem& system)
{
    CanonicalPair out;
    out.system = system;
    out.map = MonomialMap(system.dimension());
    if (system.dimension() != 2 || system.size() != 2) {
        out.note = "canonicalization requires a 2x2 system";
        return out;
    }
    long best = -1;
    double best_area = 0.0;
    bool saw_segment = false;
    for (std::size_t i = 0; i < 2; ++i) {
        const Fewnomial& f = system.member(i);
        if (f.size() != 3) continue;
        Polygon p = newton_polygon(f);
        if (p.dimension() < 2) {
            saw_segment = true;
            continue;
        }
        double area = normalized_area(p);
        if (best < 0 || area < best_area) {
            best = static_cast<long>(i);
            best_area = area;
        }
    }
    if (best < 0) {
        out.status = saw_segment ? CanonicalPair::Status::Segment : CanonicalPair::Status::NotTrinomial;
        out.note = saw_segment ? "trinomial member has a segment Newton polytope" : "no trinomial member";
        return out;
    }
    const std::size_t i1 = static_cast<std::size_t>(best);
    const std::size_t i2 = 1 - i1;
    out.first_member = i1;
    Fewnomial f1 = system.member(i1);
    Fewnomial f2 = system.member(i2);

    int odd = odd_sign_term(f1);
    if (odd < 0) {
        out.status = CanonicalPair::Status::Infeasible;
        out.note = "all coefficients of the trinomial member share a sign, so it has no positive zeros";
        return out;
    }
    MonomialMap map(2);
    const Term divisor = f1.term(static_cast<std::size_t>(odd));
    map.add_divide(0, divisor.coeff, divisor.exponent);
    f1 = divide_by_term(f1, static_cast<std::size_t>(odd));

    std::vector<Term> rest;
    for (const Term& t : f1.terms()) {
        if (!same_exponent(t.exponent, ExponentVector(2, 0.0))) rest.push_back(t);
    }
    // Columns b1, b2 of B; the change x = y^{B^{-1}} sends b_k to e_k.
    Matrix b = {{rest[0].exponent[0], rest[1].exponent[0]}, {rest[0].exponent[1], rest[1].exponent[1]}};
    map.add_monomial(matrix_inverse(b));
    map.add_scale({1.0 / std::abs(rest[0].coeff), 1.0 / std::abs(rest[1].coeff)});

    // Members in canonical order: the trinomial first.
    FewnomialSystem ordered(2, {system.member(i1), system.member(i2)});
    FewnomialSystem mapped = apply_monomial_map(ordered, map);
    f2 = mapped.member(1);
    if (f2.size() == 3) {
        int odd2 = odd_sign_term(f2);
        if (odd2 < 0) {
            out.status = CanonicalPair::Status::Infeasible;
            out.note = "all coefficients of the second trinomial share a sign, so it has no positive zeros";
            out.map = map;
            out.system = mapped;
            return out;
        }
        const Term d2 = f2.term(static_cast<std::size_t>(odd2));
        map.add_divide(1, d2.coeff, d2.exponent);
        mapped = FewnomialSystem(2, {mapped.member(0), divide_by_term(f2, static_cast<std::size_t>(odd2))});
    }
    out.status = CanonicalPair::Status::Ok;
    out.system = FewnomialSystem(2, {mapped.member(0).sorted(), mapped.member(1).sorted()});
    out.map = map;
    return out;
}

}  // namespace fewnomial
