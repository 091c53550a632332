#include "fewnomial/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace fewnomial {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double coordinate_scale(const std::vector<Point2>& pts)
{
    double s = 1.0;
    for (const Point2& p : pts) s = std::max({s, std::abs(p[0]), std::abs(p[1])});
    return s;
}

Eigen::MatrixXd rows_matrix(const std::vector<Point>& vectors, std::size_t n)
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[i][j];
    }
    return m;
}

int rank_from_singular_values(const Eigen::VectorXd& s)
{
    if (s.size() == 0 || s(0) <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > kRankTol * s(0)) ++r;
    }
    return r;
}

std::vector<Point> dedupe_points(const std::vector<Point>& pts)
{
    double scale = 1.0;
    for (const Point& p : pts) {
        for (double v : p) scale = std::max(scale, std::abs(v));
    }
    std::vector<Point> out;
    for (const Point& p : pts) {
        bool dup = false;
        for (const Point& q : out) {
            if (same_exponent(p, q, kGeometryTol * scale)) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

std::vector<Point> difference_vectors(const std::vector<Point>& pts)
{
    std::vector<Point> out;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Point d(pts[i].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        out.push_back(std::move(d));
    }
    return out;
}

template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit visit)
{
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

int Polygon::dimension() const
{
    if (vertices.empty()) return -1;
    if (vertices.size() == 1) return 0;
    if (vertices.size() == 2) return 1;
    return 2;
}

Polygon convex_hull_2d(std::vector<Point2> points)
{
    Polygon out;
    if (points.empty()) return out;
    double scale = coordinate_scale(points);
    std::sort(points.begin(), points.end());
    std::vector<Point2> unique;
    for (const Point2& p : points) {
        if (!unique.empty() && std::abs(unique.back()[0] - p[0]) <= kGeometryTol * scale &&
            std::abs(unique.back()[1] - p[1]) <= kGeometryTol * scale) {
            continue;
        }
        bool dup = false;
        for (const Point2& q : unique) {
            if (std::abs(q[0] - p[0]) <= kGeometryTol * scale && std::abs(q[1] - p[1]) <= kGeometryTol * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) unique.push_back(p);
    }
    if (unique.size() <= 2) {
        out.vertices = unique;
        return out;
    }
    const double tol = kGeometryTol * scale * scale;
    std::vector<Point2> hull(2 * unique.size());
    std::size_t k = 0;
    for (const Point2& p : unique) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= tol) --k;
        hull[k++] = p;
    }
    for (std::size_t i = unique.size() - 1, t = k + 1; i > 0; --i) {
        const Point2& p = unique[i - 1];
        while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= tol) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    out.vertices = hull;
    return out;
}

Polygon newton_polygon(const Fewnomial& f)
{
    if (f.dimension() != 2) throw DomainError("newton_polygon requires a bivariate fewnomial");
    if (f.is_zero()) throw DomainError("the zero fewnomial has an empty Newton polytope");
    std::vector<Point2> pts;
    for (const Term& t : f.terms()) pts.push_back({t.exponent[0], t.exponent[1]});
    return convex_hull_2d(pts);
}

Polygon minkowski_sum(const Polygon& p, const Polygon& q)
{
    if (p.vertices.empty() || q.vertices.empty()) return Polygon{};
    if (p.vertices.size() < 3 || q.vertices.size() < 3) {
        std::vector<Point2> sums;
        for (const Point2& a : p.vertices) {
            for (const Point2& b : q.vertices) sums.push_back({a[0] + b[0], a[1] + b[1]});
        }
        return convex_hull_2d(sums);
    }
    auto rotate_to_bottom = [](std::vector<Point2> v) {
        auto it = std::min_element(v.begin(), v.end(), [](const Point2& a, const Point2& b) {
            return a[1] < b[1] || (a[1] == b[1] && a[0] < b[0]);
        });
        std::rotate(v.begin(), it, v.end());
        return v;
    };
    std::vector<Point2> a = rotate_to_bottom(p.vertices);
    std::vector<Point2> b = rotate_to_bottom(q.vertices);
    std::size_t na = a.size(), nb = b.size();
    std::vector<Point2> out;
    std::size_t i = 0, j = 0;
    while (i < na || j < nb) {
        out.push_back({a[i % na][0] + b[j % nb][0], a[i % na][1] + b[j % nb][1]});
        Point2 ea{a[(i + 1) % na][0] - a[i % na][0], a[(i + 1) % na][1] - a[i % na][1]};
        Point2 eb{b[(j + 1) % nb][0] - b[j % nb][0], b[(j + 1) % nb][1] - b[j % nb][1]};
        double c = ea[0] * eb[1] - ea[1] * eb[0];
        if (j >= nb || (i < na && c > 0)) {
            ++i;
        } else if (i >= na || c < 0) {
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    return convex_hull_2d(out);
}

double normalized_area(const Polygon& p)
{
    if (p.vertices.size() < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        const Point2& a = p.vertices[i];
        const Point2& b = p.vertices[(i + 1) % p.vertices.size()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    return std::abs(s);
}

int span_rank(const std::vector<Point>& vectors)
{
    if (vectors.empty()) return 0;
    std::size_t n = vectors.front().size();
    if (n == 0) return 0;
    Eigen::MatrixXd m = rows_matrix(vectors, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return rank_from_singular_values(svd.singularValues());
}

int affine_dimension(const std::vector<Point>& points)
{
    if (points.empty()) return -1;
    return span_rank(difference_vectors(points));
}

bool PolytopeInfo::in_relative_interior(const Point& p) const
{
    for (const Facet& f : facets) {
        double v = 0.0;
        for (std::size_t i = 0; i < ambient; ++i) v += f.normal[i] * p[i];
        if (v - f.offset <= kGeometryTol * (1.0 + std::abs(f.offset))) return false;
    }
    return true;
}

PolytopeInfo polytope_info(const std::vector<Point>& input)
{
    PolytopeInfo info;
    if (input.empty()) return info;
    info.ambient = input.front().size();
    const std::size_t n = info.ambient;
    info.points = dedupe_points(input);
    const std::size_t m = info.points.size();

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (const Point& p : info.points) {
        for (std::size_t j = 0; j < n; ++j) centroid(static_cast<Eigen::Index>(j)) += p[j];
    }
    centroid /= static_cast<double>(m);
    Eigen::MatrixXd centered(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                info.points[i][j] - centroid(static_cast<Eigen::Index>(j));
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
    const int d = rank_from_singular_values(svd.singularValues());
    info.dimension = d;
    if (d == 0) {
        info.vertices = {info.points.front()};
        return info;
    }
    Eigen::MatrixXd basis = svd.matrixV().leftCols(d);
    Eigen::MatrixXd q = centered * basis;  // m x d projected coordinates
    double scale = 1.0;
    for (Eigen::Index i = 0; i < q.rows(); ++i) scale = std::max(scale, q.row(i).cwiseAbs().maxCoeff());
    const double tol = kGeometryTol * scale;

    struct LocalFacet {
        Eigen::VectorXd normal;
        double offset;
    };
    std::vector<LocalFacet> local;
    auto add_local = [&](const Eigen::VectorXd& w) {
        Eigen::VectorXd values = q * w;
        double off = values.minCoeff();
        for (const LocalFacet& f : local) {
            if ((f.normal - w).norm() < 1e-7) return;
        }
        local.push_back({w, off});
    };

    if (d == 1) {
        Eigen::VectorXd w(1);
        w(0) = 1.0;
        add_local(w);
        w(0) = -1.0;
        add_local(w);
    } else {
        for_each_combination(m, static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& idx) {
            Eigen::MatrixXd diffs(d - 1, d);
            for (int r = 1; r < d; ++r) diffs.row(r - 1) = q.row(static_cast<Eigen::Index>(idx[r])) -
                                                          q.row(static_cast<Eigen::Index>(idx[0]));
            Eigen::JacobiSVD<Eigen::MatrixXd> s(diffs, Eigen::ComputeFullV);
            if (rank_from_singular_values(s.singularValues()) < d - 1) return;
            if (s.singularValues().size() > 0 && s.singularValues()(0) < tol) return;
            Eigen::VectorXd w = s.matrixV().col(d - 1);
            w.normalize();
            Eigen::VectorXd values = q * w;
            double off = values(static_cast<Eigen::Index>(idx[0]));
            if (values.minCoeff() >= off - tol) {
                add_local(w);
            } else if (values.maxCoeff() <= off + tol) {
                add_local(-w);
            }
        });
    }

    std::vector<std::vector<std::size_t>> on_facet(local.size());
    std::vector<std::vector<std::size_t>> facets_of_point(m);
    for (std::size_t f = 0; f < local.size(); ++f) {
        Eigen::VectorXd values = q * local[f].normal;
        for (std::size_t i = 0; i < m; ++i) {
            if (values(static_cast<Eigen::Index>(i)) <= local[f].offset + tol) {
                on_facet[f].push_back(i);
                facets_of_point[i].push_back(f);
            }
        }
    }
    std::vector<long> vertex_index(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Point> normals;
        for (std::size_t f : facets_of_point[i]) {
            normals.emplace_back(local[f].normal.data(), local[f].normal.data() + d);
        }
        if (span_rank(normals) == d) {
            vertex_index[i] = static_cast<long>(info.vertices.size());
            info.vertices.push_back(info.points[i]);
        }
    }
    for (std::size_t f = 0; f < local.size(); ++f) {
        Facet facet;
        Eigen::VectorXd w = basis * local[f].normal;
        facet.normal.assign(w.data(), w.data() + n);
        double off = 0.0;
        bool first = true;
        for (const Point& p : info.points) {
            double v = 0.0;
            for (std::size_t j = 0; j < n; ++j) v += facet.normal[j] * p[j];
            if (first || v < off) off = v;
            first = false;
        }
        facet.offset = off;
        facet.points = on_facet[f];
        for (std::size_t i : on_facet[f]) {
            if (vertex_index[i] >= 0) facet.vertices.push_back(static_cast<std::size_t>(vertex_index[i]));
        }
        info.facets.push_back(std::move(facet));
    }
    return info;
}

PolytopeInfo newton_polytope(const Fewnomial& f)
{
    if (f.is_zero()) throw DomainError("the zero fewnomial has an empty Newton polytope");
    return polytope_info(f.support());
}

Fewnomial initial_form(const Fewnomial& f, const std::vector<double>& w)
{
    if (w.size() != f.dimension()) throw DomainError("direction has the wrong dimension");
    bool nonzero = false;
    for (double v : w) nonzero = nonzero || v != 0.0;
    if (!nonzero) throw DomainError("initial form requires a nonzero direction");
    if (f.is_zero()) return f;
    std::vector<double> dots;
    for (const Term& t : f.terms()) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += t.exponent[i] * w[i];
        dots.push_back(s);
    }
    double lo = *std::min_element(dots.begin(), dots.end());
    double tol = kGeometryTol * (1.0 + std::abs(lo));
    Fewnomial out(f.dimension());
    for (std::size_t k = 0; k < dots.size(); ++k) {
        if (dots[k] <= lo + tol) out.add_term(f.term(k).coeff, f.term(k).exponent);
    }
    return out;
}

MixedVolumeZeroWitness mixed_volume_zero(const std::vector<std::vector<Point>>& supports)
{
    MixedVolumeZeroWitness out;
    const std::size_t k = supports.size();
    if (k == 0) return out;
    std::size_t n = 0;
    for (const auto& s : supports) {
        if (!s.empty()) {
            if (n == 0) n = s.front().size();
            for (const Point& p : s) {
                if (p.size() != n) throw DomainError("mixed_volume_zero: dimension mismatch");
            }
        }
    }
    std::vector<std::vector<Point>> diffs(k);
    for (std::size_t i = 0; i < k; ++i) diffs[i] = difference_vectors(supports[i]);
    for (std::size_t size = 1; size <= k; ++size) {
        bool found = false;
        for_each_combination(k, size, [&](const std::vector<std::size_t>& idx) {
            if (found) return;
            std::vector<Point> vecs;
            for (std::size_t i : idx) vecs.insert(vecs.end(), diffs[i].begin(), diffs[i].end());
            int r = span_rank(vecs);
            if (r <= static_cast<int>(size) - 1) {
                found = true;
                out.zero = true;
                out.subset = idx;
                out.subspace_dimension = r;
            }
        });
        if (found) return out;
    }
    return out;
}

MixedVolumeZeroWitness mixed_volume_zero(const FewnomialSystem& system)
{
    std::vector<std::vector<Point>> supports;
    for (const Fewnomial& f : system.members()) supports.push_back(f.support());
    return mixed_volume_zero(supports);
}

std::optional<FlagCertificate> is_pyramidal(const FewnomialSystem& system)
{
    const std::size_t n = system.dimension();
    if (system.size() != n || n == 0) return std::nullopt;
    std::vector<std::vector<Point>> diffs;
    for (const Fewnomial& f : system.members()) diffs.push_back(difference_vectors(f.support()));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        std::vector<Point> vecs;
        FlagCertificate cert;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const auto& d = diffs[order[i]];
            vecs.insert(vecs.end(), d.begin(), d.end());
            int r = span_rank(vecs);
            cert.dimensions.push_back(r);
            ok = (r == static_cast<int>(i) + 1);
        }
        if (ok) {
            cert.ordering = order;
            return cert;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

OverdetCheck overdet_smoothness_check(const Fewnomial& f)
{
    OverdetCheck out;
    PolytopeInfo info = newton_polytope(f);
    out.simplicial = true;
    for (const Facet& facet : info.facets) {
        if (static_cast<int>(facet.vertices.size()) != info.dimension) out.simplicial = false;
    }
    out.support_vertex_only = true;
    for (const Point& p : info.points) {
        bool is_vertex = false;
        for (const Point& v : info.vertices) {
            if (same_exponent(p, v, kGeometryTol * (1.0 + std::abs(p[0])))) is_vertex = true;
        }
        if (!is_vertex && !info.in_relative_interior(p)) out.support_vertex_only = false;
    }
    return out;
}

namespace {

std::size_t index_of(const std::vector<Point>& pts, const Point& a)
{
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (same_exponent(pts[i], a)) return i;
    }
    return pts.size();
}

bool place_from(const std::vector<std::vector<Point>>& supports, std::size_t idx, std::size_t cap,
                SupportPlacement& out)
{
    if (idx == supports.size()) {
        return out.points.size() == cap && affine_dimension(out.points) == static_cast<int>(cap) - 1;
    }
    const std::vector<Point>& s = supports[idx];
    const std::size_t n = s.front().size();
    // Candidate translations: none, or one that lands some point of s on a point already placed.
    std::vector<Point> candidates{Point(n, 0.0)};
    for (const Point& p : out.points) {
        for (const Point& q : s) {
            Point b(n);
            for (std::size_t k = 0; k < n; ++k) b[k] = p[k] - q[k];
            if (index_of(candidates, b) == candidates.size()) candidates.push_back(b);
        }
    }
    for (const Point& b : candidates) {
        std::vector<Point> next = out.points;
        for (const Point& q : s) {
            Point moved(n);
            for (std::size_t k = 0; k < n; ++k) moved[k] = q[k] + b[k];
            if (index_of(next, moved) == next.size()) next.push_back(moved);
        }
        if (next.size() > cap) continue;
        std::vector<Point> saved = out.points;
        out.points = std::move(next);
        out.shifts.push_back(b);
        if (place_from(supports, idx + 1, cap, out)) return true;
        out.points = std::move(saved);
        out.shifts.pop_back();
    }
    return false;
}

}  // namespace

std::optional<SupportPlacement> place_in_common_points(const std::vector<std::vector<Point>>& supports,
                                                       std::size_t cap)
{
    for (const auto& s : supports) {
        if (s.empty()) return std::nullopt;
    }
    if (supports.empty()) return std::nullopt;
    SupportPlacement out;
    if (!place_from(supports, 0, cap, out)) return std::nullopt;
    return out;
}

}  // namespace fewnomial
