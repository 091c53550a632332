#include "fewnomial/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <thread>
#include <unordered_map>

#include <Eigen/Dense>

namespace fewnomial {

Fewnomial inflection_form(const Fewnomial& f)
{
    if (f.dimension() != 2) throw ValidationError("inflection_form needs a bivariate fewnomial");
    const Fewnomial d1 = f.log_derivative(0);
    const Fewnomial d2 = f.log_derivative(1);
    const Fewnomial d11 = d1.log_derivative(0) - d1;
    const Fewnomial d22 = d2.log_derivative(1) - d2;
    const Fewnomial d12 = d1.log_derivative(1);
    return d11 * d2 * d2 - (d12 * d1 * d2).scaled(2.0) + d22 * d1 * d1;
}

FewnomialSystem vertical_tangency_system(const Fewnomial& f)
{
    if (f.dimension() != 2) throw ValidationError("vertical_tangency_system needs a bivariate fewnomial");
    return FewnomialSystem(2, {f, f.log_derivative(1)});
}

namespace {

struct FeatureSolve {
    std::size_t count = 0;
    bool certified = false;
    bool curve = false;
    std::vector<Point> points;
    std::string method;
};

FeatureSolve solve_feature_system(const Fewnomial& f, const Fewnomial& g, const DeskOptions& options,
                                  std::vector<std::string>& diagnostics, const std::string& what)
{
    FeatureSolve out;
    if (g.is_zero()) {
        out.certified = true;
        out.curve = true;
        out.method = "identically zero";
        diagnostics.push_back(what + ": the feature form vanishes identically, no isolated points");
        return out;
    }
    SystemRootReport rep = count_roots(FewnomialSystem(2, {f, g}), options);
    out.method = rep.method;
    out.certified = rep.certified;
    out.curve = rep.continuum;
    if (rep.continuum) {
        diagnostics.push_back(what + ": the feature system has a positive-dimensional solution set");
        return out;
    }
    out.points = rep.points();
    out.count = out.points.size();
    for (const std::string& d : rep.diagnostics) diagnostics.push_back(what + ": " + d);
    return out;
}

}  // namespace

CurveFeatureCount count_curve_features(const Fewnomial& f, const DeskOptions& options)
{
    if (f.dimension() != 2) throw ValidationError("count_curve_features needs a bivariate fewnomial");
    CurveFeatureCount out;
    CurveFamily family;
    if (f.size() > 3) {
        if (auto ps = detect_polynomial_structure(f)) family.area = ps->area;
    }
    out.bounds = curve_feature_bounds(static_cast<int>(f.size()), family);
    if (f.size() <= 1 || affine_dimension(f.support()) <= 1) {
        out.path = "binomial curves";
        out.inflections_certified = true;
        out.vertical_certified = true;
        out.diagnostics.push_back("collinear support: the curve is a union of binomial curves");
        return out;
    }
    FeatureSolve infl = solve_feature_system(f, inflection_form(f), options, out.diagnostics, "inflections");
    FeatureSolve vert = solve_feature_system(f, f.log_derivative(1), options, out.diagnostics, "vertical tangents");
    out.path = "inflections by " + infl.method + ", vertical tangents by " + vert.method;
    out.inflections = infl.count;
    out.vertical_tangents = vert.count;
    out.inflections_certified = infl.certified;
    out.vertical_certified = vert.certified;
    out.inflection_locus_curve = infl.curve;
    out.vertical_locus_curve = vert.curve;
    out.inflection_points = infl.points;
    out.vertical_points = vert.points;
    auto within = [](std::size_t c, const BoundReport& b) { return !b.value || BigInt(c) <= *b.value; };
    out.within_bounds = within(out.inflections, out.bounds.inflections) && within(out.vertical_tangents, out.bounds.vertical);
    return out;
}

BigInt line_intersection_bound(const BigInt& inflections, const BigInt& non_compact, const BigInt& vertical)
{
    if (inflections < 0 || non_compact < 0 || vertical < 0) {
        throw ValidationError("line_intersection_bound needs non-negative counts");
    }
    return inflections + non_compact + vertical + 1;
}

LineCheck check_line_intersections(const Fewnomial& f, const Line& line, const ExtendedInt& bound)
{
    if (f.dimension() != 2) throw ValidationError("check_line_intersections needs a bivariate fewnomial");
    LineCheck out;
    LinearFormProduct lfp;
    // Parametrise the line by one coordinate: x1 = t, or x2 = t for vertical lines.
    bool by_x1 = std::abs(line.m2) > 0.0;
    if (by_x1) {
        lfp.forms = {LinearForm{0.0, 1.0}, LinearForm{line.m0 / line.m2, -line.m1 / line.m2}};
    } else if (std::abs(line.m1) > 0.0) {
        lfp.forms = {LinearForm{line.m0 / line.m1, 0.0}, LinearForm{0.0, 1.0}};
    } else {
        throw DomainError("degenerate line: m1 = m2 = 0");
    }
    for (const Term& t : f.terms()) {
        lfp.terms.push_back(LfpTerm{HomogeneousPolynomial::constant(2, t.coeff), t.exponent});
    }
    auto interval = lfp.default_interval();
    if (!interval) {
        out.diagnostics.push_back("the line misses the positive quadrant");
        return out;
    }
    RootReport rep = isolate_lfp_roots(lfp, interval);
    if (rep.continuum) {
        out.indeterminate = true;
        out.diagnostics.push_back("the line lies on the curve");
        return out;
    }
    for (const RootEntry& r : rep.roots) out.points.push_back({lfp.forms[0](r.t), lfp.forms[1](r.t)});
    out.count = out.points.size();
    if (!rep.certified) {
        out.indeterminate = true;
        out.diagnostics.push_back("root isolation along the line was not certified");
    }
    for (const RootEntry& r : rep.roots) {
        if (r.suspect) out.diagnostics.push_back("tangential contact near t = " + std::to_string(r.t));
    }
    out.pass = out.indeterminate || !bound || BigInt(out.count) <= *bound;
    return out;
}

namespace {

std::vector<Point> polygon_points(const Polygon& p)
{
    std::vector<Point> out;
    for (const Point2& v : p.vertices) out.push_back({v[0], v[1]});
    return out;
}

/** log sum exp(p.z) and the weights normalised by their maximum. */
double log_partition(const std::vector<Point>& vertices, const Eigen::VectorXd& z, std::vector<double>& weights)
{
    const std::size_t k = vertices.size();
    std::vector<double> e(k);
    double top = -kInfinity;
    for (std::size_t i = 0; i < k; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < z.size(); ++j) s += vertices[i][static_cast<std::size_t>(j)] * z[j];
        e[i] = s;
        top = std::max(top, s);
    }
    weights.assign(k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        weights[i] = std::exp(e[i] - top);
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return top + std::log(total);
}

}  // namespace

Point momentum_map(const std::vector<Point>& vertices, const Point& x)
{
    if (vertices.empty()) throw ValidationError("momentum_map needs at least one vertex");
    const std::size_t n = x.size();
    Eigen::VectorXd z(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0)) throw DomainError("momentum_map needs a point of the positive orthant");
        z[static_cast<Eigen::Index>(i)] = std::log(x[i]);
    }
    std::vector<double> w;
    log_partition(vertices, z, w);
    Point out(n, 0.0);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (vertices[k].size() != n) throw ValidationError("vertex dimension does not match the point");
        for (std::size_t i = 0; i < n; ++i) out[i] += w[k] * vertices[k][i];
    }
    return out;
}

Point momentum_map(const Polygon& polygon, const Point& x) { return momentum_map(polygon_points(polygon), x); }

Point momentum_inverse(const std::vector<Point>& vertices, const Point& q, double tol)
{
    const std::size_t n = q.size();
    if (affine_dimension(vertices) != static_cast<int>(n)) {
        throw NotApplicableError("momentum_inverse needs a full-dimensional polytope");
    }
    PolytopeInfo info = polytope_info(vertices);
    for (const Facet& fc : info.facets) {
        double v = -fc.offset;
        for (std::size_t i = 0; i < n; ++i) v += fc.normal[i] * q[i];
        if (!(v > tol)) throw DomainError("point is not strictly inside the polytope");
    }
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::VectorXd qv(N);
    for (std::size_t i = 0; i < n; ++i) qv[static_cast<Eigen::Index>(i)] = q[i];
    Eigen::VectorXd z = Eigen::VectorXd::Zero(N);
    std::vector<double> w;
    // Minimise the strictly convex F(z) = log sum exp(p.z) - q.z; its gradient is psi(e^z) - q.
    auto objective = [&](const Eigen::VectorXd& zz) { return log_partition(vertices, zz, w) - qv.dot(zz); };
    double fz = objective(z);
    for (int iter = 0; iter < 500; ++iter) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(N);
        for (std::size_t k = 0; k < vertices.size(); ++k) {
            for (Eigen::Index i = 0; i < N; ++i) mean[i] += w[k] * vertices[k][static_cast<std::size_t>(i)];
        }
        Eigen::VectorXd grad = mean - qv;
        if (grad.lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(N, N);
        for (std::size_t k = 0; k < vertices.size(); ++k) {
            Eigen::VectorXd d(N);
            for (Eigen::Index i = 0; i < N; ++i) d[i] = vertices[k][static_cast<std::size_t>(i)] - mean[i];
            hess += w[k] * d * d.transpose();
        }
        Eigen::VectorXd step = -hess.ldlt().solve(grad);
        if (!step.allFinite() || step.dot(grad) >= 0) step = -grad;
        double t = 1.0;
        double next = objective(z + t * step);
        while (next > fz + 1e-4 * t * step.dot(grad) && t > 1e-12) {
            t *= 0.5;
            next = objective(z + t * step);
        }
        if (next >= fz && t <= 1e-12) break;
        z += t * step;
        fz = objective(z);
    }
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(z[static_cast<Eigen::Index>(i)]);
    return x;
}

Point momentum_inverse(const Polygon& polygon, const Point& q, double tol)
{
    return momentum_inverse(polygon_points(polygon), q, tol);
}

namespace {

/** f(e^z) divided by its term scale, evaluated with a common exponent shift. */
class RelativeField {
  public:
    explicit RelativeField(const Fewnomial& f)
    {
        for (const Term& t : f.terms()) {
            lc_.push_back(std::log(std::abs(t.coeff)));
            sign_.push_back(t.coeff > 0 ? 1.0 : -1.0);
            a1_.push_back(t.exponent[0]);
            a2_.push_back(t.exponent[1]);
        }
    }

    double operator()(double z1, double z2) const
    {
        const std::size_t m = lc_.size();
        double top = -kInfinity;
        double e[64];
        std::vector<double> big;
        double* ep = e;
        if (m > 64) {
            big.resize(m);
            ep = big.data();
        }
        for (std::size_t k = 0; k < m; ++k) {
            ep[k] = lc_[k] + a1_[k] * z1 + a2_[k] * z2;
            top = std::max(top, ep[k]);
        }
        double sum = 0.0, carry = 0.0, mag = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double v = sign_[k] * std::exp(ep[k] - top);
            const double t = sum + v;
            carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
            sum = t;
            mag += std::abs(v);
        }
        return mag > 0 ? (sum + carry) / mag : 0.0;
    }

  private:
    std::vector<double> lc_, sign_, a1_, a2_;
};

constexpr double kNodeTol = 1e-12;

std::int64_t edge_key(int dir, int k1, int k2)
{
    return (static_cast<std::int64_t>(dir) << 62) | (static_cast<std::int64_t>(k1 + (1 << 29)) << 31) |
           static_cast<std::int64_t>(k2 + (1 << 29));
}

struct UnionFind {
    std::vector<int> parent;
    int add()
    {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int a)
    {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/** One marching-squares pass over [-K h, K h]^2. */
struct Trace {
    int K = 0;
    double h = 0.0;
    std::vector<Point2> points;           ///< refined crossing points
    std::vector<bool> on_boundary;        ///< crossing lies on the window boundary
    std::vector<std::array<int, 2>> adj;  ///< up to two neighbours (-1 = none)
    std::unordered_map<std::int64_t, int> index;
    UnionFind uf;
    std::size_t ambiguous = 0;  ///< nodes whose sign could not be resolved
};

void run_trace(const RelativeField& field, int K, double h, Trace& tr)
{
    tr.K = K;
    tr.h = h;
    const int side = 2 * K + 1;
    std::vector<double> value(static_cast<std::size_t>(side) * side);
    std::vector<signed char> sign(value.size());
    auto node = [&](int k1, int k2) { return static_cast<std::size_t>(k2 + K) * side + static_cast<std::size_t>(k1 + K); };

    unsigned workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    std::vector<std::size_t> unresolved(workers, 0);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int k2 = -K + static_cast<int>(w); k2 <= K; k2 += static_cast<int>(workers)) {
                for (int k1 = -K; k1 <= K; ++k1) {
                    const double r = field(k1 * h, k2 * h);
                    value[node(k1, k2)] = r;
                    double s = r;
                    // A node on the curve takes the sign of a nearby point.
                    static constexpr double offsets[3][2] = {{0.31, 0.17}, {-0.23, 0.29}, {0.13, -0.37}};
                    for (int o = 0; o < 3 && std::abs(s) <= kNodeTol; ++o) {
                        s = field((k1 + offsets[o][0]) * h, (k2 + offsets[o][1]) * h);
                    }
                    if (std::abs(s) <= kNodeTol) ++unresolved[w];
                    sign[node(k1, k2)] = s < 0 ? -1 : 1;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    tr.ambiguous = std::accumulate(unresolved.begin(), unresolved.end(), std::size_t{0});

    auto crossing = [&](int dir, int k1, int k2) -> int {
        const std::int64_t key = edge_key(dir, k1, k2);
        auto it = tr.index.find(key);
        if (it != tr.index.end()) return it->second;
        const int b1 = k1 + (dir == 0 ? 1 : 0);
        const int b2 = k2 + (dir == 1 ? 1 : 0);
        double ra = value[node(k1, k2)], rb = value[node(b1, b2)];
        Point2 pa{k1 * h, k2 * h}, pb{b1 * h, b2 * h};
        Point2 p;
        if (std::abs(ra) <= kNodeTol) {
            p = pa;
        } else if (std::abs(rb) <= kNodeTol) {
            p = pb;
        } else {
            // Illinois iteration along the edge.
            double a = 0.0, b = 1.0, fa = ra, fb = rb;
            int side_kept = 0;
            double c = 0.5;
            for (int it2 = 0; it2 < 60; ++it2) {
                c = (a * fb - b * fa) / (fb - fa);
                if (!(c > a && c < b)) c = 0.5 * (a + b);
                const double fc = field(pa[0] + c * (pb[0] - pa[0]), pa[1] + c * (pb[1] - pa[1]));
                if (std::abs(fc) <= 1e-15 || b - a < 1e-14) break;
                if ((fc < 0) == (fa < 0)) {
                    a = c;
                    fa = fc;
                    if (side_kept == -1) fb *= 0.5;
                    side_kept = -1;
                } else {
                    b = c;
                    fb = fc;
                    if (side_kept == 1) fa *= 0.5;
                    side_kept = 1;
                }
            }
            p = {pa[0] + c * (pb[0] - pa[0]), pa[1] + c * (pb[1] - pa[1])};
        }
        const int id = tr.uf.add();
        tr.points.push_back(p);
        const bool boundary = dir == 0 ? (k2 == -K || k2 == K) : (k1 == -K || k1 == K);
        tr.on_boundary.push_back(boundary);
        tr.adj.push_back({-1, -1});
        tr.index.emplace(key, id);
        return id;
    };
    auto link = [&](int a, int b) {
        tr.uf.unite(a, b);
        for (int* slot : {&tr.adj[a][0], &tr.adj[a][1]}) {
            if (*slot == -1) {
                *slot = b;
                break;
            }
        }
        for (int* slot : {&tr.adj[b][0], &tr.adj[b][1]}) {
            if (*slot == -1) {
                *slot = a;
                break;
            }
        }
    };

    for (int k2 = -K; k2 < K; ++k2) {
        for (int k1 = -K; k1 < K; ++k1) {
            const int s0 = sign[node(k1, k2)], s1 = sign[node(k1 + 1, k2)];
            const int s2 = sign[node(k1 + 1, k2 + 1)], s3 = sign[node(k1, k2 + 1)];
            const bool c0 = s0 != s1, c1 = s1 != s2, c2 = s3 != s2, c3 = s0 != s3;
            const int count = c0 + c1 + c2 + c3;
            if (count == 0) continue;
            int e0 = c0 ? crossing(0, k1, k2) : -1;
            int e1 = c1 ? crossing(1, k1 + 1, k2) : -1;
            int e2 = c2 ? crossing(0, k1, k2 + 1) : -1;
            int e3 = c3 ? crossing(1, k1, k2) : -1;
            if (count == 2) {
                std::vector<int> es;
                for (int e : {e0, e1, e2, e3}) {
                    if (e >= 0) es.push_back(e);
                }
                link(es[0], es[1]);
            } else {
                // Saddle cell: the centre decides which corners are joined.
                double centre = field((k1 + 0.5) * h, (k2 + 0.5) * h);
                const int sc = centre < 0 ? -1 : 1;
                if (sc == s0) {
                    link(e0, e1);
                    link(e2, e3);
                } else {
                    link(e0, e3);
                    link(e1, e2);
                }
            }
        }
    }
}

/** Polyline through a class, starting at an end when there is one. */
std::vector<int> walk_class(const Trace& tr, const std::vector<int>& members)
{
    int start = members.front();
    for (int v : members) {
        if (tr.adj[v][1] == -1) {
            start = v;
            break;
        }
    }
    std::vector<int> path{start};
    int prev = -1, cur = start;
    while (true) {
        int next = -1;
        for (int nb : tr.adj[cur]) {
            if (nb != -1 && nb != prev) {
                next = nb;
                break;
            }
        }
        if (next == -1 || next == start) {
            if (next == start) path.push_back(start);
            break;
        }
        path.push_back(next);
        prev = cur;
        cur = next;
        if (path.size() > members.size() + 1) break;
    }
    return path;
}

std::vector<NewtonEdge> newton_edges(const Fewnomial& f)
{
    std::vector<NewtonEdge> edges;
    std::vector<Point2> pts;
    for (const Term& t : f.terms()) pts.push_back({t.exponent[0], t.exponent[1]});
    Polygon hull = convex_hull_2d(pts);
    const int dim = hull.dimension();
    auto collect = [&](const Point2& normal, const Point2& base) {
        NewtonEdge e;
        e.normal = normal;
        const double off = normal[0] * base[0] + normal[1] * base[1];
        for (const Point2& p : pts) {
            const double v = normal[0] * p[0] + normal[1] * p[1];
            if (std::abs(v - off) <= kGeometryTol * (1.0 + std::abs(off))) e.points.push_back({p[0], p[1]});
        }
        edges.push_back(std::move(e));
    };
    if (dim == 1) {
        const Point2 a = hull.vertices[0], b = hull.vertices[1];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        const Point2 nrm{-(b[1] - a[1]) / len, (b[0] - a[0]) / len};
        collect(nrm, a);
        collect({-nrm[0], -nrm[1]}, a);
    } else if (dim == 2) {
        const std::size_t k = hull.vertices.size();
        for (std::size_t i = 0; i < k; ++i) {
            const Point2 a = hull.vertices[i], b = hull.vertices[(i + 1) % k];
            const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
            collect({-(b[1] - a[1]) / len, (b[0] - a[0]) / len}, a);
        }
    }
    return edges;
}

/** Unit escape direction at the first or last point of a polyline. */
Point2 escape_direction(const std::vector<Point2>& line, bool at_front, double reach)
{
    const std::size_t n = line.size();
    const Point2 p = at_front ? line.front() : line.back();
    Point2 q = at_front ? line.back() : line.front();
    for (std::size_t s = 1; s < n; ++s) {
        const Point2& c = at_front ? line[s] : line[n - 1 - s];
        if (std::hypot(p[0] - c[0], p[1] - c[1]) >= reach) {
            q = c;
            break;
        }
    }
    const double len = std::hypot(p[0] - q[0], p[1] - q[1]);
    if (len == 0.0) return {0.0, 0.0};
    return {(p[0] - q[0]) / len, (p[1] - q[1]) / len};
}

int attribute_edge(const std::vector<NewtonEdge>& edges, const Point2& d)
{
    // Along the direction d the dominant terms minimise a.(-d): the edge with inner normal closest to -d.
    int best = -1;
    double best_cos = -2.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double c = -(edges[i].normal[0] * d[0] + edges[i].normal[1] * d[1]);
        if (c > best_cos) {
            best_cos = c;
            best = static_cast<int>(i);
        }
    }
    return best;
}

std::unordered_map<int, std::vector<int>> classes_of(Trace& tr)
{
    std::unordered_map<int, std::vector<int>> out;
    for (int i = 0; i < static_cast<int>(tr.points.size()); ++i) out[tr.uf.find(i)].push_back(i);
    return out;
}

}  // namespace

ComponentReport count_components(const Fewnomial& f, const ComponentOptions& options)
{
    if (f.dimension() != 2) throw ValidationError("count_components needs a bivariate fewnomial");
    if (!(options.window > 0) || options.grid < 2) throw ValidationError("window must be positive and grid >= 2");
    ComponentReport rep;
    rep.window = options.window;
    rep.grid = options.grid;
    rep.edges = newton_edges(f);
    if (f.size() <= 1) {
        rep.diagnostics.push_back(f.is_zero() ? "zero polynomial: the zero set is the whole quadrant"
                                              : "a monomial has no positive zeros");
        return rep;
    }
    const RelativeField field(f);
    const int K = (options.grid + 1) / 2;
    const double h = options.window / K;

    Trace inner;
    run_trace(field, K, h, inner);
    Trace outer;
    Trace* final_trace = &inner;
    if (options.confirm) {
        run_trace(field, 2 * K, h, outer);
        final_trace = &outer;
    }
    if (inner.ambiguous + (options.confirm ? outer.ambiguous : 0) > 0) {
        rep.certified = false;
        rep.diagnostics.push_back("some grid nodes lie on the curve at every probe offset");
    }

    auto inner_classes = classes_of(inner);
    std::unordered_map<int, std::vector<int>> outer_classes;
    if (options.confirm) outer_classes = classes_of(outer);

    // Group the classes of the inner window by the class they belong to on the doubled window.
    struct Group {
        std::vector<int> inner_roots;
        bool inner_touch = false;
        int final_root = -1;
    };
    std::vector<Group> groups;
    std::unordered_map<int, std::size_t> group_of;
    std::vector<int> inner_roots;
    for (const auto& [root, members] : inner_classes) inner_roots.push_back(root);
    std::sort(inner_roots.begin(), inner_roots.end());
    for (int root : inner_roots) {
        const std::vector<int>& members = inner_classes[root];
        bool touch = std::any_of(members.begin(), members.end(), [&](int v) { return inner.on_boundary[v]; });
        int final_root = root;
        if (options.confirm) {
            // The inner grid is a sub-grid of the doubled one, so crossing keys coincide.
            const Point2 p = inner.points[members.front()];
            int found = -1;
            for (const auto& [key, id] : inner.index) {
                if (id == members.front()) {
                    auto it = outer.index.find(key);
                    if (it != outer.index.end()) found = it->second;
                    break;
                }
            }
            if (found < 0) {
                rep.diagnostics.push_back("a crossing near (" + std::to_string(p[0]) + ", " + std::to_string(p[1]) +
                                          ") was not reproduced on the doubled window");
                rep.certified = false;
                continue;
            }
            final_root = outer.uf.find(found);
        }
        auto it = group_of.find(final_root);
        if (it == group_of.end()) {
            group_of.emplace(final_root, groups.size());
            groups.push_back(Group{{root}, touch, final_root});
        } else {
            groups[it->second].inner_roots.push_back(root);
            groups[it->second].inner_touch = groups[it->second].inner_touch || touch;
        }
    }

    const double reach = 0.25 * options.window;
    for (const Group& g : groups) {
        TracedComponent comp;
        const std::vector<int>& members =
            options.confirm ? outer_classes[g.final_root] : inner_classes[g.final_root];
        const std::vector<int> path = walk_class(*final_trace, members);
        for (int v : path) comp.trace.push_back(final_trace->points[v]);
        const bool final_touch =
            std::any_of(members.begin(), members.end(), [&](int v) { return final_trace->on_boundary[v]; });
        comp.touches_boundary = g.inner_touch;
        if (!options.confirm) {
            comp.compact = !g.inner_touch;
            comp.stable = false;
        } else {
            comp.compact = !final_touch;
            comp.stable = final_touch == g.inner_touch;
        }
        if (final_touch && comp.trace.size() >= 2) {
            const int a = path.front(), b = path.back();
            if (final_trace->on_boundary[a]) {
                BranchEnd e;
                e.point = comp.trace.front();
                e.direction = escape_direction(comp.trace, true, options.confirm ? 2 * reach : reach);
                e.edge = attribute_edge(rep.edges, e.direction);
                comp.ends.push_back(e);
            }
            if (final_trace->on_boundary[b] && b != a) {
                BranchEnd e;
                e.point = comp.trace.back();
                e.direction = escape_direction(comp.trace, false, options.confirm ? 2 * reach : reach);
                e.edge = attribute_edge(rep.edges, e.direction);
                comp.ends.push_back(e);
            }
        }
        if (!comp.stable) {
            ++rep.indeterminate;
        } else if (comp.compact) {
            ++rep.compact;
        } else {
            ++rep.non_compact;
        }
        rep.components.push_back(std::move(comp));
    }
    if (!options.confirm) {
        // Without confirmation every component is classified from the single window.
        rep.indeterminate = 0;
        rep.compact = 0;
        rep.non_compact = 0;
        for (const TracedComponent& c : rep.components) (c.compact ? rep.compact : rep.non_compact)++;
    }
    if (rep.indeterminate > 0) {
        rep.diagnostics.push_back(std::to_string(rep.indeterminate) +
                                  " component(s) changed classification when the window was doubled");
    }
    return rep;
}

FacetCertificate facet_component_certificate(const Fewnomial& f, const ComponentReport* traced)
{
    if (f.dimension() != 2) throw ValidationError("facet_component_certificate needs a bivariate fewnomial");
    if (affine_dimension(f.support()) != 2) {
        throw NotApplicableError("facet certificate needs a two-dimensional Newton polygon");
    }
    FacetCertificate out;
    for (const NewtonEdge& edge : newton_edges(f)) {
        FacetInitialCount fc;
        fc.normal = edge.normal;
        fc.initial = initial_form(f, {edge.normal[0], edge.normal[1]});
        // Init_w(f) = x^{p0} g(x^e) with e along the edge: a univariate fewnomial in u = x^e.
        const std::vector<Term>& terms = fc.initial.terms();
        const Point2 dir{-edge.normal[1], edge.normal[0]};
        std::vector<double> coeffs, exps;
        double lo = kInfinity;
        for (const Term& t : terms) lo = std::min(lo, t.exponent[0] * dir[0] + t.exponent[1] * dir[1]);
        for (const Term& t : terms) {
            coeffs.push_back(t.coeff);
            exps.push_back(t.exponent[0] * dir[0] + t.exponent[1] * dir[1] - lo);
        }
        ExponentialSum g(coeffs, exps);
        RootReport rr = isolate_expsum_roots(g);
        fc.roots = rr.roots.size();
        for (const RootEntry& r : rr.roots) {
            // A root where g' also vanishes (relative to the term scale) is degenerate.
            double deriv = 0.0, scale = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                const double term = g.coeffs()[k] * std::pow(r.t, g.exponents()[k]);
                deriv += g.exponents()[k] * term;
                scale += std::abs(g.exponents()[k] * term);
            }
            if (r.suspect || std::abs(deriv) <= 1e-8 * scale) {
                fc.available = false;
                fc.note = "initial form has a degenerate positive root near u = " + std::to_string(r.t);
            }
        }
        if (!rr.certified) {
            fc.available = false;
            if (fc.note.empty()) fc.note = "root isolation of the initial form was not certified";
        }
        if (fc.available) {
            out.ends += fc.roots;
        } else {
            out.available = false;
            out.diagnostics.push_back("facet with inner normal (" + std::to_string(edge.normal[0]) + ", " +
                                      std::to_string(edge.normal[1]) + "): " + fc.note);
        }
        out.facets.push_back(std::move(fc));
    }
    out.paired = out.ends / 2;
    if (traced != nullptr) {
        out.traced_non_compact = traced->non_compact;
        if (out.available) out.consistent = traced->non_compact <= out.paired;
    }
    return out;
}

}  // namespace fewnomial
