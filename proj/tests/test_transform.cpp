#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fewnomial/transform.hpp"

using namespace fewnomial;

namespace {

FewnomialSystem circle_and_line()
{
    return FewnomialSystem(2, {Fewnomial(2, {{1, {2, 0}}, {1, {0, 2}}, {-25, {0, 0}}}),
                               Fewnomial(2, {{1, {1, 0}}, {1, {0, 1}}, {-7, {0, 0}}})});
}

}  // namespace

TEST_CASE("identity map leaves a system unchanged")
{
    MonomialMap m(2);
    m.add_monomial(identity_matrix(2));
    const FewnomialSystem s = circle_and_line();
    const FewnomialSystem t = apply_monomial_map(s, m);
    for (const Point& y : {Point{0.4, 2.0}, Point{3.0, 1.5}}) {
        CHECK(t.member(0).evaluate(y) == doctest::Approx(s.member(0).evaluate(y)));
        CHECK(t.member(1).evaluate(y) == doctest::Approx(s.member(1).evaluate(y)));
    }
}

TEST_CASE("a monomial map preserves values under the point correspondence")
{
    MonomialMap m = MonomialMap::monomial({{1, 1}, {1, -1}});
    const FewnomialSystem s(2, {Fewnomial(2, {{1, {1, 1}}, {-1, {0, 0}}})});
    const FewnomialSystem t = apply_monomial_map(s, m);
    CHECK(t.member(0).size() == 2);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int i = 0; i < 50; ++i) {
        const Point y{u(rng), u(rng)};
        const Point x = m.inverse(y);
        CHECK(t.member(0).evaluate(y) == doctest::Approx(s.member(0).evaluate(x)).epsilon(1e-10));
        const Point back = m.forward(x);
        CHECK(back[0] == doctest::Approx(y[0]).epsilon(1e-12));
        CHECK(back[1] == doctest::Approx(y[1]).epsilon(1e-12));
    }
}

TEST_CASE("random invertible maps, scalings and divisions compose and invert")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.3, 2.5);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix a{{u(rng), u(rng)}, {u(rng), u(rng)}};
        if (std::abs(matrix_determinant(a)) < 0.1) continue;
        MonomialMap m(2);
        m.add_monomial(a);
        m.add_scale({pos(rng), pos(rng)});
        const Fewnomial f(2, {{1.5, {1, 0.5}}, {-2.0, {0.2, 2}}, {0.7, {0, 0}}});
        const Fewnomial g = apply_monomial_map(FewnomialSystem(2, {f}), m).member(0);
        const Point y{pos(rng), pos(rng)};
        const Point x = m.inverse(y);
        CHECK(g.evaluate(y) == doctest::Approx(f.evaluate(x)).epsilon(1e-9));
    }
}

TEST_CASE("singular maps are rejected")
{
    MonomialMap m(2);
    CHECK_THROWS_AS(m.add_monomial({{1, 2}, {2, 4}}), SingularMapError);
}

TEST_CASE("dividing by a term makes it the constant 1 and keeps the zero set")
{
    const Fewnomial f(2, {{1, {1, 0}}, {1, {0, 1}}, {-7, {0, 0}}});
    const Fewnomial g = divide_by_term(f, 2);
    CHECK(g.size() == 3);
    bool has_one = false;
    for (const Term& t : g.terms()) {
        if (t.exponent == ExponentVector{0, 0}) has_one = t.coeff == doctest::Approx(1.0);
        if (t.exponent == ExponentVector{1, 0}) CHECK(t.coeff == doctest::Approx(-1.0 / 7));
    }
    CHECK(has_one);
    // Haas member divided by its x2 term: the support moves by (0, -1).
    const Fewnomial h(2, {{1, {108, 0}}, {1.1, {0, 54}}, {-1.1, {0, 1}}});
    const Fewnomial hd = divide_by_term(h, 2);
    std::vector<ExponentVector> sup = hd.support();
    std::sort(sup.begin(), sup.end());
    CHECK(sup == std::vector<ExponentVector>{{0, 0}, {0, 53}, {108, -1}});
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const Point x{u(rng), u(rng)};
        const double a = h.evaluate(x), b = hd.evaluate(x);
        // The divisor -1.1 x2 is negative, so the signs flip.
        if (std::abs(a) > 1e-12) CHECK((a > 0) == (b < 0));
    }
    CHECK(divide_by_term(Fewnomial(2, {{3, {1, 2}}}), 0).terms()[0].coeff == doctest::Approx(1.0));
}

TEST_CASE("canonical form of the circle-and-line system")
{
    const CanonicalPair c = canonicalize_trinomial_pair(circle_and_line());
    REQUIRE(c.status == CanonicalPair::Status::Ok);
    // The line is the triangle member with a single odd sign: it becomes 1 - x1 - x2.
    const Fewnomial& g1 = c.system.member(0);
    for (const Point& y : {Point{0.1, 0.2}, Point{0.6, 0.9}}) {
        CHECK(g1.evaluate(y) == doctest::Approx(1 - y[0] - y[1]));
    }
    std::vector<Point> mapped{c.map.forward({3, 4}), c.map.forward({4, 3})};
    std::sort(mapped.begin(), mapped.end());
    CHECK(mapped[0][0] == doctest::Approx(3.0 / 7));
    CHECK(mapped[0][1] == doctest::Approx(4.0 / 7));
    CHECK(mapped[1][0] == doctest::Approx(4.0 / 7));
    // Both canonical members vanish at the mapped roots.
    for (const Point& y : mapped) {
        CHECK(std::abs(c.system.member(0).evaluate(y)) < 1e-12);
        CHECK(std::abs(c.system.member(1).evaluate(y)) < 1e-10);
    }
    const std::vector<Point> back = back_map_roots(mapped, c.map);
    for (const Point& x : back) CHECK(std::abs(circle_and_line().member(0).evaluate(x)) < 1e-8 * 25);
}

TEST_CASE("canonicalization markers")
{
    const FewnomialSystem plus(2, {Fewnomial(2, {{1, {0, 0}}, {1, {1, 0}}, {1, {0, 1}}}),
                                   Fewnomial(2, {{1, {2, 0}}, {1, {0, 2}}, {-25, {0, 0}}})});
    // 1 + x + y is positive on the quadrant, and so is x^2 + y^2 - 25 never paired with it.
    const CanonicalPair c = canonicalize_trinomial_pair(plus);
    CHECK(c.status != CanonicalPair::Status::Ok);
    const FewnomialSystem segs(2, {Fewnomial(2, {{1, {0, 0}}, {1, {1, 1}}, {-3, {2, 2}}}),
                                   Fewnomial(2, {{1, {0, 0}}, {1, {2, 1}}, {-3, {4, 2}}})});
    CHECK(canonicalize_trinomial_pair(segs).status == CanonicalPair::Status::Segment);
    const FewnomialSystem already(2, {Fewnomial(2, {{1, {0, 0}}, {-1, {1, 0}}, {-1, {0, 1}}}),
                                      Fewnomial(2, {{1, {0, 0}}, {-2, {1, 2}}, {0.5, {2, 1}}})});
    const CanonicalPair id = canonicalize_trinomial_pair(already);
    REQUIRE(id.status == CanonicalPair::Status::Ok);
    const Point y = id.map.forward({0.3, 0.45});
    CHECK(y[0] == doctest::Approx(0.3));
    CHECK(y[1] == doctest::Approx(0.45));
}
