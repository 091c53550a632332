#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fewnomial/bounds.hpp"
#include "fewnomial/reduce.hpp"

using namespace fewnomial;

namespace {

BigInt ipow(BigInt b, int e)
{
    BigInt r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool has_rule(const BoundReport& rep, const std::string& rule, const BigInt& value)
{
    return std::any_of(rep.trail.begin(), rep.trail.end(),
                       [&](const BoundStep& s) { return s.rule == rule && s.value && *s.value == value; });
}

/** The reported value is the minimum of the finite trail entries. */
void check_minimum(const BoundReport& rep)
{
    REQUIRE_FALSE(rep.trail.empty());
    ExtendedInt m;
    bool first = true;
    for (const BoundStep& s : rep.trail) {
        m = first ? s.value : ext_min(m, s.value);
        first = false;
    }
    CHECK(to_string(m) == to_string(rep.value));
}

FewnomialSystem haas()
{
    return FewnomialSystem(2, {Fewnomial(2, {{1, {108, 0}}, {1.1, {0, 54}}, {-1.1, {0, 1}}}),
                               Fewnomial(2, {{1, {0, 108}}, {1.1, {54, 0}}, {-1.1, {1, 0}}})});
}

/** Snub pyramid with a = b = c = 1 and one interior term. */
Fewnomial snub_pyramid()
{
    return Fewnomial(3, {{1, {0, 0, 0}},
                         {2, {3, 0, 0}},
                         {-1, {0, 0, 3}},
                         {3, {3, 0, 3}},
                         {-2, {1, 1, 1}},
                         {1, {2, 1, 1}},
                         {-1, {1, 1, 2}},
                         {1, {2, 1, 2}},
                         {0.5, {1.5, 0.5, 1.5}}});
}

/** Trinomial paired with beta_0 + beta_{-1} u + sum_k beta_k v^k for u = x, v = x y. */
FewnomialSystem hundred_term_pair()
{
    Fewnomial tri(2, {{1, {0, 0}}, {-2, {1, 0}}, {3, {0.5, 1.5}}});
    std::vector<Term> terms{{1.5, {0, 0}}, {-1, {1, 0}}};
    for (int k = 1; k <= 100; ++k) terms.push_back({k % 2 ? 1.0 : -1.0, {double(k), double(k)}});
    return FewnomialSystem(2, {tri, Fewnomial(2, terms)});
}

}  // namespace

TEST_CASE("Khovanski's fewnomial bound")
{
    CHECK(khovanski_fewnomial(2, 5) == 248832);
    for (int n = 1; n <= 4; ++n) {
        for (int mu = 0; mu <= 12; ++mu) {
            CHECK(khovanski_fewnomial(n, mu) == ipow(n + 1, mu) * ipow(2, mu * (mu - 1) / 2));
        }
    }
    CHECK(khovanski_fewnomial(2, 4) == 5184);
    // Big values stay exact.
    CHECK(khovanski_fewnomial(3, 30) == ipow(4, 30) * ipow(2, 435));
}

TEST_CASE("Khovanski's mixed bound")
{
    CHECK(khovanski_mixed(2, 5, {1, 200}) == BigInt("68878994643353600"));
    CHECK(khovanski_mixed(2, 5, {1, 200}) == ipow(2, 10) * ipow(202, 5) * 200);
    CHECK(khovanski_mixed(2, 2, {1, 1}) == 18);
    CHECK(khovanski_mixed(2, 0, {1, 1}) == 1);
}

TEST_CASE("sparse root bounds use the best known value")
{
    CHECK(*sparse_root_bound(1, 7).value == 6);
    CHECK(*sparse_root_bound(2, 4).value == 5);
    CHECK(*sparse_root_bound(2, 3).value == 1);
    CHECK(*sparse_root_bound(3, 1).value == 0);
    CHECK(*sparse_root_bound(2, 5).value == 248832);
    for (int n = 1; n <= 3; ++n) {
        for (int mu = 0; mu <= 8; ++mu) check_minimum(sparse_root_bound(n, mu));
    }
}

TEST_CASE("bounds from the type alone")
{
    CHECK(*type_root_bound({3, 3}).value == 5);
    for (std::size_t m = 3; m <= 8; ++m) {
        CHECK(*type_root_bound({3, m}).value <= (BigInt(1) << static_cast<unsigned>(m)) - 2);
    }
    CHECK(*type_root_bound({2, 2, 2}).value == 1);
    CHECK(*type_root_bound({1, 5}).value == 0);
    CHECK(*type_root_bound({6}).value == 5);
}

TEST_CASE("part (c) bound and the stated cap")
{
    CHECK(part_c_bound(100, 200) == 801);
    CHECK(part_c_bound(0, 0) == 1);
    for (int d = 0; d <= 6; ++d) {
        for (int a = 0; a <= d * d; ++a) CHECK(part_c_bound(a, d) == 4 * a + 2 * d + 1);
    }
    // Area = D^2 at D = 3: the dispatcher returns min(4*9 + 7, 6*3 + 1) = 19.
    const FewnomialSystem s(2, {Fewnomial(2, {{1, {0, 0}}, {-2, {1, 0}}, {3, {0.5, 1.5}}}),
                                Fewnomial(2, {{1, {0, 0}}, {-1, {1, 0}}, {1, {0, 1}}, {-1, {3, 3}}})});
    BoundHints hints;
    hints.structure = PolynomialStructure{9, 3, {1, 0}, {0, 1}};
    const BoundReport rep = best_root_bound(s, hints);
    CHECK(has_rule(rep, "trinomial-and-polynomial", 43));
    CHECK(has_rule(rep, "trinomial-and-polynomial:cap", 19));
    CHECK(*rep.value <= 19);
}

TEST_CASE("structure-aware root bound")
{
    SUBCASE("Haas pair")
    {
        const BoundReport rep = best_root_bound(haas());
        CHECK(*rep.value == 5);
        check_minimum(rep);
    }
    SUBCASE("binomials are peeled")
    {
        const FewnomialSystem s(2, {Fewnomial(2, {{1, {2, 1}}, {-2, {0, 0}}}),
                                    Fewnomial(2, {{1, {1, 3}}, {-1, {0, 0}}})});
        CHECK(*best_root_bound(s).value == 1);
    }
    SUBCASE("declared trinomial-and-polynomial structure gives 801")
    {
        BoundHints hints;
        hints.structure = PolynomialStructure{100, 200, {1, 0}, {1, 1}};
        const BoundReport declared = best_root_bound(hundred_term_pair(), hints);
        CHECK(has_rule(declared, "trinomial-and-polynomial", 801));
        check_minimum(declared);
        // Without a declaration the search finds a presentation with a smaller value.
        const BoundReport detected = best_root_bound(hundred_term_pair());
        const auto ps = detect_polynomial_structure(hundred_term_pair().member(1));
        REQUIRE(ps.has_value());
        CHECK(has_rule(detected, "trinomial-and-polynomial", std::min(4 * ps->area + 2 * ps->degree + 1, 6 * ps->degree + 1)));
        CHECK(*detected.value <= 801);
        CHECK(*detected.value == 601);
    }
    SUBCASE("adding structure never raises the bound")
    {
        std::mt19937 rng(9);
        std::uniform_int_distribution<int> e(0, 4);
        std::uniform_real_distribution<double> c(-2, 2);
        for (int i = 0; i < 200; ++i) {
            std::vector<Fewnomial> members;
            for (int j = 0; j < 2; ++j) {
                std::vector<Term> terms;
                const int m = 2 + i % 3;
                for (int k = 0; k < m; ++k) terms.push_back({c(rng), {double(e(rng)), double(e(rng))}});
                members.emplace_back(2, terms);
            }
            const FewnomialSystem s(2, members);
            const BoundReport structured = best_root_bound(s);
            const BoundReport by_type = type_root_bound(s.type_signature());
            CHECK(to_string(ext_min(structured.value, by_type.value)) == to_string(structured.value));
            check_minimum(structured);
        }
    }
}

TEST_CASE("polygon classes of trinomial pairs")
{
    const FewnomialSystem triangle(2, {Fewnomial(2, {{1, {2, 0}}, {1, {0, 2}}, {-25, {0, 0}}}),
                                       Fewnomial(2, {{1, {1, 0}}, {1, {0, 1}}, {-7, {0, 0}}})});
    const FewnomialSystem quad(2, {Fewnomial(2, {{1, {2, 0}}, {-3, {1, 0}}, {2, {0, 0}}}),
                                   Fewnomial(2, {{1, {0, 2}}, {-3, {0, 1}}, {2, {0, 0}}})});
    const FewnomialSystem pent(2, {Fewnomial(2, {{1, {0, 2}}, {-7, {0, 1}}, {12, {0, 0}}}),
                                   Fewnomial(2, {{-1, {0, 0}}, {1, {1, 1}}, {-1, {2, 0}}})});
    CHECK(polygon_class_bound(triangle).edges == 3);
    CHECK(*polygon_class_bound(triangle).bound.value == 2);
    CHECK(polygon_class_bound(quad).edges == 4);
    CHECK(*polygon_class_bound(quad).bound.value == 4);
    CHECK(polygon_class_bound(pent).edges == 5);
    CHECK(*polygon_class_bound(pent).bound.value == 4);
    CHECK(polygon_class_bound(haas()).edges == 6);
    CHECK(*polygon_class_bound(haas()).bound.value == 5);
    // The classes are attained.
    CHECK(count_roots(triangle).roots.size() == 2);
    CHECK(count_roots(quad).roots.size() == 4);
    CHECK(count_roots(pent).roots.size() == 4);
}

TEST_CASE("component bounds")
{
    const ComponentBounds b24 = component_bounds(2, 4);
    CHECK(*b24.compact.value == 4);
    CHECK(*b24.non_compact.value == 4);
    CHECK(b24.compact_lower == 0);
    CHECK(b24.non_compact_lower == 3);
    check_minimum(b24.compact);
    check_minimum(b24.non_compact);
    check_minimum(b24.total);

    for (int n = 1; n <= 5; ++n) {
        const ComponentBounds b = component_bounds(n + 1, 2);
        CHECK(*b.compact.value == 0);
        CHECK(*b.non_compact.value == 1);
    }
    CHECK(component_bounds(2, 5).compact_lower == 0);
    for (int m = 2; m <= 6; ++m) CHECK(*component_bounds(1, m).compact.value == m - 1);

    // Lower bounds never exceed upper bounds over the table.
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m <= 6; ++m) {
            const ComponentBounds b = component_bounds(n, m);
            if (b.compact.value) CHECK(b.compact_lower <= *b.compact.value);
            if (b.non_compact.value) CHECK(b.non_compact_lower <= *b.non_compact.value);
        }
    }
    // Closed forms of the explicit recursion.
    const ComponentBounds b35 = component_bounds(3, 5);
    CHECK(has_rule(b35.total, "recursive-explicit", BigInt(3) * ipow(4, 5) * 4 * ipow(2, 10)));
}

TEST_CASE("finite components bound")
{
    for (int n = 1; n <= 3; ++n) {
        for (int mu = 0; mu <= 5; ++mu) {
            const long double v = std::pow(2.0L, n - 0.5L) * std::pow(2.0L * n + 1, mu) * std::pow(2.0L, mu * (mu + 1) / 2);
            CHECK(finite_components_bound(n, mu) == BigInt(static_cast<long long>(std::floor(v))));
        }
    }
}

TEST_CASE("non-compact components through the facets")
{
    SUBCASE("snub pyramid")
    {
        const BoundReport rep = moment_facet_bound(snub_pyramid());
        CHECK(has_rule(rep, "facet-sum", 60));
        CHECK(*rep.value == 48);
        CHECK(*rep.value <= 60);
        check_minimum(rep);
    }
    SUBCASE("graph of a product of linear factors")
    {
        // y - prod_{i=1}^{4} (x - i): m' = 6 boundary points, floor(6/2) = 3.
        Fewnomial p = Fewnomial::constant(2, 1.0);
        for (int i = 1; i <= 4; ++i) p = p * Fewnomial(2, {{1, {1, 0}}, {-double(i), {0, 0}}});
        const Fewnomial f = Fewnomial::monomial(1.0, {0, 1}) - p;
        const BoundReport rep = moment_facet_bound(f, true);
        CHECK(has_rule(rep, "boundary-points", 3));
        CHECK(*rep.value == 3);
        CHECK(has_rule(rep, "facet-sum", 6));
    }
    SUBCASE("trinomial curve")
    {
        const Fewnomial f(2, {{1, {0, 0}}, {-1, {1, 0}}, {-1, {0, 1}}});
        CHECK(*moment_facet_bound(f, true).value == 1);
    }
    SUBCASE("lower-dimensional polytope")
    {
        const Fewnomial f(2, {{1, {0, 0}}, {-1, {1, 1}}, {2, {2, 2}}});
        CHECK_THROWS_AS(moment_facet_bound(f), NotApplicableError);
    }
}

TEST_CASE("curve feature bounds")
{
    const CurveFeatureBounds m3 = curve_feature_bounds(3);
    CHECK(*m3.vertical.value == 1);
    CHECK(*m3.inflections.value == 3);
    const CurveFeatureBounds m2 = curve_feature_bounds(2);
    CHECK(*m2.vertical.value == 0);
    CHECK(*m2.inflections.value == 0);
    CurveFamily family;
    family.area = 2;
    const CurveFeatureBounds rho = curve_feature_bounds(6, family);
    CHECK(*rho.vertical.value == 2);
    CHECK(*rho.inflections.value == 6);
    CHECK_FALSE(curve_feature_bounds(5).inflections.value.has_value());
}

TEST_CASE("witness systems")
{
    SUBCASE("eq-degen vanishes at its 25 roots")
    {
        const Witness w = make_witness(WitnessKind::EqDegen, 0, 0);
        CHECK(w.known_roots.size() == 25);
        CHECK(w.expected_count == 25);
        for (const Point& x : w.known_roots) {
            for (const Fewnomial& f : w.system.members()) CHECK(f.evaluate(x) == 0.0);
        }
    }
    SUBCASE("eq-easy has (m-1)^n roots, all found")
    {
        const Witness w = make_witness(WitnessKind::EqEasy, 2, 4);
        CHECK(w.expected_count == 9);
        const SystemRootReport rep = count_roots(w.system);
        CHECK(rep.certified);
        CHECK(rep.roots.size() == w.expected_count);
        for (const Point& x : w.known_roots) {
            for (const Fewnomial& f : w.system.members()) CHECK(f.evaluate(x) == 0.0);
        }
    }
    SUBCASE("h1 is a union of m - 1 walls")
    {
        const Witness w = make_witness(WitnessKind::H1, 2, 5);
        CHECK(w.expected_count == 4);
        CHECK(w.system.member(0).size() == 5);
        for (int i = 1; i <= 4; ++i) CHECK(w.system.member(0).evaluate({double(i), 0.37}) == 0.0);
    }
    SUBCASE("g2 vanishes exactly on its grid")
    {
        const Witness w = make_witness(WitnessKind::G2, 2, 13);
        CHECK(w.expected_count == 9);
        CHECK(w.formula_value == 4);
        CHECK(BigInt(w.expected_count) >= w.formula_value);
        for (const Point& x : w.known_roots) CHECK(w.system.member(0).evaluate(x) == 0.0);
        std::mt19937 rng(1);
        std::uniform_real_distribution<double> u(0.1, 5.0);
        for (int i = 0; i < 200; ++i) CHECK(w.system.member(0).evaluate({u(rng), u(rng)}) > 0.0);
    }
    SUBCASE("g1 points")
    {
        const Witness w = make_witness(WitnessKind::G1, 2, 10);
        CHECK(w.expected_count == 2);
        for (const Point& x : w.known_roots) CHECK(w.system.member(0).evaluate(x) == 0.0);
    }
    SUBCASE("empty constructions are rejected")
    {
        CHECK_THROWS_AS(make_witness(WitnessKind::G1, 2, 4), ValidationError);
        CHECK_THROWS_AS(make_witness(WitnessKind::H2, 1, 5), ValidationError);
    }
    SUBCASE("names round-trip")
    {
        for (WitnessKind k : {WitnessKind::G1, WitnessKind::G2, WitnessKind::H1, WitnessKind::H2, WitnessKind::EqEasy,
                              WitnessKind::EqDegen}) {
            CHECK(witness_kind_from_string(to_string(k)) == k);
        }
        CHECK_FALSE(witness_kind_from_string("nope").has_value());
    }
}
