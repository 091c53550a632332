#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fewnomial/core.hpp"

using namespace fewnomial;

TEST_CASE("evaluation of a sparse polynomial with large exponents")
{
    const Fewnomial f(2, {{1.0, {108, 0}}, {1.1, {0, 54}}, {-1.1, {0, 1}}});
    CHECK(f.evaluate({1.0, 1.0}) == doctest::Approx(1.0));
    // Direct arithmetic at (0.5, 2): 0.5^108 + 1.1 * 2^54 - 2.2.
    const double expected = std::pow(0.5, 108) + 1.1 * std::pow(2.0, 54) - 2.2;
    CHECK(f.evaluate({0.5, 2.0}) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("real exponents and negative exponents")
{
    const Fewnomial f(1, {{2.0, {0.5}}, {-3.0, {-1.5}}});
    const double x = 2.7;
    CHECK(f.evaluate({x}) == doctest::Approx(2.0 * std::sqrt(x) - 3.0 / (x * std::sqrt(x))));
}

TEST_CASE("log-coordinate evaluation survives overflow of single terms")
{
    const Fewnomial f(1, {{1.0, {1000}}, {-1.0, {999}}});
    const ScaledValue v = f.evaluate_log({std::log(2.0)});
    CHECK(v.sign() == 1);
    // x^1000 - x^999 = x^999 (x - 1): the log of the true value is 999 log 2.
    CHECK(std::log(v.mantissa) + v.log_factor == doctest::Approx(999 * std::log(2.0)));
    CHECK_THROWS_AS(f.evaluate({3.0}), OverflowError);
}

TEST_CASE("domain and validation errors")
{
    const Fewnomial f(2, {{1.0, {1, 1}}});
    CHECK_THROWS_AS(f.evaluate({0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(f.evaluate({-1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(f.evaluate({1.0}), DomainError);
    CHECK_THROWS_AS(Fewnomial::from_terms_strict(2, {{1.0, {1, 1}}, {2.0, {1, 1}}}), ValidationError);
    CHECK_THROWS_AS(Fewnomial::from_terms_strict(2, {{0.0, {1, 1}}}), ValidationError);
    CHECK_THROWS_AS(Fewnomial::from_terms_strict(2, {{1.0, {1}}}), ValidationError);
}

TEST_CASE("merging equal exponents and cancellation")
{
    Fewnomial f(1, {{1.0, {2}}, {2.0, {2}}, {1.0, {0}}});
    CHECK(f.size() == 2);
    f.add_term(-3.0, {2});
    CHECK(f.size() == 1);
    CHECK(f.evaluate({5.0}) == doctest::Approx(1.0));
}

TEST_CASE("arithmetic: (x - 1)(x + 1) = x^2 - 1")
{
    const Fewnomial x = Fewnomial::monomial(1.0, {1});
    const Fewnomial one = Fewnomial::constant(1, 1.0);
    const Fewnomial p = (x - one) * (x + one);
    CHECK(p.size() == 2);
    for (double t : {0.3, 1.0, 4.5}) CHECK(p.evaluate({t}) == doctest::Approx(t * t - 1).epsilon(1e-14));
    CHECK(pow(x + one, 3).size() == 4);
}

TEST_CASE("derivatives match finite differences")
{
    const Fewnomial f(2, {{1.5, {2.5, -1}}, {-0.7, {0.3, 1.2}}, {2.0, {0, 0}}});
    const Point x{1.3, 0.8};
    const double h = 1e-6;
    for (std::size_t i = 0; i < 2; ++i) {
        Point xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
        CHECK(f.partial(i).evaluate(x) == doctest::Approx(fd).epsilon(1e-7));
        CHECK(f.log_derivative(i).evaluate(x) == doctest::Approx(x[i] * fd).epsilon(1e-7));
    }
}

TEST_CASE("compensated summation recovers cancelled digits and ignores order")
{
    const std::vector<double> a{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(a) == 2.0);
    CHECK(compensated_sum({1.0, -1e16, 1.0, 1e16}) == 2.0);
}

TEST_CASE("system signature, sparsity and residuals")
{
    const FewnomialSystem s(2, {Fewnomial(2, {{1, {108, 0}}, {1.1, {0, 54}}, {-1.1, {0, 1}}}),
                                Fewnomial(2, {{1, {0, 108}}, {1.1, {54, 0}}, {-1.1, {1, 0}}})});
    CHECK(s.type_signature() == std::vector<std::size_t>{3, 3});
    // The two supports are disjoint: six distinct exponent vectors.
    CHECK(s.sparsity() == 6);
    const auto r = s.residuals({1.0, 1.0});
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(s.relative_residuals({1.0, 1.0})[0] == doctest::Approx(1.0 / 3.2));
    CHECK_THROWS_AS(FewnomialSystem(2, {Fewnomial(1)}), ValidationError);
}
