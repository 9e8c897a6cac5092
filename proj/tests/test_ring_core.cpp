#include "oracles.hpp"

#include "bpcalc/render.hpp"
#include "bpcalc/series.hpp"

#include <doctest.h>

using namespace bpcalc;

TEST_CASE("polynomial arithmetic is exact")
{
    auto a = oracle::poly("1/3 v1^2 - 2 v2");
    auto b = oracle::poly("3 v1 + 1/2");
    auto prod = a * b;
    CHECK(prod == oracle::poly("v1^3 + 1/6 v1^2 - 6 v1 v2 - v2"));
    CHECK((prod - prod).is_zero());
    CHECK((a + a) == a * Rational(2));

    // coefficients well past 64 bits
    Integer big = factorial(40);
    IntegerPolynomial p = IntegerPolynomial::constant(big) * IntegerPolynomial::generator(3);
    auto sq = p * p;
    CHECK(sq.coefficient(Monomial::generator(3, 2)) == big * big);
}

TEST_CASE("polynomial weight and homogeneity")
{
    auto p = oracle::poly("v1^4 + 3 v2");
    CHECK(p.weight(3) == std::optional<long long>{8});
    CHECK(!oracle::poly("v1 + v2").weight(2).has_value());
    CHECK(oracle::poly("v1^3 - v2").is_homogeneous(2));
}

TEST_CASE("basis mismatch is rejected")
{
    auto v = RationalPolynomial::generator(1, Basis::V);
    auto l = RationalPolynomial::generator(1, Basis::L);
    CHECK_THROWS_AS(v + l, BasisMismatch);
    CHECK_NOTHROW(v + RationalPolynomial(Basis::L));
}

TEST_CASE("series validity follows the product rule")
{
    auto a = oracle::series("1 + v1 xi + O(xi^5)", 2);
    auto b = oracle::series("xi^2 + O(xi^4)", 2);
    CHECK((a + b).validity() == 4);
    auto prod = a * b;
    // min(5 + 2, 4 + 0)
    CHECK(prod.validity() == 4);
    CHECK(prod == oracle::series("xi^2 + v1 xi^3 + O(xi^4)", 2));

    auto sq = b * b;
    CHECK(sq.validity() == 6);
    CHECK(sq == oracle::series("xi^4 + O(xi^6)", 2));
}

TEST_CASE("coefficients beyond validity are unknown")
{
    auto a = oracle::series("1 + xi + O(xi^3)", 2);
    CHECK(a.coefficient(2).is_zero());
    CHECK_THROWS_AS(a.coefficient(3), OutOfValidity);
    CHECK_THROWS_AS(a.set_coefficient(5, 0, RationalPolynomial::constant(1)), OutOfValidity);
}

TEST_CASE("composition")
{
    auto outer = oracle::series("xi + xi^2 + xi^3 + O(xi^6)", 2);
    auto inner = oracle::series("2 xi + v1 xi^2 + O(xi^5)", 2);
    auto c = compose(outer, inner);
    // (2x + v x^2) + (2x + v x^2)^2 + (2x + v x^2)^3 through x^5, validity min(6, 5 + 0) = 5
    CHECK(c.validity() == 5);
    CHECK(c == oracle::series("2 xi + (4 + v1) xi^2 + (8 + 4 v1) xi^3 + (v1^2 + 12 v1) xi^4 + O(xi^5)", 2));
}

TEST_CASE("reciprocal of random series")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = oracle::random_series(rng, 3, 12, 0, 2);
        s.set_coefficient(0, 0, IntegerPolynomial::constant(trial % 2 ? 1 : -1));
        auto r = reciprocal(s);
        auto one = s * r;
        REQUIRE(one.validity() == 12);
        one.for_each_nonzero([&](int i, int, const auto& c) {
            if (i == 0)
                CHECK(c == IntegerPolynomial::constant(1));
            else
                CHECK(c.is_zero());
        });
    }
    auto two = IntegerSeries::constant(3, IntegerPolynomial::constant(2), 5);
    CHECK_THROWS_AS(reciprocal(two), NotInvertible);
}

TEST_CASE("reversion")
{
    auto f = oracle::series("xi + 1/2 xi^2 + 1/3 xi^3 + 1/4 xi^4 + 1/5 xi^5 + O(xi^6)", 2);
    auto g = revert(f);
    auto id = compose(f, g);
    CHECK(id == RationalSeries::xi(2, Basis::V, 6));
    // -log(1 - x) reverts to 1 - e^{-x}
    CHECK(g == oracle::series("xi - 1/2 xi^2 + 1/6 xi^3 - 1/24 xi^4 + 1/120 xi^5 + O(xi^6)", 2));
}

TEST_CASE("divide by xi and shift")
{
    auto a = oracle::series("3 xi^2 + v1 xi^3 + O(xi^6)", 2);
    auto d = divide_by_xi(a, 2);
    CHECK(d == oracle::series("3 + v1 xi + O(xi^4)", 2));
    CHECK(shift(d, 2) == a);
    CHECK_THROWS_AS(divide_by_xi(a, 3), InvalidArgument);
}

TEST_CASE("text round trip")
{
    const char* text = "2 - v1 xi + (-8 v1^3 - 7 v2) xi^3 + O(xi^6)";
    auto s = oracle::series(text, 2);
    CHECK(render_series(s) == text);
    CHECK(render_polynomial(oracle::poly("-7 v2 - 8 v1^3")) == "-8 v1^3 - 7 v2");
    CHECK(render_polynomial(RationalPolynomial()) == "0");
    CHECK_THROWS_AS(parse_polynomial("3 v1^", Basis::V), ParseError);
}

TEST_CASE("json round trip")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = oracle::random_series(rng, 2, 15, -1, 3);
        auto j = series_to_json(s, 14);
        auto back = series_from_json(Json::parse(j.dump()));
        CHECK(back == to_rational_series(s));
        CHECK(back.weight() == s.weight());
    }
    auto bivariate = RationalSeries::x(2, Basis::V, 4, 2) + RationalSeries::xi(2, Basis::V, 4);
    auto back = series_from_json(series_to_json(bivariate, 3));
    CHECK(back == bivariate);
    CHECK(back.x_cap() == 2);
}
