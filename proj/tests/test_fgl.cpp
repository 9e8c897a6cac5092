#include "oracles.hpp"

#include "bpcalc/fgl.hpp"

#include <doctest.h>

using namespace bpcalc;

namespace {

RationalSeries xi_series(const FglContext& ctx)
{
    return RationalSeries::xi(ctx.prime(), Basis::L, ctx.truncation() + 1);
}

} // namespace

TEST_CASE("exp and log are inverse")
{
    for (auto [p, k] : {std::pair{2, 13}, {3, 15}, {5, 15}, {7, 10}}) {
        CAPTURE(p);
        FglContext ctx(p, k);
        auto id = compose(ctx.exp(), ctx.log());
        CHECK(id.validity() == k + 1);
        CHECK(id == xi_series(ctx));
        CHECK(compose(ctx.log(), ctx.exp()) == xi_series(ctx));
    }
}

TEST_CASE("the logarithm is p-typical")
{
    FglContext ctx(3, 30);
    ctx.log().for_each_nonzero([&](int i, int, const auto&) { CHECK((i == 1 || i == 3 || i == 9 || i == 27)); });
    CHECK(ctx.generator_count() == 3);
}

TEST_CASE("Hazewinkel generators")
{
    FglContext ctx(2, 13);
    HazewinkelSubstitution sub(ctx);
    CHECK(sub(RationalPolynomial::generator(1, Basis::L)) == oracle::poly("1/2 v1"));
    CHECK(sub(RationalPolynomial::generator(2, Basis::L)) == oracle::poly("1/4 v1^3 + 1/2 v2"));

    // p l_n = sum_{i<n} l_i v_{n-i}^{p^i}
    for (int p : {2, 3, 5}) {
        FglContext c(p, p * p * p);
        for (int n = 1; n <= c.generator_count(); ++n) {
            RationalPolynomial rhs(Basis::V);
            long long pi = 1;
            for (int i = 0; i < n; ++i) {
                Monomial m = Monomial::generator(n - i, static_cast<unsigned>(pi));
                rhs += c.hazewinkel_l(i) * RationalPolynomial::monomial(m, 1);
                pi *= p;
            }
            CHECK(c.hazewinkel_l(n) * Rational(p) == rhs);
        }
    }
}

TEST_CASE("formal sum is a commutative group law")
{
    FglContext ctx(2, 9);
    auto x = RationalSeries::xi(2, Basis::L, 10);
    auto two = n_series(ctx, 2);
    auto three = n_series(ctx, 3);
    CHECK(formal_sum(ctx, two, three) == formal_sum(ctx, three, two));
    CHECK(formal_sum(ctx, formal_sum(ctx, x, two), three) == formal_sum(ctx, x, formal_sum(ctx, two, three)));
    CHECK(formal_sum(ctx, two, x) == three);
    CHECK(n_series(ctx, 0).is_zero());
    CHECK(n_series(ctx, 1) == x);
    CHECK_THROWS_AS(n_series(ctx, -1), InvalidArgument);
}

TEST_CASE("[m][n] = [mn]")
{
    FglContext ctx(3, 12);
    auto composed = compose(n_series(ctx, 2), n_series(ctx, 4));
    CHECK(composed == n_series(ctx, 8));
}

TEST_CASE("n-series against iterated formal sums")
{
    FglContext ctx(3, 10);
    auto x = RationalSeries::xi(3, Basis::L, 11);
    auto acc = x;
    for (int n = 2; n <= 5; ++n) {
        acc = formal_sum(ctx, acc, x);
        CHECK(acc == n_series(ctx, n));
    }
}

TEST_CASE("reduced p-series")
{
    FglContext ctx(2, 6);
    auto v = reduced_p_series(ctx, Basis::V);
    CHECK(v.validity() == 7);
    CHECK(is_integral(v));
    CHECK(v.weight_consistent());
    auto mod_v2 = apply_ideal(v, std::vector<int>{2});
    auto expected = oracle::p2_reduced_series_mod_v2(7);
    for (int i = 0; i < 7; ++i)
        CHECK(mod_v2.coefficient(i) == RationalPolynomial::monomial(Monomial::generator(1, static_cast<unsigned>(i)), expected[static_cast<std::size_t>(i)]));

    auto l = reduced_p_series(ctx, Basis::L);
    CHECK(l.coefficient(0) == RationalPolynomial::constant(2, Basis::L));
    CHECK(l.coefficient(1) == RationalPolynomial::constant(-2, Basis::L) * RationalPolynomial::generator(1, Basis::L));

    auto integral = reduced_p_series_integral(2, 20);
    CHECK(integral.validity() == 20);
    CHECK(equal_within(to_rational_series(integral), v));
}

TEST_CASE("every V-basis coefficient of <p>xi is integral")
{
    for (auto [p, k] : {std::pair{2, 20}, {3, 30}, {5, 30}}) {
        FglContext ctx(p, k);
        auto v = reduced_p_series(ctx, Basis::V);
        CHECK(is_integral(v));
        CHECK(v.weight_consistent());
        CHECK(v.coefficient(0) == RationalPolynomial::constant(p));
    }
}

TEST_CASE("invalid input")
{
    CHECK_THROWS_AS(FglContext(4, 5), InvalidArgument);
    CHECK_THROWS_AS(FglContext(3, 0), InvalidArgument);
    CHECK_THROWS_AS(FglContext(2, 600), HorizonExceeded);
}
