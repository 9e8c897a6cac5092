#include "bpcalc/fgl.hpp"

#include <string>

namespace bpcalc {

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0)
            return false;
    }
    return true;
}

namespace {

void check_parameters(int prime, int truncation)
{
    if (!is_prime(prime))
        throw InvalidArgument(std::to_string(prime) + " is not prime");
    if (truncation < 1)
        throw InvalidArgument("truncation must be at least 1");
}

// Largest m with p^m - 1 <= k.
int horizon(int prime, int truncation)
{
    int m = 0;
    long long power = prime;
    while (power - 1 <= truncation) {
        ++m;
        power *= prime;
    }
    if (m > Monomial::kMaxGenerators)
        throw HorizonExceeded("truncation " + std::to_string(truncation) + " needs more than "
                              + std::to_string(Monomial::kMaxGenerators) + " generators");
    return m;
}

} // namespace

RationalSeries build_log(int prime, int truncation)
{
    check_parameters(prime, truncation);
    const int m_max = horizon(prime, truncation);
    RationalSeries log(prime, Basis::L, truncation + 1);
    log.declare_weight(-1);
    log.set_coefficient(1, 0, RationalPolynomial::constant(1, Basis::L));
    long long power = prime;
    for (int m = 1; m <= m_max; ++m, power *= prime) {
        if (power <= truncation)
            log.set_coefficient(static_cast<int>(power), 0, RationalPolynomial::generator(m, Basis::L));
    }
    return log;
}

FglContext::FglContext(int prime, int truncation)
    : prime_(prime), truncation_(truncation), log_(build_log(prime, truncation)), exp_(revert(log_))
{
    const int m_max = horizon(prime, truncation);
    // p l_n = sum_{i=0}^{n-1} l_i v_{n-i}^{p^i}, l_0 = 1
    hazewinkel_.push_back(RationalPolynomial::constant(1, Basis::V));
    for (int n = 1; n <= m_max; ++n) {
        RationalPolynomial acc(Basis::V);
        unsigned p_pow = 1;
        for (int i = 0; i < n; ++i, p_pow *= static_cast<unsigned>(prime)) {
            auto v = RationalPolynomial::monomial(Monomial::generator(n - i, p_pow), 1, Basis::V);
            add_product(acc, hazewinkel_[static_cast<std::size_t>(i)], v);
        }
        hazewinkel_.push_back(acc * Rational(1, prime));
    }
}

const RationalPolynomial& FglContext::hazewinkel_l(int m) const
{
    if (m < 0 || m > generator_count())
        throw HorizonExceeded("l_" + std::to_string(m) + " beyond the generator horizon for truncation "
                              + std::to_string(truncation_));
    return hazewinkel_[static_cast<std::size_t>(m)];
}

const RationalPolynomial& HazewinkelSubstitution::l_power(int m, unsigned e)
{
    auto key = std::make_pair(m, e);
    auto it = powers_.find(key);
    if (it != powers_.end())
        return it->second;
    RationalPolynomial value = e == 1 ? ctx_.hazewinkel_l(m) : l_power(m, e - 1) * ctx_.hazewinkel_l(m);
    return powers_.emplace(key, std::move(value)).first->second;
}

const RationalPolynomial& HazewinkelSubstitution::monomial_image(const Monomial& mono)
{
    auto it = monomials_.find(mono);
    if (it != monomials_.end())
        return it->second;
    RationalPolynomial value = RationalPolynomial::constant(1, Basis::V);
    for (int m = 1; m <= mono.max_generator(); ++m) {
        if (mono.exponent(m) != 0)
            value = value * l_power(m, mono.exponent(m));
    }
    return monomials_.emplace(mono, std::move(value)).first->second;
}

RationalPolynomial HazewinkelSubstitution::operator()(const RationalPolynomial& l_poly)
{
    if (!l_poly.is_zero() && l_poly.basis() != Basis::L)
        throw BasisMismatch("Hazewinkel substitution expects an L-basis polynomial");
    RationalPolynomial out(Basis::V);
    for (const auto& t : l_poly.terms())
        out += monomial_image(t.monomial) * t.coefficient;
    return out;
}

IntegerPolynomial HazewinkelSubstitution::integral(const IntegerPolynomial& l_poly)
{
    if (!l_poly.is_zero() && l_poly.basis() != Basis::L)
        throw BasisMismatch("Hazewinkel substitution expects an L-basis polynomial");
    RationalPolynomial out(Basis::V);
    for (const auto& t : l_poly.terms())
        out += monomial_image(t.monomial) * Rational(t.coefficient);
    return to_integer_polynomial(out);
}

RationalSeries build_exp(const FglContext& ctx) { return revert(ctx.log()); }

RationalSeries formal_sum(const FglContext& ctx, const RationalSeries& s, const RationalSeries& t)
{
    return compose(ctx.exp(), compose(ctx.log(), s) + compose(ctx.log(), t));
}

RationalSeries n_series(const FglContext& ctx, int n)
{
    if (n < 0)
        throw InvalidArgument("n-series is only defined here for n >= 0");
    if (n == 0) {
        RationalSeries zero(ctx.prime(), Basis::L, ctx.truncation() + 1);
        zero.declare_weight(-1);
        return zero;
    }
    return compose(ctx.exp(), scale(ctx.log(), Rational(n)));
}

RationalSeries hazewinkel_substitute(const FglContext& ctx, const RationalSeries& l_series)
{
    if (!l_series.is_zero() && l_series.basis() != Basis::L)
        throw BasisMismatch("Hazewinkel substitution expects an L-basis series");
    HazewinkelSubstitution subst(ctx);
    RationalSeries out(l_series.prime(), Basis::V, l_series.validity(), l_series.x_cap());
    out.declare_weight(l_series.weight());
    l_series.for_each_nonzero([&](int i, int j, const RationalPolynomial& c) {
        auto image = subst(c);
        if (!image.is_zero())
            out.set_coefficient(i, j, std::move(image));
    });
    return out;
}

IntegerSeries hazewinkel_substitute(const FglContext& ctx, const IntegerSeries& l_series)
{
    if (!l_series.is_zero() && l_series.basis() != Basis::L)
        throw BasisMismatch("Hazewinkel substitution expects an L-basis series");
    HazewinkelSubstitution subst(ctx);
    IntegerSeries out(l_series.prime(), Basis::V, l_series.validity(), l_series.x_cap());
    out.declare_weight(l_series.weight());
    l_series.for_each_nonzero([&](int i, int j, const IntegerPolynomial& c) {
        auto image = subst.integral(c);
        if (!image.is_zero())
            out.set_coefficient(i, j, std::move(image));
    });
    return out;
}

RationalSeries reduced_p_series(const FglContext& ctx, Basis basis)
{
    // One extra order of [p]xi so that <p>xi keeps validity k + 1 after dividing by xi.
    const FglContext extended(ctx.prime(), ctx.truncation() + 1);
    RationalSeries reduced = divide_by_xi(n_series(extended, ctx.prime()), 1);
    if (basis == Basis::L)
        return reduced;
    RationalSeries v = hazewinkel_substitute(extended, reduced);
    if (!is_integral(v))
        throw IntegralityError("reduced p-series has non-integral V-basis coefficients");
    return v;
}

IntegerSeries reduced_p_series_integral(int prime, int validity)
{
    const FglContext ctx(prime, std::max(1, validity - 1));
    return to_integer_series(reduced_p_series(ctx, Basis::V)).truncated(validity);
}

} // namespace bpcalc
