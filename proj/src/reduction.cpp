#include "bpcalc/reduction.hpp"

#include "bpcalc/fgl.hpp"

namespace bpcalc {

PSeriesReducer::PSeriesReducer(int prime) : prime_(prime)
{
    if (!is_prime(prime))
        throw InvalidArgument(std::to_string(prime) + " is not prime");
}

PSeriesReducer::PSeriesReducer(int prime, IntegerSeries seed) : PSeriesReducer(prime)
{
    if (seed.prime() != prime || seed.coefficient(0, 0) != IntegerPolynomial::constant(prime))
        throw InvalidArgument("seed is not a reduced p-series");
    cached_ = std::move(seed);
}

const IntegerSeries& PSeriesReducer::p_series(int validity)
{
    validity = std::max(validity, 1);
    if (!cached_ || cached_->validity() < validity)
        cached_ = reduced_p_series_integral(prime_, validity);
    return *cached_;
}

namespace {

void check_input(const IntegerSeries& g, int prime)
{
    if (g.prime() != prime)
        throw InvalidArgument("series and p-series over different primes");
    if (!g.is_univariate())
        throw InvalidArgument("division by <p>xi needs a series in xi alone");
    if (!g.is_zero() && g.basis() != Basis::V)
        throw BasisMismatch("division by <p>xi works in the V basis");
}

} // namespace

DivisionResult divide(const IntegerSeries& g, const IntegerSeries& p_series)
{
    const int p = p_series.prime();
    check_input(g, p);
    const int val = g.valuation();
    const int validity = std::min<long long>(g.validity(), static_cast<long long>(p_series.validity()) + val);

    std::vector<IntegerPolynomial> work(static_cast<std::size_t>(validity), IntegerPolynomial(Basis::V));
    for (int i = 0; i < validity; ++i)
        work[static_cast<std::size_t>(i)] = g.stored(i, 0);

    std::vector<int> support;
    for (int l = 1; l < p_series.validity(); ++l) {
        if (!p_series.stored(l, 0).is_zero())
            support.push_back(l);
    }

    IntegerSeries quotient(p, Basis::V, validity);
    if (g.weight())
        quotient.declare_weight(g.weight());
    IntegerSeries rem(p, Basis::V, validity);
    rem.declare_weight(g.weight());

    for (int j = 0; j < validity; ++j) {
        auto& c = work[static_cast<std::size_t>(j)];
        if (c.is_zero())
            continue;
        std::vector<IntegerPolynomial::Term> q_terms;
        std::vector<IntegerPolynomial::Term> r_terms;
        for (const auto& t : c.terms()) {
            auto [q, r] = floor_divmod(t.coefficient, static_cast<unsigned long>(p));
            if (q != 0)
                q_terms.push_back({t.monomial, q});
            if (r != 0)
                r_terms.push_back({t.monomial, r});
        }
        auto d = IntegerPolynomial::from_terms(std::move(q_terms), Basis::V);
        if (!r_terms.empty())
            rem.set_coefficient(j, 0, IntegerPolynomial::from_terms(std::move(r_terms), Basis::V));
        if (d.is_zero())
            continue;
        for (int l : support) {
            if (j + l >= validity)
                break;
            sub_product(work[static_cast<std::size_t>(j + l)], d, p_series.stored(l, 0));
        }
        quotient.set_coefficient(j, 0, std::move(d));
    }
    return {std::move(quotient), {std::move(rem), true}};
}

DivisionResult divide(const IntegerSeries& g, PSeriesReducer& reducer)
{
    check_input(g, reducer.prime());
    const int needed = g.validity() - std::min(g.valuation(), g.validity());
    return divide(g, reducer.p_series(needed));
}

ReducedSeries canonical_rep(const IntegerSeries& g, PSeriesReducer& reducer)
{
    return divide(g, reducer).remainder;
}

ReducedSeries canonical_rep(const RationalSeries& g, PSeriesReducer& reducer)
{
    return canonical_rep(to_integer_series(g), reducer);
}

std::optional<Certificate> nonvanishing_certificate(const ReducedSeries& s)
{
    if (!s.normal)
        throw InvalidArgument("certificate needs a normal representative");
    for (int j = 0; j < s.series.validity(); ++j) {
        const auto& c = s.series.stored(j, 0);
        if (!c.is_zero())
            return Certificate{j, c};
    }
    return std::nullopt;
}

bool divisible_by_p_series(const IntegerSeries& g, PSeriesReducer& reducer)
{
    if (g.validity() == 0)
        return true;
    if (!g.coefficient(0, 0).is_zero())
        return false;
    return nonvanishing_certificate(canonical_rep(divide_by_xi(g, 1), reducer)) == std::nullopt;
}

} // namespace bpcalc
