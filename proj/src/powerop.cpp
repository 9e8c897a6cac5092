#include "bpcalc/powerop.hpp"

#include <string>

namespace bpcalc {

namespace {

IntegerPolynomial integer_constant(const Integer& c) { return IntegerPolynomial::constant(c, Basis::L); }

// prod_{i=1}^{p-1} E(i L(xi) + L(x)) modulo (xi, x)^{k+1} and x^{cap+1}, integer L basis.
//
// E(u + w) = sum_m w^m S_m(u) with S_m(u) = sum_t e_{t+m} C(t+m, m) u^t, so each factor
// is assembled from powers of L(xi) without any bivariate composition.
IntegerSeries factor_product(const FglContext& ctx, int cap)
{
    const int p = ctx.prime();
    const int k = ctx.truncation();
    const int v = k + 1;
    const IntegerSeries log = to_integer_series(ctx.log());
    const IntegerSeries exp = to_integer_series(ctx.exp());

    // lpow[t] = L(xi)^t
    std::vector<IntegerSeries> lpow;
    lpow.reserve(static_cast<std::size_t>(v));
    lpow.push_back(IntegerSeries::constant(p, integer_constant(1), v));
    lpow.back().declare_weight(0);
    for (int t = 1; t < v; ++t)
        lpow.push_back(multiply_to(lpow.back(), log, v));

    // s[m][i-1] = S_m(i L(xi)), needed modulo xi^{v-m}
    std::vector<std::vector<IntegerSeries>> s(static_cast<std::size_t>(cap + 1));
    for (int m = 0; m <= cap; ++m) {
        auto& row = s[static_cast<std::size_t>(m)];
        for (int i = 1; i < p; ++i) {
            row.emplace_back(p, Basis::L, v - m);
            row.back().declare_weight(m - 1);
        }
        parallel_for(static_cast<std::size_t>(p - 1), [&](std::size_t idx) {
            const Integer i = static_cast<unsigned long>(idx + 1);
            auto& out = row[idx];
            Integer i_pow = 1;
            for (int t = 0; t + m < v; ++t, i_pow *= i) {
                const auto& e = exp.stored(t + m, 0);
                if (e.is_zero())
                    continue;
                const IntegerPolynomial scaled = e * (binomial(t + m, m) * i_pow);
                lpow[static_cast<std::size_t>(t)].for_each_nonzero([&](int a, int, const IntegerPolynomial& c) {
                    if (a < v - m)
                        add_product(out.coefficient_ref(a, 0), scaled, c);
                });
            }
        });
    }

    // F_i[xi^a x^j] = sum_{m <= j} [xi^j] L^m * S_m(i L)[xi^a]
    std::vector<IntegerSeries> factors;
    for (int i = 1; i < p; ++i) {
        factors.emplace_back(p, Basis::L, v, cap);
        factors.back().declare_weight(-1);
    }
    parallel_for(static_cast<std::size_t>(p - 1), [&](std::size_t idx) {
        auto& f = factors[idx];
        for (int j = 0; j <= cap && j < v; ++j) {
            for (int m = 0; m <= j; ++m) {
                const auto& lx = lpow[static_cast<std::size_t>(m)].stored(j, 0);
                if (lx.is_zero())
                    continue;
                const auto& sm = s[static_cast<std::size_t>(m)][idx];
                for (int a = 0; a + j < v; ++a) {
                    const auto& c = sm.stored(a, 0);
                    if (!c.is_zero())
                        add_product(f.coefficient_ref(a, j), lx, c);
                }
            }
        }
    });

    IntegerSeries q = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        q = multiply_to(q, factors[i], v);
    return q;
}

} // namespace

PowerOpData power_op_series(const FglContext& ctx, int max_index)
{
    const int p = ctx.prime();
    const int k = ctx.truncation();
    if (max_index < 0)
        throw InvalidArgument("max_index must be non-negative");
    const int cap = std::min(max_index, k);

    const IntegerSeries q = factor_product(ctx, cap);
    IntegerSeries q_v = hazewinkel_substitute(ctx, q);

    PowerOpData data;
    data.prime = p;
    data.truncation = k;
    data.product_series = shift(q_v, 0, 1);
    data.a = extract_a(ctx, data.product_series);
    return data;
}

RationalSeries power_op_series_direct(const FglContext& ctx, int max_index)
{
    const int p = ctx.prime();
    const int v = ctx.truncation() + 1;
    const int cap = std::min(max_index, ctx.truncation()) + 1;
    const auto x = RationalSeries::x(p, Basis::L, v, cap);
    RationalSeries out = x;
    for (int i = 1; i < p; ++i) {
        auto ixi = n_series(ctx, i);
        RationalSeries lifted(p, Basis::L, v, cap);
        lifted.declare_weight(-1);
        ixi.for_each_nonzero([&](int a, int, const RationalPolynomial& c) { lifted.set_coefficient(a, 0, c); });
        auto factor = formal_sum(ctx, lifted, x).capped_x(cap);
        out = multiply_to(out, factor, std::min(v + 1, product_validity(out, factor)));
    }
    return out;
}

std::vector<IntegerSeries> extract_a(const FglContext& ctx, const IntegerSeries& product_series)
{
    const int p = ctx.prime();
    if (product_series.validity() < 2)
        return {};
    const int top = std::min(product_series.x_cap(), product_series.validity() - 1);
    std::vector<IntegerSeries> a;
    for (int i = 0; i + 1 <= top; ++i)
        a.push_back(product_series.x_row(i + 1));
    if (!product_series.x_row(0).is_zero())
        throw ConsistencyError("power operation series has an x-free part");

    // Euler class: a_0 = (p-1)! xi^{p-1} + O(xi^p)
    const auto& a0 = a.front();
    for (int j = 0; j < std::min(p, a0.validity()); ++j) {
        const auto expected = j == p - 1 ? IntegerPolynomial::constant(factorial(static_cast<unsigned long>(p - 1)))
                                         : IntegerPolynomial(Basis::V);
        if (a0.stored(j, 0) != expected)
            throw ConsistencyError("a_0 fails the Euler class congruence at xi^" + std::to_string(j));
    }
    return a;
}

std::vector<ReducedSeries> reduce_a_mod_p_series(const PowerOpData& data, PSeriesReducer& reducer)
{
    std::vector<ReducedSeries> out;
    out.reserve(data.a.size());
    for (const auto& ai : data.a)
        out.push_back(canonical_rep(ai, reducer));
    return out;
}

} // namespace bpcalc
