#include "bpcalc/obstruction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

namespace bpcalc {

MultiIndex::MultiIndex(std::vector<int> alpha) : alpha_(std::move(alpha))
{
    for (int a : alpha_) {
        if (a < 0)
            throw InvalidArgument("multi-index entries must be non-negative");
    }
    while (!alpha_.empty() && alpha_.back() == 0)
        alpha_.pop_back();
}

int MultiIndex::size() const
{
    int s = 0;
    for (int a : alpha_)
        s += a;
    return s;
}

int MultiIndex::weighted_size() const
{
    int s = 0;
    for (int i = 1; i <= length(); ++i)
        s += i * alpha_[static_cast<std::size_t>(i - 1)];
    return s;
}

Integer mu(long n, const MultiIndex& alpha)
{
    // (n)_{|alpha|} / prod alpha_i!
    Integer num = 1;
    const int s = alpha.size();
    for (int r = 0; r < s; ++r)
        num *= Integer(n - r);
    Integer den = 1;
    for (int a : alpha.alpha())
        den *= factorial(static_cast<unsigned long>(a));
    return num / den;
}

namespace {

// m >= 0 with i = p^m - 1, or -1.
int cp_level(int i, int prime)
{
    long long q = 1;
    for (int m = 0; q - 1 <= i; ++m, q *= prime) {
        if (q - 1 == i)
            return m;
    }
    return -1;
}

} // namespace

IntegerPolynomial cp_image(const FglContext& ctx, int i)
{
    if (i < 0)
        throw InvalidArgument("CP^i needs i >= 0");
    const int m = cp_level(i, ctx.prime());
    if (m < 0)
        return IntegerPolynomial(Basis::V);
    if (m == 0)
        return IntegerPolynomial::constant(1);
    Integer pm = 1;
    for (int r = 0; r < m; ++r)
        pm *= ctx.prime();
    return to_integer_polynomial(ctx.hazewinkel_l(m) * Rational(pm));
}

bool is_obstruction_index(int n, int prime) { return cp_level(n, prime) < 0; }

namespace {

void partitions(int remaining, int max_part, std::vector<int>& alpha, std::vector<MultiIndex>& out)
{
    if (remaining == 0) {
        out.emplace_back(alpha);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        if (static_cast<int>(alpha.size()) < part)
            alpha.resize(static_cast<std::size_t>(part), 0);
        ++alpha[static_cast<std::size_t>(part - 1)];
        partitions(remaining - part, part, alpha, out);
        --alpha[static_cast<std::size_t>(part - 1)];
    }
}

} // namespace

std::vector<IndexedTerm> enumerate_indices(int n, int prime)
{
    if (n < 0)
        throw InvalidArgument("enumerate_indices needs n >= 0");
    std::vector<IndexedTerm> out;
    for (int k = 0; k <= n; ++k) {
        if (cp_level(n - k, prime) < 0)
            continue;
        std::vector<MultiIndex> alphas;
        std::vector<int> scratch;
        partitions(k, k, scratch, alphas);
        std::sort(alphas.begin(), alphas.end());
        for (auto& a : alphas)
            out.push_back({std::move(a), k});
    }
    return out;
}

namespace {

constexpr long long kNoLimit = std::numeric_limits<int>::max() / 4;

struct FactorInfo {
    int validity;
    int valuation;
};

// Validity of prod f^{e_f}: sum e_f val_f + min_f (V_f - val_f).
long long product_validity_of(const std::vector<std::pair<FactorInfo, int>>& factors)
{
    long long sum = 0;
    long long best = kNoLimit;
    for (const auto& [info, e] : factors) {
        if (e <= 0)
            continue;
        sum += static_cast<long long>(e) * info.valuation;
        best = std::min<long long>(best, info.validity - info.valuation);
    }
    return best == kNoLimit ? kNoLimit : sum + best;
}

std::vector<std::pair<FactorInfo, int>> summand_factors(const std::vector<FactorInfo>& info, int n,
                                                        const MultiIndex& alpha)
{
    std::vector<std::pair<FactorInfo, int>> f;
    f.emplace_back(info[0], n - alpha.size());
    for (int i = 1; i <= alpha.length(); ++i)
        f.emplace_back(info[static_cast<std::size_t>(i)], alpha[i]);
    return f;
}

void check_available(const PowerOpData& data, int n)
{
    if (n < 0)
        throw InvalidArgument("MC_n needs n >= 0");
    if (static_cast<int>(data.a.size()) <= std::max(n, 0))
        throw InsufficientTruncation("MC_" + std::to_string(n) + " needs a_0 ... a_" + std::to_string(n)
                                     + "; only " + std::to_string(data.a.size()) + " available");
}

IntegerSeries one_series(int prime, int validity)
{
    auto one = IntegerSeries::constant(prime, IntegerPolynomial::constant(1), validity);
    one.declare_weight(0);
    return one;
}

// Lower bound for val(a_i) from the weight grading: coefficients sit at xi^j with
// j = p - 1 - i mod (p - 1), j >= 0, and only a_{p-1} has a constant term.
int valuation_bound(int prime, int i)
{
    if (i == prime - 1)
        return 0;
    if (i < prime - 1)
        return prime - 1 - i;
    const int r = ((prime - 1 - i) % (prime - 1) + (prime - 1)) % (prime - 1);
    return r > 0 ? r : prime - 1;
}

long long mc_validity(const std::vector<FactorInfo>& info, int n, int prime)
{
    long long v = kNoLimit;
    for (const auto& term : enumerate_indices(n, prime))
        v = std::min(v, product_validity_of(summand_factors(info, n, term.alpha)));
    return v;
}

std::vector<FactorInfo> factor_info(const PowerOpData& data, int n)
{
    std::vector<FactorInfo> info;
    for (int i = 0; i <= n; ++i) {
        const auto& ai = data.a[static_cast<std::size_t>(i)];
        info.push_back({ai.validity(), ai.valuation()});
    }
    return info;
}

} // namespace

int truncation_for(int prime, int n, int target_validity)
{
    for (int k = std::max(1, n); k < 1 << 20; ++k) {
        std::vector<FactorInfo> info;
        for (int i = 0; i <= n; ++i)
            info.push_back({k + 1 - i, std::min(valuation_bound(prime, i), std::max(k + 1 - i, 0))});
        if (mc_validity(info, n, prime) >= target_validity)
            return k;
    }
    throw InvalidArgument("no truncation reaches the requested validity");
}

IntegerSeries mc_raw(const FglContext& ctx, const PowerOpData& data, int n, const McOptions& options)
{
    const int p = ctx.prime();
    check_available(data, n);
    const auto info = factor_info(data, n);
    const auto terms = enumerate_indices(n, p);
    const long long v_long = mc_validity(info, n, p);
    const int v = static_cast<int>(v_long == kNoLimit ? ctx.truncation() + 1 : v_long);
    const long long weight = -static_cast<long long>(n) * (p - 2);

    IntegerSeries raw(p, Basis::V, std::max(v, 0));
    raw.declare_weight(weight);
    if (v <= 0)
        return raw;

    // powers[i][e] = a_i^e truncated to v
    int max_e0 = 0;
    std::vector<int> max_e(static_cast<std::size_t>(n + 1), 0);
    for (const auto& t : terms) {
        max_e0 = std::max(max_e0, n - t.alpha.size());
        for (int i = 1; i <= t.alpha.length(); ++i)
            max_e[static_cast<std::size_t>(i)] = std::max(max_e[static_cast<std::size_t>(i)], t.alpha[i]);
    }
    max_e[0] = max_e0;
    std::vector<std::vector<IntegerSeries>> powers(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        const auto& ai = data.a[static_cast<std::size_t>(i)];
        auto& pw = powers[static_cast<std::size_t>(i)];
        pw.push_back(one_series(p, v));
        for (int e = 1; e <= max_e[static_cast<std::size_t>(i)]; ++e)
            pw.push_back(multiply_to(pw.back(), ai, std::min(v, product_validity(pw.back(), ai))));
    }

    // Group by (k, |alpha|); both mu(-(n+1); alpha) and the a_0 power depend on alpha only through these.
    std::map<std::pair<int, int>, std::vector<std::size_t>> groups;
    for (std::size_t idx = 0; idx < terms.size(); ++idx)
        groups[{terms[idx].k, terms[idx].alpha.size()}].push_back(idx);

    const int val0 = info[0].valuation;
    std::size_t done = 0;
    for (const auto& [key, members] : groups) {
        const auto [k, s] = key;
        const IntegerPolynomial cp = cp_image(ctx, n - k);
        if (cp.is_zero()) {
            done += members.size();
            continue;
        }
        const int e0 = n - s;
        const long long reach = static_cast<long long>(v) - static_cast<long long>(e0) * val0;
        const int v_t = static_cast<int>(std::clamp<long long>(reach, 0, v));

        std::vector<IntegerSeries> products(members.size(), IntegerSeries(p, Basis::V, 0));
        parallel_for(members.size(), [&](std::size_t m) {
            const auto& alpha = terms[members[m]].alpha;
            IntegerSeries prod = one_series(p, v_t);
            for (int i = 1; i <= alpha.length(); ++i) {
                if (alpha[i] == 0)
                    continue;
                const auto& f = powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(alpha[i])];
                prod = multiply_to(prod, f, std::min(v_t, product_validity(prod, f)));
            }
            products[m] = scale(prod, mu(-(n + 1L), alpha));
        });
        IntegerSeries t_ks(p, Basis::V, v_t);
        for (const auto& prod : products)
            t_ks = t_ks + prod;

        const auto& a0pow = powers[0][static_cast<std::size_t>(e0)];
        IntegerSeries summand = multiply_to(a0pow, t_ks, std::min(v, product_validity(a0pow, t_ks)));
        raw = raw + scale(summand, cp);
        done += members.size();
        if (options.progress)
            options.progress(done, terms.size());
    }
    raw.declare_weight(weight);
    return raw;
}

ObstructionResult mc(const FglContext& ctx, const PowerOpData& data, int n, PSeriesReducer& reducer,
                     const McOptions& options)
{
    const int p = ctx.prime();
    if (n < 1)
        throw InvalidArgument("MC_n needs n >= 1");
    check_available(data, n);
    ObstructionResult result;
    result.n = n;
    const long long weight = -static_cast<long long>(n) * (p - 2);

    if (p > 2 && n % (p - 1) != 0 && !options.force_full) {
        const long long v = mc_validity(factor_info(data, n), n, p);
        if (v < p)
            throw InsufficientTruncation("MC_" + std::to_string(n) + " is only known modulo xi^"
                                         + std::to_string(v) + " at truncation " + std::to_string(ctx.truncation()));
        IntegerSeries zero(p, Basis::V, static_cast<int>(v));
        zero.declare_weight(weight);
        result.reduced = {std::move(zero), true};
        result.shortcut = true;
        if (options.progress)
            options.progress(1, 1);
        return result;
    }

    IntegerSeries raw = mc_raw(ctx, data, n, options);
    if (raw.validity() < p)
        throw InsufficientTruncation("MC_" + std::to_string(n) + " is only known modulo xi^"
                                     + std::to_string(raw.validity()) + " at truncation "
                                     + std::to_string(ctx.truncation()));
    result.reduced = canonical_rep(raw, reducer);
    result.reduced.series.declare_weight(weight);
    result.certificate = nonvanishing_certificate(result.reduced);
    result.raw = std::move(raw);
    return result;
}

namespace {

// xi^shift * series, shift possibly negative.
struct Laurent {
    int shift;
    RationalSeries series;

    int validity() const { return shift + series.validity(); }
};

Laurent operator*(const Laurent& a, const Laurent& b) { return {a.shift + b.shift, a.series * b.series}; }

Laurent operator+(const Laurent& a, const Laurent& b)
{
    const int s = std::min(a.shift, b.shift);
    return {s, shift(a.series, a.shift - s) + shift(b.series, b.shift - s)};
}

Laurent scaled(const Laurent& a, const Rational& c) { return {a.shift, scale(a.series, c)}; }

IntegerSeries to_ordinary(const Laurent& a)
{
    const RationalSeries s = a.shift >= 0 ? shift(a.series, a.shift) : divide_by_xi(a.series, -a.shift);
    return to_integer_series(s);
}

} // namespace

IntegerSeries mc_via_inverse(const FglContext& ctx, const PowerOpData& data, int n)
{
    const int p = ctx.prime();
    check_available(data, n);
    std::vector<RationalSeries> a;
    for (int i = 0; i <= n; ++i)
        a.push_back(to_rational_series(data.a[static_cast<std::size_t>(i)]));

    // a_0 = xi^{p-1} b with b(0) = (p-1)!
    const Laurent a0_inv{-(p - 1), reciprocal(divide_by_xi(a[0], p - 1))};
    const auto one = [&](int validity) {
        return Laurent{0, RationalSeries::constant(p, RationalPolynomial::constant(1), validity)};
    };
    // never the limiting factor: every other series here has validity <= k + 2
    const int big = 2 * (ctx.truncation() + 2) + n * p;

    // c[i] = a_i / a_0, the coefficient of z^i in (sum a_i z^i) / a_0 - 1
    std::vector<Laurent> c;
    c.push_back(one(big));
    for (int i = 1; i <= n; ++i)
        c.push_back(Laurent{0, a[static_cast<std::size_t>(i)]} * a0_inv);

    // g = (1 + C)^{-(n+1)} modulo z^{n+1} as sum_j binom(-(n+1), j) C^j
    std::vector<std::optional<Laurent>> g(static_cast<std::size_t>(n + 1));
    std::vector<std::optional<Laurent>> cpow(static_cast<std::size_t>(n + 1));
    cpow[0] = one(big);
    g[0] = one(big);
    for (int j = 1; j <= n; ++j) {
        std::vector<std::optional<Laurent>> next(static_cast<std::size_t>(n + 1));
        for (int d = 0; d <= n; ++d) {
            if (!cpow[static_cast<std::size_t>(d)])
                continue;
            for (int i = 1; d + i <= n; ++i) {
                auto term = *cpow[static_cast<std::size_t>(d)] * c[static_cast<std::size_t>(i)];
                auto& slot = next[static_cast<std::size_t>(d + i)];
                slot = slot ? *slot + term : term;
            }
        }
        cpow = std::move(next);
        const Rational coeff(binomial(-(n + 1L), j));
        for (int d = 0; d <= n; ++d) {
            if (!cpow[static_cast<std::size_t>(d)])
                continue;
            auto term = scaled(*cpow[static_cast<std::size_t>(d)], coeff);
            auto& slot = g[static_cast<std::size_t>(d)];
            slot = slot ? *slot + term : term;
        }
    }

    // a_0^{2n+1} a_0^{-(n+1)} = a_0^n
    Laurent a0n = one(big);
    for (int r = 0; r < n; ++r)
        a0n = a0n * Laurent{0, a[0]};
    std::optional<Laurent> total;
    for (int k = 0; k <= n; ++k) {
        const auto cp = cp_image(ctx, n - k);
        if (cp.is_zero() || !g[static_cast<std::size_t>(k)])
            continue;
        auto term = a0n * *g[static_cast<std::size_t>(k)];
        term.series = scale(term.series, to_rational_polynomial(cp));
        total = total ? *total + term : term;
    }
    if (!total)
        return IntegerSeries(p, Basis::V, ctx.truncation() + 1);
    auto out = to_ordinary(*total);
    out.declare_weight(-static_cast<long long>(n) * (p - 2));
    return out;
}

IntegerSeries mc_2p2_explicit(const FglContext& ctx, const PowerOpData& data)
{
    const int p = ctx.prime();
    check_available(data, 2 * (p - 1));
    const auto& a0 = data.a[0];
    const auto& ap = data.a[static_cast<std::size_t>(p - 1)];
    const auto& a2p = data.a[static_cast<std::size_t>(2 * (p - 1))];
    const auto v1 = IntegerPolynomial::generator(1);

    IntegerSeries inner = scale(a0 * ap, -v1) - a0 * a2p + scale(ap * ap, Integer(p));
    IntegerSeries out = scale(inner, Integer(2 * p - 1));
    if (2 * p - 4 > 0)
        out = power(a0, 2 * p - 4) * out;
    out.declare_weight(-2L * (p - 1) * (p - 2));
    return out;
}

} // namespace bpcalc
