#pragma once

#include "bpcalc/errors.hpp"
#include "bpcalc/parallel.hpp"
#include "bpcalc/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bpcalc {

// Power series in xi (and optionally x) over GradedPolynomial<S>, known modulo
// (xi, x)^validity. When x_cap is finite, coefficients of x^j for j > x_cap are
// unknown as well (the series is known modulo (xi, x)^validity + (x^{x_cap+1})).
//
// Weights follow weight(v_m) = p^m - 1 and weight(xi) = weight(x) = -1: a series of
// declared weight w has coefficient weight w + i + j at xi^i x^j.
template <class S>
class TruncatedSeries {
public:
    using Scalar = S;
    using Polynomial = GradedPolynomial<S>;
    static constexpr int kUnbounded = std::numeric_limits<int>::max();

    TruncatedSeries(int prime, Basis basis, int validity, int x_cap = kUnbounded)
        : prime_(prime), basis_(basis), validity_(std::max(validity, 0)), x_cap_(x_cap)
    {
    }

    // The series xi known modulo xi^validity.
    static TruncatedSeries xi(int prime, Basis basis, int validity)
    {
        TruncatedSeries out(prime, basis, validity);
        if (validity > 1)
            out.set_coefficient(1, 0, Polynomial::constant(S(1), basis));
        out.declare_weight(-1);
        return out;
    }

    static TruncatedSeries x(int prime, Basis basis, int validity, int x_cap = kUnbounded)
    {
        TruncatedSeries out(prime, basis, validity, x_cap);
        if (validity > 1 && x_cap >= 1)
            out.set_coefficient(0, 1, Polynomial::constant(S(1), basis));
        out.declare_weight(-1);
        return out;
    }

    static TruncatedSeries constant(int prime, const Polynomial& c, int validity)
    {
        TruncatedSeries out(prime, c.basis(), validity);
        if (validity > 0)
            out.set_coefficient(0, 0, c);
        return out;
    }

    int prime() const { return prime_; }
    Basis basis() const { return basis_; }
    int validity() const { return validity_; }
    int x_cap() const { return x_cap_; }
    std::optional<long long> weight() const { return weight_; }
    void declare_weight(std::optional<long long> w) { weight_ = w; }

    bool known(int xi_exp, int x_exp) const
    {
        return xi_exp >= 0 && x_exp >= 0 && x_exp <= x_cap_
               && static_cast<long long>(xi_exp) + x_exp < validity_;
    }

    // Exact coefficient of xi^xi_exp x^x_exp; throws OutOfValidity outside the known range.
    const Polynomial& coefficient(int xi_exp, int x_exp = 0) const
    {
        if (!known(xi_exp, x_exp))
            throw OutOfValidity("coefficient (" + std::to_string(xi_exp) + ", " + std::to_string(x_exp)
                                + ") outside validity " + std::to_string(validity_));
        return stored(xi_exp, x_exp);
    }

    void set_coefficient(int xi_exp, int x_exp, Polynomial p)
    {
        coefficient_ref(xi_exp, x_exp) = std::move(p);
    }

    Polynomial& coefficient_ref(int xi_exp, int x_exp)
    {
        if (!known(xi_exp, x_exp))
            throw OutOfValidity("cannot store coefficient (" + std::to_string(xi_exp) + ", "
                                + std::to_string(x_exp) + ") beyond validity " + std::to_string(validity_));
        if (rows_.size() <= static_cast<std::size_t>(x_exp))
            rows_.resize(static_cast<std::size_t>(x_exp) + 1);
        auto& row = rows_[static_cast<std::size_t>(x_exp)];
        if (row.empty())
            row.assign(static_cast<std::size_t>(validity_ - x_exp), Polynomial(basis_));
        return row[static_cast<std::size_t>(xi_exp)];
    }

    // Stored coefficient or zero; no range check. Callers must stay inside known().
    const Polynomial& stored(int xi_exp, int x_exp) const
    {
        if (static_cast<std::size_t>(x_exp) < rows_.size()) {
            const auto& row = rows_[static_cast<std::size_t>(x_exp)];
            if (static_cast<std::size_t>(xi_exp) < row.size())
                return row[static_cast<std::size_t>(xi_exp)];
        }
        return zero_polynomial();
    }

    int row_count() const { return static_cast<int>(rows_.size()); }
    std::span<const Polynomial> row(int x_exp) const
    {
        if (static_cast<std::size_t>(x_exp) >= rows_.size())
            return {};
        return rows_[static_cast<std::size_t>(x_exp)];
    }

    bool is_zero() const
    {
        for (const auto& row : rows_) {
            for (const auto& c : row) {
                if (!c.is_zero())
                    return false;
            }
        }
        return true;
    }

    bool is_univariate() const
    {
        for (std::size_t j = 1; j < rows_.size(); ++j) {
            for (const auto& c : rows_[j]) {
                if (!c.is_zero())
                    return false;
            }
        }
        return true;
    }

    // Lowest total degree of a nonzero coefficient; the validity when none is known.
    int valuation() const
    {
        int best = validity_;
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            const auto& row = rows_[j];
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (!row[i].is_zero()) {
                    best = std::min(best, static_cast<int>(i + j));
                    break;
                }
            }
        }
        return best;
    }

    // Calls f(xi_exp, x_exp, coefficient) for each nonzero coefficient, x-major order.
    template <class F>
    void for_each_nonzero(F&& f) const
    {
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            const auto& row = rows_[j];
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (!row[i].is_zero())
                    f(static_cast<int>(i), static_cast<int>(j), row[i]);
            }
        }
    }

    // Same series known to a lower validity (never raises it).
    TruncatedSeries truncated(int validity) const
    {
        TruncatedSeries out(prime_, basis_, std::min(validity, validity_), x_cap_);
        out.weight_ = weight_;
        for_each_nonzero([&](int i, int j, const Polynomial& c) {
            if (out.known(i, j))
                out.set_coefficient(i, j, c);
        });
        return out;
    }

    TruncatedSeries capped_x(int x_cap) const
    {
        TruncatedSeries out(prime_, basis_, validity_, std::min(x_cap, x_cap_));
        out.weight_ = weight_;
        for_each_nonzero([&](int i, int j, const Polynomial& c) {
            if (out.known(i, j))
                out.set_coefficient(i, j, c);
        });
        return out;
    }

    // Coefficient of x^x_exp as a series in xi alone.
    TruncatedSeries x_row(int x_exp) const
    {
        if (x_exp > x_cap_)
            throw OutOfValidity("x^" + std::to_string(x_exp) + " beyond the x cap");
        TruncatedSeries out(prime_, basis_, validity_ - x_exp);
        if (weight_)
            out.weight_ = *weight_ + x_exp;
        for (int i = 0; i < static_cast<int>(row(x_exp).size()); ++i) {
            if (!row(x_exp)[static_cast<std::size_t>(i)].is_zero())
                out.set_coefficient(i, 0, row(x_exp)[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    // True when every coefficient is homogeneous of the declared weight (vacuous if undeclared).
    bool weight_consistent() const
    {
        if (!weight_)
            return true;
        bool ok = true;
        for_each_nonzero([&](int i, int j, const Polynomial& c) {
            ok = ok && c.is_homogeneous_of(prime_, *weight_ + i + j);
        });
        return ok;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        if (a.prime_ != b.prime_ || a.validity_ != b.validity_ || a.x_cap_ != b.x_cap_)
            return false;
        return equal_within(a, b);
    }

    // Coefficient-wise equality on the jointly known range.
    friend bool equal_within(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        const int v = std::min(a.validity_, b.validity_);
        const int cap = std::min(a.x_cap_, b.x_cap_);
        const int rows = std::max(a.row_count(), b.row_count());
        for (int j = 0; j < rows && j <= cap && j < v; ++j) {
            for (int i = 0; i + j < v; ++i) {
                if (!(a.stored(i, j) == b.stored(i, j)))
                    return false;
            }
        }
        return true;
    }

private:
    static const Polynomial& zero_polynomial()
    {
        static const Polynomial zero;
        return zero;
    }

    int prime_;
    Basis basis_;
    int validity_;
    int x_cap_;
    std::optional<long long> weight_;
    std::vector<std::vector<Polynomial>> rows_;
};

using RationalSeries = TruncatedSeries<Rational>;
using IntegerSeries = TruncatedSeries<Integer>;

namespace detail {

template <class S>
void check_compatible(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b)
{
    if (a.prime() != b.prime())
        throw InvalidArgument("series over different primes");
    if (a.basis() != b.basis() && !a.is_zero() && !b.is_zero())
        throw BasisMismatch(std::string("series basis mismatch: ") + basis_letter(a.basis()) + " vs "
                            + basis_letter(b.basis()));
}

inline int clamp_validity(long long v)
{
    return static_cast<int>(std::min<long long>(v, std::numeric_limits<int>::max() / 4));
}

template <class S>
TruncatedSeries<S> add_impl(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b, bool negate)
{
    check_compatible(a, b);
    TruncatedSeries<S> out(a.prime(), a.is_zero() ? b.basis() : a.basis(), std::min(a.validity(), b.validity()),
                           std::min(a.x_cap(), b.x_cap()));
    if (a.weight() && b.weight() && *a.weight() == *b.weight())
        out.declare_weight(a.weight());
    else if (a.weight() && b.is_zero())
        out.declare_weight(a.weight());
    else if (b.weight() && a.is_zero())
        out.declare_weight(b.weight());
    a.for_each_nonzero([&](int i, int j, const auto& c) {
        if (out.known(i, j))
            out.coefficient_ref(i, j) += c;
    });
    b.for_each_nonzero([&](int i, int j, const auto& c) {
        if (out.known(i, j)) {
            if (negate)
                out.coefficient_ref(i, j) -= c;
            else
                out.coefficient_ref(i, j) += c;
        }
    });
    return out;
}

} // namespace detail

template <class S>
TruncatedSeries<S> operator+(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b)
{
    return detail::add_impl(a, b, false);
}

template <class S>
TruncatedSeries<S> operator-(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b)
{
    return detail::add_impl(a, b, true);
}

template <class S>
TruncatedSeries<S> operator-(const TruncatedSeries<S>& a)
{
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity(), a.x_cap());
    out.declare_weight(a.weight());
    a.for_each_nonzero([&](int i, int j, const auto& c) { out.set_coefficient(i, j, -c); });
    return out;
}

// Multiplication by a coefficient-ring element leaves the validity unchanged.
template <class S>
TruncatedSeries<S> scale(const TruncatedSeries<S>& a, const GradedPolynomial<S>& c)
{
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity(), a.x_cap());
    if (a.weight()) {
        if (c.is_zero())
            out.declare_weight(a.weight());
        else if (auto w = c.weight(a.prime()))
            out.declare_weight(*a.weight() + *w);
    }
    if (c.is_zero())
        return out;
    a.for_each_nonzero([&](int i, int j, const auto& coef) { out.set_coefficient(i, j, coef * c); });
    return out;
}

template <class S>
TruncatedSeries<S> scale(const TruncatedSeries<S>& a, const S& c)
{
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity(), a.x_cap());
    out.declare_weight(a.weight());
    if (ScalarOps<S>::is_zero(c))
        return out;
    a.for_each_nonzero([&](int i, int j, const auto& coef) { out.set_coefficient(i, j, coef * c); });
    return out;
}

// Product coefficients below `validity`, computed without validity bookkeeping.
// The caller guarantees both factors determine the product to that order.
template <class S>
TruncatedSeries<S> multiply_to(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b, int validity)
{
    detail::check_compatible(a, b);
    const int cap = std::min(a.x_cap(), b.x_cap());
    TruncatedSeries<S> out(a.prime(), a.basis(), validity, cap);
    if (a.weight() && b.weight())
        out.declare_weight(*a.weight() + *b.weight());
    if (a.is_zero() || b.is_zero())
        return out;

    // Nonzero positions of a, per x row.
    std::vector<std::vector<int>> nz_a(static_cast<std::size_t>(a.row_count()));
    for (int j = 0; j < a.row_count(); ++j) {
        const auto r = a.row(j);
        for (int i = 0; i < static_cast<int>(r.size()); ++i) {
            if (!r[static_cast<std::size_t>(i)].is_zero())
                nz_a[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    const int max_row = std::min({cap, validity - 1, a.row_count() + b.row_count() - 2});
    std::vector<std::pair<int, int>> positions;
    for (int j = 0; j <= max_row; ++j) {
        for (int i = 0; i + j < validity; ++i)
            positions.emplace_back(i, j);
    }
    std::vector<GradedPolynomial<S>> results(positions.size(), GradedPolynomial<S>(a.basis()));
    parallel_for(positions.size(), [&](std::size_t idx) {
        const auto [i, j] = positions[idx];
        auto& acc = results[idx];
        const int ja_max = std::min(j, a.row_count() - 1);
        for (int ja = std::max(0, j - (b.row_count() - 1)); ja <= ja_max; ++ja) {
            const auto brow = b.row(j - ja);
            if (brow.empty())
                continue;
            const auto arow = a.row(ja);
            for (int ia : nz_a[static_cast<std::size_t>(ja)]) {
                if (ia > i)
                    break;
                const int ib = i - ia;
                if (ib >= static_cast<int>(brow.size()))
                    continue;
                const auto& cb = brow[static_cast<std::size_t>(ib)];
                if (!cb.is_zero())
                    add_product(acc, arow[static_cast<std::size_t>(ia)], cb);
            }
        }
    });
    for (std::size_t idx = 0; idx < positions.size(); ++idx) {
        if (!results[idx].is_zero())
            out.set_coefficient(positions[idx].first, positions[idx].second, std::move(results[idx]));
    }
    return out;
}

// validity(ab) = min(V_a + val(b), V_b + val(a)).
template <class S>
int product_validity(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b)
{
    return detail::clamp_validity(std::min(static_cast<long long>(a.validity()) + b.valuation(),
                                           static_cast<long long>(b.validity()) + a.valuation()));
}

template <class S>
TruncatedSeries<S> operator*(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b)
{
    return multiply_to(a, b, product_validity(a, b));
}

template <class S>
TruncatedSeries<S> power(const TruncatedSeries<S>& a, int n)
{
    if (n < 0)
        throw InvalidArgument("negative series power");
    if (n == 0) {
        auto one = TruncatedSeries<S>::constant(a.prime(), GradedPolynomial<S>::constant(S(1), a.basis()),
                                                a.validity());
        one.declare_weight(0);
        return one;
    }
    TruncatedSeries<S> out = a;
    for (int k = 1; k < n; ++k)
        out = out * a;
    return out;
}

// Multiplies by xi^xi_shift x^x_shift; the validity grows by the total shift.
template <class S>
TruncatedSeries<S> shift(const TruncatedSeries<S>& a, int xi_shift, int x_shift = 0)
{
    if (xi_shift < 0 || x_shift < 0)
        throw InvalidArgument("negative shift; use divide_by_xi");
    const int cap = a.x_cap() == TruncatedSeries<S>::kUnbounded ? a.x_cap() : a.x_cap() + x_shift;
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity() + xi_shift + x_shift, cap);
    if (a.weight())
        out.declare_weight(*a.weight() - xi_shift - x_shift);
    a.for_each_nonzero([&](int i, int j, const auto& c) { out.set_coefficient(i + xi_shift, j + x_shift, c); });
    return out;
}

// Exact division by xi^n; every coefficient below xi^n must vanish.
template <class S>
TruncatedSeries<S> divide_by_xi(const TruncatedSeries<S>& a, int n)
{
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity() - n, a.x_cap());
    if (a.weight())
        out.declare_weight(*a.weight() + n);
    a.for_each_nonzero([&](int i, int j, const auto& c) {
        if (i < n)
            throw InvalidArgument("series not divisible by xi^" + std::to_string(n));
        out.set_coefficient(i - n, j, c);
    });
    return out;
}

// A(B) for A a series in xi alone and B with zero constant term. With beta = val(B)
// and j0 the lowest positive exponent carried by A, the result is known modulo
// order min(V_A * beta, V_B + (j0 - 1) * beta).
template <class S>
TruncatedSeries<S> compose(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b)
{
    detail::check_compatible(a, b);
    if (!a.is_univariate())
        throw InvalidArgument("compose: outer series must be univariate in xi");
    if (b.validity() > 0 && !b.coefficient(0, 0).is_zero())
        throw InvalidArgument("compose: inner series has a nonzero constant term");
    const long long beta = std::max(1, b.valuation());
    int j0 = -1;
    for (int j = 1; j < a.validity(); ++j) {
        if (!a.stored(j, 0).is_zero()) {
            j0 = j;
            break;
        }
    }
    long long v = static_cast<long long>(a.validity()) * beta;
    if (j0 > 0)
        v = std::min(v, static_cast<long long>(b.validity()) + (j0 - 1) * beta);
    const int validity = detail::clamp_validity(v);

    TruncatedSeries<S> out(a.prime(), a.is_zero() ? b.basis() : a.basis(), validity, b.x_cap());
    if (a.weight() && b.weight() && *b.weight() == -1)
        out.declare_weight(a.weight());
    if (validity > 0 && a.validity() > 0 && !a.stored(0, 0).is_zero())
        out.set_coefficient(0, 0, a.stored(0, 0));
    if (j0 < 0)
        return out;

    TruncatedSeries<S> bpow = b.truncated(validity);
    for (int j = 1; j < a.validity() && static_cast<long long>(j) * beta < validity; ++j) {
        if (j > 1)
            bpow = multiply_to(bpow, b, validity);
        const auto& aj = a.stored(j, 0);
        if (aj.is_zero())
            continue;
        bpow.for_each_nonzero([&](int i, int k, const auto& c) { add_product(out.coefficient_ref(i, k), aj, c); });
    }
    return out;
}

// 1/A for A whose constant term is a nonzero scalar. Same validity as A.
template <class S>
TruncatedSeries<S> reciprocal(const TruncatedSeries<S>& a)
{
    if (a.validity() == 0)
        return TruncatedSeries<S>(a.prime(), a.basis(), 0, a.x_cap());
    const auto& c0 = a.coefficient(0, 0);
    if (c0.is_zero() || !c0.is_constant())
        throw NotInvertible("reciprocal: constant term is not a nonzero scalar");
    if constexpr (std::is_same_v<S, Integer>) {
        if (abs(c0.constant_term()) != 1)
            throw NotInvertible("reciprocal: constant term is not a unit of the integers");
    }
    const S inv_c0 = S(1) / c0.constant_term();
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity(), a.x_cap());
    if (a.weight())
        out.declare_weight(-*a.weight());
    const int v = a.validity();
    const int max_row = std::min(a.x_cap(), v - 1);
    // Degree by degree in total degree d = i + j.
    for (int d = 0; d < v; ++d) {
        for (int j = 0; j <= std::min(d, max_row); ++j) {
            const int i = d - j;
            GradedPolynomial<S> acc(a.basis());
            if (d == 0)
                acc = GradedPolynomial<S>::constant(S(1), a.basis());
            for (int jb = 0; jb <= j && jb < a.row_count(); ++jb) {
                const auto arow = a.row(jb);
                for (int ib = 0; ib <= i && ib < static_cast<int>(arow.size()); ++ib) {
                    if (ib == 0 && jb == 0)
                        continue;
                    const auto& ca = arow[static_cast<std::size_t>(ib)];
                    if (ca.is_zero())
                        continue;
                    const auto& r = out.stored(i - ib, j - jb);
                    if (!r.is_zero())
                        sub_product(acc, ca, r);
                }
            }
            if (!acc.is_zero())
                out.set_coefficient(i, j, acc * inv_c0);
        }
    }
    return out;
}

// Compositional inverse E of a univariate A = a_1 xi + a_2 xi^2 + ... with a_1 a
// nonzero scalar: A(E(xi)) = xi. Powers E^j are tracked online with the
// J.C.P. Miller recurrence, so only exponents carried by A cost anything.
inline RationalSeries revert(const RationalSeries& a)
{
    if (!a.is_univariate())
        throw InvalidArgument("revert: series must be univariate");
    const int v = a.validity();
    RationalSeries out(a.prime(), a.basis(), v);
    if (a.weight() && *a.weight() == -1)
        out.declare_weight(-1);
    if (v <= 1)
        return out;
    if (!a.coefficient(0, 0).is_zero())
        throw InvalidArgument("revert: nonzero constant term");
    const auto& a1 = a.coefficient(1, 0);
    if (a1.is_zero() || !a1.is_constant())
        throw NotInvertible("revert: linear coefficient is not a nonzero scalar");
    const Rational a1_inv = Rational(1) / a1.constant_term();
    const Basis basis = a.basis();

    // g[n] = coefficient of xi^{n+1} in E.
    std::vector<RationalPolynomial> g(static_cast<std::size_t>(v - 1), RationalPolynomial(basis));
    g[0] = RationalPolynomial::constant(a1_inv, basis);

    struct PowerTrack {
        int j;
        std::vector<RationalPolynomial> h; // coefficients of (E/xi)^j
    };
    std::vector<PowerTrack> tracks;
    for (int j = 2; j < v; ++j) {
        if (!a.stored(j, 0).is_zero())
            tracks.push_back({j, {RationalPolynomial::constant(mpq_class(1), basis)}});
    }
    for (auto& t : tracks) {
        Rational c = 1;
        for (int r = 0; r < t.j; ++r)
            c *= a1_inv;
        t.h[0] = RationalPolynomial::constant(c, basis);
    }
    // h_m = 1/(m g_0) sum_{i=1}^m ((j+1) i - m) g_i h_{m-i}
    auto extend = [&](PowerTrack& t, int m) {
        while (static_cast<int>(t.h.size()) <= m) {
            const int n = static_cast<int>(t.h.size());
            RationalPolynomial acc(basis);
            for (int i = 1; i <= n; ++i) {
                const auto& gi = g[static_cast<std::size_t>(i)];
                if (gi.is_zero())
                    continue;
                const long factor = static_cast<long>(t.j + 1) * i - n;
                if (factor == 0 || t.h[static_cast<std::size_t>(n - i)].is_zero())
                    continue;
                RationalPolynomial term = gi * t.h[static_cast<std::size_t>(n - i)];
                acc += term * Rational(factor);
            }
            t.h.push_back(acc * (a1.constant_term() / Rational(n)));
        }
    };
    for (int n = 1; n < v - 1; ++n) {
        // coefficient of xi^{n+1}: a_1 e_{n+1} + sum_j a_j [xi^{n+1}] E^j = 0
        RationalPolynomial acc(basis);
        for (auto& t : tracks) {
            const int m = n + 1 - t.j;
            if (m < 0)
                continue;
            extend(t, m);
            const auto& hm = t.h[static_cast<std::size_t>(m)];
            if (!hm.is_zero())
                add_product(acc, a.stored(t.j, 0), hm);
        }
        g[static_cast<std::size_t>(n)] = acc * (-a1_inv);
    }
    for (int n = 0; n < v - 1; ++n) {
        if (!g[static_cast<std::size_t>(n)].is_zero())
            out.set_coefficient(n + 1, 0, g[static_cast<std::size_t>(n)]);
    }
    return out;
}

template <class S, class F>
TruncatedSeries<S> map_coefficients(const TruncatedSeries<S>& a, F f)
{
    TruncatedSeries<S> out(a.prime(), a.basis(), a.validity(), a.x_cap());
    out.declare_weight(a.weight());
    a.for_each_nonzero([&](int i, int j, const auto& c) {
        auto mapped = f(c);
        if (!mapped.is_zero())
            out.set_coefficient(i, j, std::move(mapped));
    });
    return out;
}

// Removes every monomial involving one of the generators in `killed`.
template <class S>
TruncatedSeries<S> apply_ideal(const TruncatedSeries<S>& a, std::span<const int> killed)
{
    if (killed.empty())
        return a;
    return map_coefficients(a, [&](const GradedPolynomial<S>& c) { return kill_generators(c, killed); });
}

inline IntegerSeries to_integer_series(const RationalSeries& a)
{
    IntegerSeries out(a.prime(), a.basis(), a.validity(), a.x_cap());
    out.declare_weight(a.weight());
    a.for_each_nonzero([&](int i, int j, const auto& c) { out.set_coefficient(i, j, to_integer_polynomial(c)); });
    return out;
}

inline RationalSeries to_rational_series(const IntegerSeries& a)
{
    RationalSeries out(a.prime(), a.basis(), a.validity(), a.x_cap());
    out.declare_weight(a.weight());
    a.for_each_nonzero([&](int i, int j, const auto& c) { out.set_coefficient(i, j, to_rational_polynomial(c)); });
    return out;
}

inline bool is_integral(const RationalSeries& a)
{
    bool ok = true;
    a.for_each_nonzero([&](int, int, const auto& c) { ok = ok && is_integral(c); });
    return ok;
}

} // namespace bpcalc
