#pragma once

#include "bpcalc/errors.hpp"
#include "bpcalc/monomial.hpp"
#include "bpcalc/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bpcalc {

// Which generating set the monomials refer to: the Hazewinkel generators v_m or
// the rational logarithm coefficients l_m.
enum class Basis { V, L };

inline char basis_letter(Basis b) { return b == Basis::V ? 'v' : 'l'; }

// Sparse polynomial in the generators of one basis with scalar coefficients S
// (Integer or Rational). Terms are kept sorted by the monomial order with no zero
// coefficients. The zero polynomial carries a basis tag but is compatible with
// either basis in arithmetic.
template <class S>
class GradedPolynomial {
public:
    using Scalar = S;

    struct Term {
        Monomial monomial;
        S coefficient;

        friend bool operator==(const Term&, const Term&) = default;
    };

    explicit GradedPolynomial(Basis basis = Basis::V) : basis_(basis) {}

    static GradedPolynomial constant(const S& c, Basis basis = Basis::V)
    {
        return monomial(Monomial{}, c, basis);
    }

    static GradedPolynomial monomial(const Monomial& m, const S& c, Basis basis = Basis::V)
    {
        GradedPolynomial out(basis);
        if (!ScalarOps<S>::is_zero(c))
            out.terms_.push_back({m, c});
        return out;
    }

    static GradedPolynomial generator(int m, Basis basis = Basis::V)
    {
        return monomial(Monomial::generator(m), S(1), basis);
    }

    // Accepts terms in any order with repeats; combines and drops zeros.
    static GradedPolynomial from_terms(std::vector<Term> terms, Basis basis)
    {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
        GradedPolynomial out(basis);
        for (auto& t : terms) {
            if (!out.terms_.empty() && out.terms_.back().monomial == t.monomial)
                out.terms_.back().coefficient += t.coefficient;
            else
                out.terms_.push_back(std::move(t));
        }
        out.drop_zeros();
        return out;
    }

    Basis basis() const { return basis_; }
    void set_basis(Basis b) { basis_ = b; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::span<const Term> terms() const { return terms_; }

    S coefficient(const Monomial& m) const
    {
        auto it = find(m);
        return it != terms_.end() && it->monomial == m ? it->coefficient : S(0);
    }

    S constant_term() const { return coefficient(Monomial{}); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_unit()); }

    int max_generator() const
    {
        int out = 0;
        for (const auto& t : terms_)
            out = std::max(out, t.monomial.max_generator());
        return out;
    }

    // Weight shared by all terms, or nullopt when zero or inhomogeneous.
    std::optional<long long> weight(int prime) const
    {
        if (terms_.empty())
            return std::nullopt;
        const long long w = terms_.front().monomial.weight(prime);
        for (const auto& t : terms_) {
            if (t.monomial.weight(prime) != w)
                return std::nullopt;
        }
        return w;
    }

    // The zero polynomial is homogeneous of every weight.
    bool is_homogeneous_of(int prime, long long w) const
    {
        for (const auto& t : terms_) {
            if (t.monomial.weight(prime) != w)
                return false;
        }
        return true;
    }

    bool is_homogeneous(int prime) const { return terms_.empty() || weight(prime).has_value(); }

    void add_term(const Monomial& m, const S& c)
    {
        if (ScalarOps<S>::is_zero(c))
            return;
        auto it = find(m);
        if (it != terms_.end() && it->monomial == m) {
            it->coefficient += c;
            if (ScalarOps<S>::is_zero(it->coefficient))
                terms_.erase(it);
        } else {
            terms_.insert(it, Term{m, c});
        }
    }

    GradedPolynomial& operator+=(const GradedPolynomial& other)
    {
        merge(other, false);
        return *this;
    }

    GradedPolynomial& operator-=(const GradedPolynomial& other)
    {
        merge(other, true);
        return *this;
    }

    GradedPolynomial& operator*=(const S& c)
    {
        if (ScalarOps<S>::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_)
            t.coefficient *= c;
        return *this;
    }

    GradedPolynomial operator-() const
    {
        GradedPolynomial out = *this;
        for (auto& t : out.terms_)
            t.coefficient = -t.coefficient;
        return out;
    }

    friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
    friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
    friend GradedPolynomial operator*(GradedPolynomial a, const S& c) { return a *= c; }
    friend GradedPolynomial operator*(const S& c, GradedPolynomial a) { return a *= c; }

    friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b)
    {
        GradedPolynomial out(a.is_zero() ? b.basis_ : a.basis_);
        add_product(out, a, b);
        return out;
    }

    // acc += a * b without temporaries for the product coefficients.
    friend void add_product(GradedPolynomial& acc, const GradedPolynomial& a, const GradedPolynomial& b)
    {
        accumulate_product(acc, a, b, false);
    }

    friend void sub_product(GradedPolynomial& acc, const GradedPolynomial& a, const GradedPolynomial& b)
    {
        accumulate_product(acc, a, b, true);
    }

    // Keeps only the terms for which keep(monomial) holds.
    template <class Pred>
    GradedPolynomial filtered(Pred keep) const
    {
        GradedPolynomial out(basis_);
        for (const auto& t : terms_) {
            if (keep(t.monomial))
                out.terms_.push_back(t);
        }
        return out;
    }

    template <class T, class F>
    GradedPolynomial<T> map_scalars(F f) const
    {
        std::vector<typename GradedPolynomial<T>::Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_)
            out.push_back({t.monomial, f(t.coefficient)});
        return GradedPolynomial<T>::from_terms(std::move(out), basis_);
    }

    friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b)
    {
        if (a.is_zero() && b.is_zero())
            return true;
        return a.basis_ == b.basis_ && a.terms_ == b.terms_;
    }

private:
    using Iter = typename std::vector<Term>::iterator;
    using CIter = typename std::vector<Term>::const_iterator;

    CIter find(const Monomial& m) const
    {
        return std::lower_bound(terms_.begin(), terms_.end(), m,
                                [](const Term& t, const Monomial& key) { return t.monomial < key; });
    }
    Iter find(const Monomial& m)
    {
        return std::lower_bound(terms_.begin(), terms_.end(), m,
                                [](const Term& t, const Monomial& key) { return t.monomial < key; });
    }

    void check_basis(const GradedPolynomial& other)
    {
        if (other.terms_.empty())
            return;
        if (terms_.empty()) {
            basis_ = other.basis_;
            return;
        }
        if (basis_ != other.basis_)
            throw BasisMismatch(std::string("polynomial basis mismatch: ") + basis_letter(basis_) + " vs "
                                + basis_letter(other.basis_));
    }

    void merge(const GradedPolynomial& other, bool negate)
    {
        check_basis(other);
        if (other.terms_.empty())
            return;
        std::vector<Term> out;
        out.reserve(terms_.size() + other.terms_.size());
        auto i = terms_.begin();
        auto j = other.terms_.begin();
        while (i != terms_.end() || j != other.terms_.end()) {
            if (j == other.terms_.end() || (i != terms_.end() && i->monomial < j->monomial)) {
                out.push_back(std::move(*i++));
            } else if (i == terms_.end() || j->monomial < i->monomial) {
                out.push_back(negate ? Term{j->monomial, -j->coefficient} : *j);
                ++j;
            } else {
                if (negate)
                    i->coefficient -= j->coefficient;
                else
                    i->coefficient += j->coefficient;
                if (!ScalarOps<S>::is_zero(i->coefficient))
                    out.push_back(std::move(*i));
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
    }

    static void accumulate_product(GradedPolynomial& acc, const GradedPolynomial& a, const GradedPolynomial& b,
                                   bool negate)
    {
        if (a.terms_.empty() || b.terms_.empty())
            return;
        if (a.basis_ != b.basis_)
            throw BasisMismatch("polynomial basis mismatch in product");
        if (acc.terms_.empty())
            acc.basis_ = a.basis_;
        else if (acc.basis_ != a.basis_)
            throw BasisMismatch("polynomial basis mismatch in accumulation");
        bool cancelled = false;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                const Monomial m = ta.monomial * tb.monomial;
                auto it = acc.find(m);
                if (it != acc.terms_.end() && it->monomial == m) {
                    if (negate)
                        ScalarOps<S>::sub_product(it->coefficient, ta.coefficient, tb.coefficient);
                    else
                        ScalarOps<S>::add_product(it->coefficient, ta.coefficient, tb.coefficient);
                    cancelled = cancelled || ScalarOps<S>::is_zero(it->coefficient);
                } else {
                    S c = ta.coefficient * tb.coefficient;
                    if (negate)
                        c = -c;
                    acc.terms_.insert(it, Term{m, std::move(c)});
                }
            }
        }
        if (cancelled)
            acc.drop_zeros();
    }

    void drop_zeros()
    {
        std::erase_if(terms_, [](const Term& t) { return ScalarOps<S>::is_zero(t.coefficient); });
    }

    Basis basis_;
    std::vector<Term> terms_;
};

using RationalPolynomial = GradedPolynomial<Rational>;
using IntegerPolynomial = GradedPolynomial<Integer>;

// Throws IntegralityError if any coefficient has a denominator.
inline IntegerPolynomial to_integer_polynomial(const RationalPolynomial& p)
{
    return p.map_scalars<Integer>([](const Rational& c) { return to_integer(c); });
}

inline RationalPolynomial to_rational_polynomial(const IntegerPolynomial& p)
{
    return p.map_scalars<Rational>([](const Integer& c) { return Rational(c); });
}

inline bool is_integral(const RationalPolynomial& p)
{
    for (const auto& t : p.terms()) {
        if (!is_integer(t.coefficient))
            return false;
    }
    return true;
}

// Removes every monomial involving a generator in `killed` (1-based indices).
template <class S>
GradedPolynomial<S> kill_generators(const GradedPolynomial<S>& p, std::span<const int> killed)
{
    return p.filtered([&](const Monomial& m) {
        for (int g : killed) {
            if (g >= 1 && g <= Monomial::kMaxGenerators && m.exponent(g) != 0)
                return false;
        }
        return true;
    });
}

} // namespace bpcalc
