#pragma once

#include "bpcalc/series.hpp"

#include <map>
#include <vector>

namespace bpcalc {

bool is_prime(long n);

// p-typical logarithm xi + sum_{p^m <= k} l_m xi^{p^m}, known modulo xi^{k+1}.
RationalSeries build_log(int prime, int truncation);

// Data of the Brown-Peterson formal group law at one prime and truncation order.
// Immutable after construction.
class FglContext {
public:
    FglContext(int prime, int truncation);

    int prime() const { return prime_; }
    int truncation() const { return truncation_; }
    // Number of generators m >= 1 with p^m - 1 <= truncation.
    int generator_count() const { return static_cast<int>(hazewinkel_.size()) - 1; }

    const RationalSeries& log() const { return log_; }
    const RationalSeries& exp() const { return exp_; }

    // l_m written in the Hazewinkel generators; m = 0 gives 1.
    const RationalPolynomial& hazewinkel_l(int m) const;

private:
    int prime_;
    int truncation_;
    RationalSeries log_;
    RationalSeries exp_;
    std::vector<RationalPolynomial> hazewinkel_;
};

// Rewrites L-basis polynomials in the V basis. Caches powers of l_m, so one
// instance should not be shared between threads.
class HazewinkelSubstitution {
public:
    explicit HazewinkelSubstitution(const FglContext& ctx) : ctx_(ctx) {}

    RationalPolynomial operator()(const RationalPolynomial& l_poly);
    // Integral image of an integer L-basis polynomial; throws IntegralityError otherwise.
    IntegerPolynomial integral(const IntegerPolynomial& l_poly);

private:
    const RationalPolynomial& l_power(int m, unsigned e);
    const RationalPolynomial& monomial_image(const Monomial& m);

    const FglContext& ctx_;
    std::map<std::pair<int, unsigned>, RationalPolynomial> powers_;
    std::map<Monomial, RationalPolynomial> monomials_;
};

// Compositional inverse of the logarithm.
RationalSeries build_exp(const FglContext& ctx);

// exp(log S + log T).
RationalSeries formal_sum(const FglContext& ctx, const RationalSeries& s, const RationalSeries& t);

// [n]xi = exp(n log xi), known modulo xi^{k+1}.
RationalSeries n_series(const FglContext& ctx, int n);

// <p>xi = [p]xi / xi with constant term p, known modulo xi^{k+1}. In the V basis
// every coefficient is checked to be integral.
RationalSeries reduced_p_series(const FglContext& ctx, Basis basis);

// Same series in the V basis with integer coefficients, known modulo xi^validity.
IntegerSeries reduced_p_series_integral(int prime, int validity);

// Replaces every l_m by its V-basis expression. Weight is preserved.
RationalSeries hazewinkel_substitute(const FglContext& ctx, const RationalSeries& l_series);
IntegerSeries hazewinkel_substitute(const FglContext& ctx, const IntegerSeries& l_series);

} // namespace bpcalc
