#pragma once

#include "bpcalc/fgl.hpp"
#include "bpcalc/reduction.hpp"

#include <vector>

namespace bpcalc {

// P(x) = prod_{i=0}^{p-1} ([i]xi +_F x) = sum_i a_i(xi) x^{i+1} in the V basis.
struct PowerOpData {
    int prime = 0;
    int truncation = 0;
    // Series in (xi, x) of weight -p, known modulo (xi, x)^{k+2} and through x^{max_index+1}.
    IntegerSeries product_series{2, Basis::V, 0};
    // a[i] has weight i + 1 - p and is known modulo xi^{k+1-i}.
    std::vector<IntegerSeries> a;
};

// Largest a_i worth producing at truncation k.
inline int default_max_index(int truncation) { return truncation; }

// Computes P(x) with the a_i for i <= min(max_index, k). The product is formed in
// the L basis, where the exponential has integer coefficients, and moved to the V
// basis at the end.
PowerOpData power_op_series(const FglContext& ctx, int max_index);

// Reference construction of P(x) as a plain product of formal sums [i]xi +_F x,
// evaluated left to right. Rational L-basis, slow; used to cross-check.
RationalSeries power_op_series_direct(const FglContext& ctx, int max_index);

// Splits a product series into its a_i and checks a_0 = (p-1)! xi^{p-1} mod xi^p.
std::vector<IntegerSeries> extract_a(const FglContext& ctx, const IntegerSeries& product_series);

std::vector<ReducedSeries> reduce_a_mod_p_series(const PowerOpData& data, PSeriesReducer& reducer);

} // namespace bpcalc
