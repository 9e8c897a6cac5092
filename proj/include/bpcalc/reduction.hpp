#pragma once

#include "bpcalc/series.hpp"

#include <optional>

namespace bpcalc {

// Representative modulo <p>xi. When normal, every integer coefficient of every
// coefficient polynomial lies in {0, ..., p-1}.
struct ReducedSeries {
    IntegerSeries series{2, Basis::V, 0};
    bool normal = false;
};

struct DivisionResult {
    IntegerSeries quotient;
    ReducedSeries remainder;
};

// Hands out the V-basis reduced p-series to any requested validity, recomputing
// only when a longer one is asked for.
class PSeriesReducer {
public:
    explicit PSeriesReducer(int prime);
    PSeriesReducer(int prime, IntegerSeries seed);

    int prime() const { return prime_; }
    const IntegerSeries& p_series(int validity);

private:
    int prime_;
    std::optional<IntegerSeries> cached_;
};

// g = quotient * <p>xi + remainder with the remainder normal. Both are known
// modulo xi^validity(g) provided <p>xi is available that far, which the reducer
// guarantees. g must be a univariate V-basis series.
DivisionResult divide(const IntegerSeries& g, PSeriesReducer& reducer);
DivisionResult divide(const IntegerSeries& g, const IntegerSeries& p_series);

ReducedSeries canonical_rep(const IntegerSeries& g, PSeriesReducer& reducer);

// Rational input must be integral.
ReducedSeries canonical_rep(const RationalSeries& g, PSeriesReducer& reducer);

struct Certificate {
    int xi_exponent;
    IntegerPolynomial lead;
};

// Lowest nonzero coefficient of a normal series, or nullopt when the series is
// zero through its validity (which proves nothing).
std::optional<Certificate> nonvanishing_certificate(const ReducedSeries& s);

// True when g is divisible by [p]xi = xi <p>xi within validity.
bool divisible_by_p_series(const IntegerSeries& g, PSeriesReducer& reducer);

} // namespace bpcalc
