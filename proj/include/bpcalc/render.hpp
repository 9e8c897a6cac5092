#pragma once

#include "bpcalc/series.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace bpcalc {

using Json = nlohmann::json;

// "2 v1^3 v2 - 7 v2"; zero renders as "0".
template <class S>
std::string render_polynomial(const GradedPolynomial<S>& p);

// "2 - v1 xi + (-8 v1^3 - 7 v2) xi^3 + O(xi^14)", ascending in x then xi.
template <class S>
std::string render_series(const TruncatedSeries<S>& s);

RationalPolynomial parse_polynomial(std::string_view text, Basis basis);
RationalSeries parse_series(std::string_view text, int prime, Basis basis);

template <class S>
Json polynomial_to_json(const GradedPolynomial<S>& p);
RationalPolynomial polynomial_from_json(const Json& j, Basis basis);

// Wire format {"prime", "truncation", "validity", "basis", "terms": [{"xi", "x", "poly": [{"coef", "exps"}]}]},
// with "x_cap" and "weight" added when they are set.
template <class S>
Json series_to_json(const TruncatedSeries<S>& s, int truncation);
RationalSeries series_from_json(const Json& j);

} // namespace bpcalc
