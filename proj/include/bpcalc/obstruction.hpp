#pragma once

#include "bpcalc/powerop.hpp"
#include "bpcalc/reduction.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace bpcalc {

// (alpha_1, alpha_2, ...) with trailing zeros trimmed; alpha[i-1] is the exponent of a_i.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> alpha);

    const std::vector<int>& alpha() const { return alpha_; }
    int operator[](int i) const { return i >= 1 && i <= length() ? alpha_[static_cast<std::size_t>(i - 1)] : 0; }
    int length() const { return static_cast<int>(alpha_.size()); }
    // |alpha| = sum alpha_i
    int size() const;
    // |alpha|' = sum i alpha_i
    int weighted_size() const;

    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> alpha_;
};

// Coefficient of b^alpha in (1 + b_1 + b_2 + ...)^n, any integer n.
Integer mu(long n, const MultiIndex& alpha);

// r_*[CP^i] in the V basis: 1 for i = 0, p^m l_m for i = p^m - 1, zero otherwise.
IntegerPolynomial cp_image(const FglContext& ctx, int i);

struct IndexedTerm {
    MultiIndex alpha;
    int k; // |alpha|'
};

// Every alpha with |alpha|' <= n and n - |alpha|' in {0} u {p^m - 1}, ordered
// lexicographically on (k, alpha).
std::vector<IndexedTerm> enumerate_indices(int n, int prime);

// True unless n = p^m - 1.
bool is_obstruction_index(int n, int prime);

struct ObstructionResult {
    int n = 0;
    std::optional<IntegerSeries> raw;
    ReducedSeries reduced;
    std::optional<Certificate> certificate;
    // Set when the sparseness shortcut produced reduced = 0 without computing raw.
    bool shortcut = false;
};

struct McOptions {
    bool force_full = false;
    // Called with (done, total) as summands finish.
    std::function<void(std::size_t, std::size_t)> progress;
};

// Largest a_i index the multi-index sum for MC_n touches.
inline int mc_max_index(int n) { return n; }

// MC_n = sum over enumerate_indices of mu(-(n+1); alpha) r_*[CP^{n-k}] a_0^{n-|alpha|} a^alpha.
ObstructionResult mc(const FglContext& ctx, const PowerOpData& data, int n, PSeriesReducer& reducer,
                     const McOptions& options = {});

// Just the raw sum.
IntegerSeries mc_raw(const FglContext& ctx, const PowerOpData& data, int n, const McOptions& options = {});

// a_0^{2n+1} sum_k r_*[CP^{n-k}] (sum_i a_i z^i)^{-(n+1)}[z^k], evaluated with a_0
// inverted in Laurent series over the rationals.
IntegerSeries mc_via_inverse(const FglContext& ctx, const PowerOpData& data, int n);

// (2p-1) a_0^{2p-4} (-v_1 a_0 a_{p-1} - a_0 a_{2p-2} + p a_{p-1}^2). Only the a_i with
// p-1 | i appear, so this agrees with MC_{2(p-1)} modulo <p>xi, and exactly at p = 2.
IntegerSeries mc_2p2_explicit(const FglContext& ctx, const PowerOpData& data);

// Truncation needed for MC_n to be known modulo xi^target.
int truncation_for(int prime, int n, int target_validity);

} // namespace bpcalc
