#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace bpcalc {

// Product v_1^{e_1} v_2^{e_2} ... (or l_1^{e_1} ...) over at most kMaxGenerators
// generators. The empty product is the unit monomial.
class Monomial {
public:
    static constexpr int kMaxGenerators = 8;

    constexpr Monomial() = default;

    // Generator index m is 1-based.
    static Monomial generator(int m, unsigned exponent = 1);

    unsigned exponent(int m) const { return exps_[static_cast<std::size_t>(m - 1)]; }
    void set_exponent(int m, unsigned exponent);

    bool is_unit() const;
    // Highest generator index with a positive exponent, 0 for the unit.
    int max_generator() const;
    unsigned total_degree() const;

    // sum_m e_m (p^m - 1)
    long long weight(int prime) const;

    Monomial& operator*=(const Monomial& other);
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

    bool divides(const Monomial& other) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    // Lexicographic with the highest generator most significant, smaller exponent
    // first. On homogeneous polynomials this lists v_1^9 < v_1^6 v_2 < v_2^3 < v_1^2 v_3.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        for (int i = kMaxGenerators - 1; i >= 0; --i) {
            if (a.exps_[i] != b.exps_[i])
                return a.exps_[i] <=> b.exps_[i];
        }
        return std::strong_ordering::equal;
    }

private:
    std::array<std::uint16_t, kMaxGenerators> exps_{};
};

} // namespace bpcalc
