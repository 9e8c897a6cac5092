#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bpcalc {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& value);
// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& value);

// Accepts "a", "-a", "a/b"; the result is canonicalized.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& value);
// Throws IntegralityError when the denominator is not 1.
Integer to_integer(const Rational& value);

struct FloorDivMod {
    Integer quotient;
    Integer remainder; // in [0, divisor)
};

FloorDivMod floor_divmod(const Integer& value, unsigned long divisor);

Integer binomial(long n, long k);
Integer factorial(unsigned long n);

// Per-scalar hooks used by the generic polynomial kernel.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Integer> {
    static void add_product(Integer& acc, const Integer& a, const Integer& b)
    {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static void sub_product(Integer& acc, const Integer& a, const Integer& b)
    {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static bool is_zero(const Integer& a) { return mpz_sgn(a.get_mpz_t()) == 0; }
};

template <>
struct ScalarOps<Rational> {
    static void add_product(Rational& acc, const Rational& a, const Rational& b) { acc += a * b; }
    static void sub_product(Rational& acc, const Rational& a, const Rational& b) { acc -= a * b; }
    static bool is_zero(const Rational& a) { return mpq_sgn(a.get_mpq_t()) == 0; }
};

} // namespace bpcalc
