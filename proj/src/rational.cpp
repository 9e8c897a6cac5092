#include "bpcalc/rational.hpp"

#include "bpcalc/errors.hpp"

#include <cctype>

namespace bpcalc {

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+'))
        start = 1;
    if (start == text.size())
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer to_integer(const Rational& value)
{
    if (!is_integer(value))
        throw IntegralityError("expected an integer, got " + to_string(value));
    return value.get_num();
}

FloorDivMod floor_divmod(const Integer& value, unsigned long divisor)
{
    FloorDivMod out;
    mpz_fdiv_qr_ui(out.quotient.get_mpz_t(), out.remainder.get_mpz_t(), value.get_mpz_t(), divisor);
    return out;
}

Integer binomial(long n, long k)
{
    if (k < 0)
        return 0;
    if (n >= 0) {
        if (k > n)
            return 0;
        Integer out;
        mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return out;
    }
    // C(n, k) for negative n: (-1)^k C(k - n - 1, k)
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(k - n - 1), static_cast<unsigned long>(k));
    return (k % 2 == 0) ? out : Integer(-out);
}

Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

} // namespace bpcalc
