#include "bpcalc/monomial.hpp"

#include "bpcalc/errors.hpp"

#include <limits>
#include <string>

namespace bpcalc {

namespace {

void check_index(int m)
{
    if (m < 1 || m > Monomial::kMaxGenerators)
        throw HorizonExceeded("generator index " + std::to_string(m) + " outside 1.."
                              + std::to_string(Monomial::kMaxGenerators));
}

} // namespace

Monomial Monomial::generator(int m, unsigned exponent)
{
    Monomial out;
    out.set_exponent(m, exponent);
    return out;
}

void Monomial::set_exponent(int m, unsigned exponent)
{
    check_index(m);
    if (exponent > std::numeric_limits<std::uint16_t>::max())
        throw InvalidArgument("monomial exponent overflow");
    exps_[static_cast<std::size_t>(m - 1)] = static_cast<std::uint16_t>(exponent);
}

bool Monomial::is_unit() const
{
    for (auto e : exps_) {
        if (e != 0)
            return false;
    }
    return true;
}

int Monomial::max_generator() const
{
    for (int i = kMaxGenerators - 1; i >= 0; --i) {
        if (exps_[i] != 0)
            return i + 1;
    }
    return 0;
}

unsigned Monomial::total_degree() const
{
    unsigned total = 0;
    for (auto e : exps_)
        total += e;
    return total;
}

long long Monomial::weight(int prime) const
{
    long long total = 0;
    long long power = 1;
    for (int i = 0; i < kMaxGenerators; ++i) {
        power *= prime;
        if (exps_[i] != 0)
            total += static_cast<long long>(exps_[i]) * (power - 1);
    }
    return total;
}

Monomial& Monomial::operator*=(const Monomial& other)
{
    for (int i = 0; i < kMaxGenerators; ++i) {
        const unsigned sum = unsigned(exps_[i]) + other.exps_[i];
        if (sum > std::numeric_limits<std::uint16_t>::max())
            throw InvalidArgument("monomial exponent overflow");
        exps_[i] = static_cast<std::uint16_t>(sum);
    }
    return *this;
}

bool Monomial::divides(const Monomial& other) const
{
    for (int i = 0; i < kMaxGenerators; ++i) {
        if (exps_[i] > other.exps_[i])
            return false;
    }
    return true;
}

} // namespace bpcalc
