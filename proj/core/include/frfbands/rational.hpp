#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "frfbands/errors.hpp"

namespace frfbands {

/// Exact nonnegative rational with 64-bit numerator/denominator, kept in
/// lowest terms. Arithmetic checks for overflow through 128-bit
/// intermediates and throws rather than silently wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;

    /// Reciprocal; throws on zero.
    Rational inverse() const;

    std::string str() const;
};

/// gcd(a/b, c/d) = gcd(a·d', c·b') / lcm(b, d); the result divides both
/// arguments exactly, which is what makes a common period well defined.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Parses a nonnegative decimal literal ("0.05", "22", "1.35") into an exact
/// rational over a power of ten. Rejects anything else: the whole point is
/// to avoid taking gcds of binary floating-point approximations.
Rational parse_decimal(const std::string& text);

} // namespace frfbands
