#include "frfbands/frequency_grid.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace frfbands {

namespace {

using i128 = __int128;

std::int64_t checked_cast(i128 v, const char* ctx) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw ValidationError(std::string("rational overflow in ") + ctx);
    }
    return static_cast<std::int64_t>(v);
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    const i128 n = i128(num) * o.den + i128(o.num) * den;
    const i128 d = i128(den) * o.den;
    // reduce in 128 bits before narrowing
    i128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    const i128 g = a == 0 ? 1 : a;
    return Rational(checked_cast(n / g, "add"), checked_cast(d / g, "add"));
}

Rational Rational::operator*(const Rational& o) const {
    const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
    const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    const i128 n = i128(num / g1) * (o.num / g2);
    const i128 d = i128(den / g2) * (o.den / g1);
    return Rational(checked_cast(n, "mul"), checked_cast(d, "mul"));
}

Rational Rational::operator/(const Rational& o) const { return *this * o.inverse(); }

bool Rational::operator<(const Rational& o) const {
    return i128(num) * o.den < i128(o.num) * den;
}

Rational Rational::inverse() const {
    if (num == 0) throw ValidationError("inverse of zero rational");
    return Rational(den, num);
}

std::string Rational::str() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << '/' << den;
    return os.str();
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    // gcd(p/q, r/s) = gcd(p·s, r·q) / (q·s), reduced
    const i128 n = i128(a.num) * b.den;
    const i128 m = i128(b.num) * a.den;
    i128 x = n < 0 ? -n : n, y = m < 0 ? -m : m;
    while (y != 0) {
        const i128 t = x % y;
        x = y;
        y = t;
    }
    const i128 d = i128(a.den) * b.den;
    i128 g = x, dd = d;
    // reduce
    i128 p = g, q = dd;
    while (q != 0) {
        const i128 t = p % q;
        p = q;
        q = t;
    }
    if (p == 0) p = 1;
    return Rational(checked_cast(g / p, "gcd"), checked_cast(dd / p, "gcd"));
}

Rational parse_decimal(const std::string& text) {
    std::string s = text;
    // trim
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("empty decimal literal");
    s = s.substr(b, e - b + 1);

    std::int64_t intpart = 0, fracpart = 0, den = 1;
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        if (intpart > (INT64_MAX - 9) / 10) throw ValidationError("decimal literal too large: " + text);
        intpart = intpart * 10 + (s[i] - '0');
        any_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            if (den > (INT64_MAX / 10)) throw ValidationError("too many decimal digits: " + text);
            fracpart = fracpart * 10 + (s[i] - '0');
            den *= 10;
            any_digit = true;
        }
    }
    if (!any_digit || i != s.size()) {
        throw ValidationError("not a plain nonnegative decimal literal: '" + text + "'");
    }
    const i128 num = i128(intpart) * den + fracpart;
    return Rational(checked_cast(num, "parse"), den);
}

FrequencyGrid::FrequencyGrid(std::vector<Rational> freqs) : rationals_(std::move(freqs)) {
    if (rationals_.empty()) throw ValidationError("frequency grid must be nonempty");
    values_.reserve(rationals_.size());
    const Rational* prev = nullptr;
    for (const auto& f : rationals_) {
        if (f.num <= 0) throw ValidationError("frequencies must be positive, got " + f.str());
        if (prev && !(*prev < f)) {
            throw ValidationError("frequencies must be strictly increasing");
        }
        prev = &f;
        values_.push_back(f.value());
    }
}

FrequencyGrid FrequencyGrid::from_decimal_text(const std::vector<std::string>& decimals) {
    std::vector<Rational> freqs;
    freqs.reserve(decimals.size());
    for (const auto& d : decimals) freqs.push_back(parse_decimal(d));
    return FrequencyGrid(std::move(freqs));
}

FrequencyGrid FrequencyGrid::from_decimal_text(const std::string& comma_separated) {
    std::vector<std::string> parts;
    std::stringstream ss(comma_separated);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return from_decimal_text(parts);
}

FrequencyGrid FrequencyGrid::from_rationals(std::vector<Rational> freqs) {
    return FrequencyGrid(std::move(freqs));
}

FrequencyGrid FrequencyGrid::standard_posture_grid() {
    return from_decimal_text("0.05,0.15,0.3,0.4,0.55,0.7,0.9,1.1,1.35,1.75,2.2");
}

Rational FrequencyGrid::gcd() const {
    Rational g = rationals_.front();
    for (std::size_t i = 1; i < rationals_.size(); ++i) g = rational_gcd(g, rationals_[i]);
    return g;
}

} // namespace frfbands
