#include "trajmine/rational.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace trajmine {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error(std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::operator+(const Rational& o) const {
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    // reduce in 128 bits before narrowing
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return Rational(checked_narrow(n / a, "add"), checked_narrow(d / a, "add"));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    i128 n = i128(num_ / (g1 ? g1 : 1)) * (o.num_ / (g2 ? g2 : 1));
    i128 d = i128(den_ / (g2 ? g2 : 1)) * (o.den_ / (g1 ? g1 : 1));
    return Rational(checked_narrow(n, "mul"), checked_narrow(d, "mul"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_fraction_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return to_fraction_string();
}

Rational Rational::from_fraction_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
        throw std::invalid_argument("bad fraction literal: " + s);
    std::size_t pos1 = 0, pos2 = 0;
    std::int64_t n = std::stoll(s.substr(0, slash), &pos1);
    std::int64_t d = std::stoll(s.substr(slash + 1), &pos2);
    if (pos1 != slash || pos2 != s.size() - slash - 1)
        throw std::invalid_argument("bad fraction literal: " + s);
    return Rational(n, d);
}

Rational Rational::from_decimal_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal literal");
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    i128 mant = 0;
    i128 den = 1;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad decimal literal: " + s);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
            mant = mant * 10 + (c - '0');
            if (seen_dot) den *= 10;
            if (mant > i128(INT64_MAX) || den > i128(INT64_MAX))
                throw std::overflow_error("decimal literal out of range: " + s);
        } else {
            throw std::invalid_argument("bad decimal literal: " + s);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + s);
    if (neg) mant = -mant;
    return Rational(checked_narrow(mant, "decimal"), checked_narrow(den, "decimal"));
}

Rational Rational::parse(const std::string& s) {
    if (s.find('/') != std::string::npos) return from_fraction_string(s);
    return from_decimal_string(s);
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite double");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(v, &exp); // v = m * 2^exp, 0.5 <= |m| < 1
    // 53 doublings make the mantissa integral
    for (int k = 0; k < 53 && m != std::floor(m); ++k) {
        m *= 2.0;
        --exp;
    }
    i128 num = static_cast<std::int64_t>(m);
    i128 den = 1;
    while (exp > 0) {
        num *= 2;
        --exp;
        if (num > i128(INT64_MAX) || num < i128(INT64_MIN))
            throw std::overflow_error("double out of rational range");
    }
    while (exp < 0) {
        den *= 2;
        ++exp;
        if (den > i128(INT64_MAX)) throw std::overflow_error("double out of rational range");
    }
    return Rational(checked_narrow(num, "from_double"), checked_narrow(den, "from_double"));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

} // namespace trajmine
