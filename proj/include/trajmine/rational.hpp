#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace trajmine {

// Exact rational on int64. All weights, relevance scores and thresholds in
// this library are Rationals, so threshold comparisons and tie detection are
// exact; nothing ever goes through floating point on the way in.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);

    static Rational from_decimal_string(const std::string& s);
    static Rational from_fraction_string(const std::string& s); // "num/den"
    // Accepts "num/den", a decimal, or an integer literal.
    static Rational parse(const std::string& s);
    // Exact conversion; every finite double is a dyadic rational.
    static Rational from_double(double v);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    double to_double() const;
    std::string to_fraction_string() const; // always "num/den", canonical
    std::string to_string() const;          // integer when den == 1, else fraction

private:
    std::int64_t num_;
    std::int64_t den_; // > 0
    void normalize();
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace trajmine

template <>
struct std::hash<trajmine::Rational> {
    std::size_t operator()(const trajmine::Rational& r) const noexcept {
        return std::hash<std::int64_t>()(r.num()) * 1000003u ^ std::hash<std::int64_t>()(r.den());
    }
};
