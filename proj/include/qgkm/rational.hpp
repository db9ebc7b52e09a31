#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qgkm {

using Int = boost::multiprecision::cpp_int;

// Reduced fraction, denominator > 0.
struct Rational {
    Int num{0};
    Int den{1};

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(Int n) : num(std::move(n)), den(1) {}
    Rational(Int n, Int d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        Int g = boost::multiprecision::gcd(num < 0 ? Int(-num) : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_zero() const { return num == 0; }
    int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }

    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return Rational(num * o.den, den * o.num);
    }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    Rational abs() const { return num < 0 ? -*this : *this; }

    std::string str() const {
        std::string s = num.str();
        if (den != 1) s += "/" + den.str();
        return s;
    }
};

inline Rational operator*(long long a, const Rational& r) { return Rational(a) * r; }

} // namespace qgkm
