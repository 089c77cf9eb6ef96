#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace sqnl {

// Exact rational on int64 with canonical form: gcd(num, den) == 1, den > 0.
// All comparisons and arithmetic are exact; intermediates widen to 128 bits
// so any value whose reduced form fits in int64 is handled without overflow.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw domain_error("Rational: zero denominator");
        reduce_from(n, d);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    // floor(num/den); exact for negatives (floor(-1/8) == -1).
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    // nearest integer, halves away from zero
    std::int64_t round_half_away() const {
        if (num_ >= 0) return (*this + Rational(1, 2)).floor();
        return -(((-*this) + Rational(1, 2)).floor());
    }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw domain_error("Rational: division by zero");
        return from_wide(static_cast<__int128>(a.num_) * b.den_,
                         static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    static Rational from_wide(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = static_cast<__int128>(INT64_MIN);
        constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw invariant_error("Rational: reduced value exceeds 64-bit range");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void reduce_from(std::int64_t n, std::int64_t d) {
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace sqnl
