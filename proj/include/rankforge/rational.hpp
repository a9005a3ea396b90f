#ifndef RANKFORGE_RATIONAL_HPP
#define RANKFORGE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rankforge {

// Small exact rational for score arithmetic. Always normalized: den > 0,
// gcd(|num|, den) == 1. Intermediate products go through 128-bit integers;
// anything that would not fit back into 64 bits throws instead of wrapping.
class Rational {
  public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}

    static Rational of(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        return Rational(num, den, 0);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const i128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        const i128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        const i128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        const i128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Exact decimal rendering, no trailing zeros ("360", "50.5", "0.375").
    // Only denominators of the form 2^a * 5^b terminate; anything else falls
    // back to "num/den".
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        std::int64_t d = den_;
        int twos = 0, fives = 0;
        while (d % 2 == 0) { d /= 2; ++twos; }
        while (d % 5 == 0) { d /= 5; ++fives; }
        if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
        const int places = twos > fives ? twos : fives;
        i128 scaled = i128(num_ < 0 ? -num_ : num_);
        for (int i = twos; i < places; ++i) scaled *= 2;
        for (int i = fives; i < places; ++i) scaled *= 5;
        std::string digits;
        if (scaled == 0) digits = "0";
        while (scaled > 0) { digits.insert(digits.begin(), char('0' + int(scaled % 10))); scaled /= 10; }
        while (int(digits.size()) <= places) digits.insert(digits.begin(), '0');
        digits.insert(digits.end() - places, '.');
        while (digits.back() == '0') digits.pop_back();
        if (digits.back() == '.') digits.pop_back();
        return (num_ < 0 ? "-" : "") + digits;
    }

  private:
    using i128 = __int128;

    Rational(std::int64_t n, std::int64_t d, int) : num_(n), den_(d) {}

    static Rational from_i128(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 an = n < 0 ? -n : n;
        i128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        const i128 lim = i128(INT64_MAX);
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("rational arithmetic overflow");
        return Rational(std::int64_t(n), std::int64_t(d), 0);
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace rankforge

#endif
