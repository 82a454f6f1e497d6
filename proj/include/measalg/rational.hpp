#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision rational numbers.
 *
 * Thin value type over GMP's mpq_class. Values are always kept in lowest
 * terms with a positive denominator, and zero is uniquely 0/1.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace measalg {

class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}                       // NOLINT(implicit)
    Rational(int n) : q_(n) {}                        // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p" or "p/q" (optional sign on p). Throws ParseError.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    long double to_long_double() const;

    /// Fractional part in [0, 1).
    Rational frac() const;
    mpz_class floor() const;

    /// "p" for integers, "p/q" otherwise.
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

mpz_class lcm(const mpz_class& a, const mpz_class& b);

/// Converts to int64, throwing IntegerOverflow when out of range.
std::int64_t to_int64(const mpz_class& z);

}  // namespace measalg
