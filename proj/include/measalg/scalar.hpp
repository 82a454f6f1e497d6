#pragma once

/**
 * @file scalar.hpp
 * @brief Complex weights that stay exact while they can.
 *
 * A Scalar is either an exact element of a cyclotomic field or a double
 * precision complex number. Arithmetic between exact values stays exact as
 * long as the combined field order is at most Cyclotomic::kMaxOrder;
 * otherwise, and whenever a numeric value is involved, the result is numeric.
 */

#include "measalg/angle.hpp"
#include "measalg/cyclotomic.hpp"

#include <complex>
#include <ostream>
#include <string>
#include <variant>

namespace measalg {

using Complex = std::complex<double>;

class Scalar {
public:
    Scalar() = default;
    Scalar(int n) : value_(Cyclotomic(Rational(n))) {}            // NOLINT(implicit)
    Scalar(const Rational& r) : value_(Cyclotomic(r)) {}          // NOLINT(implicit)
    Scalar(const Cyclotomic& c) : value_(c) {}                    // NOLINT(implicit)
    Scalar(Complex z) : value_(z) {}                              // NOLINT(implicit)
    Scalar(double x) : value_(Complex(x, 0.0)) {}                 // NOLINT(implicit)

    static Scalar gaussian(const Rational& re, const Rational& im) { return Cyclotomic::gaussian(re, im); }
    /// exp(2πi·n·a), exact for torsion angles of small enough order.
    static Scalar unimodular(const Angle& a, std::int64_t n);

    bool is_exact() const { return std::holds_alternative<Cyclotomic>(value_); }
    const Cyclotomic& exact() const { return std::get<Cyclotomic>(value_); }
    Complex numeric() const;

    /// Exact zero (an exact element equal to 0, or the numeric value 0+0i).
    bool is_zero() const;
    double abs() const { return std::abs(numeric()); }

    Scalar conj() const;
    /// Throws DomainViolation on zero.
    Scalar inverse() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Exact vs exact compares field elements, numeric vs numeric compares
    /// bit patterns, mixed pairs compare the double values.
    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    std::variant<Cyclotomic, Complex> value_;
};

/// base^exponent by repeated squaring; negative exponents invert first.
Scalar power(const Scalar& base, int exponent);

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace measalg
