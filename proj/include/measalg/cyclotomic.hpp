#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact elements of cyclotomic fields ℚ(ζ_N).
 *
 * An element is stored in the power basis 1, ζ, …, ζ^{φ(N)-1} of ℚ(ζ_N),
 * i.e. as the unique polynomial of degree < φ(N) congruent to it modulo the
 * cyclotomic polynomial Φ_N. The order N is kept odd or divisible by 4
 * (ℚ(ζ_{2m}) = ℚ(ζ_m) for odd m), and elements of ℚ collapse to N = 1.
 *
 * Binary operations lift both operands to ℚ(ζ_lcm). Orders above
 * kMaxOrder are refused; callers fall back to floating point.
 */

#include "measalg/rational.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace measalg {

class Cyclotomic {
public:
    static constexpr int kMaxOrder = 360;

    Cyclotomic() : coeffs_(1) {}
    explicit Cyclotomic(const Rational& r) : coeffs_{r.raw()} {}

    /// a + b·i.
    static Cyclotomic gaussian(const Rational& re, const Rational& im);
    /// exp(2πi·turns); nullopt when the order of the root exceeds kMaxOrder.
    static std::optional<Cyclotomic> root_of_unity(const Rational& turns);
    /// Element Σ c_k ζ_N^k from basis coefficients (reduced modulo Φ_N).
    static Cyclotomic from_power_coefficients(int order, const std::vector<Rational>& coeffs);
    /// Σ_k w_k ζ_N^{e_k} for rational weights, accumulated in one pass.
    static Cyclotomic root_sum(int order, const std::vector<std::pair<Rational, std::int64_t>>& terms);

    /// lcm of the two (normalized) orders, or nullopt above kMaxOrder.
    static std::optional<int> common_order(int a, int b);
    /// Order of the field generated by a root of unity of order q.
    static int normalized_order(long q);

    int order() const { return order_; }
    /// Power-basis coefficients (length φ(order)).
    std::vector<Rational> coefficients() const;

    bool is_zero() const;
    std::optional<Rational> as_rational() const;
    std::optional<std::pair<Rational, Rational>> as_gaussian() const;

    std::complex<double> to_complex() const;

    Cyclotomic conj() const;
    /// Multiplicative inverse; throws std::domain_error on zero.
    Cyclotomic inverse() const;
    /// Same element expressed in ℚ(ζ_order) (order must be a multiple of order()).
    Cyclotomic lifted(int order) const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

private:
    Cyclotomic(int order, std::vector<mpq_class> coeffs);
    void shrink();

    int order_ = 1;
    std::vector<mpq_class> coeffs_;
};

}  // namespace measalg
