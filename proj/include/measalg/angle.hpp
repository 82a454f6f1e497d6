#pragma once

/**
 * @file angle.hpp
 * @brief Exact points of the circle group.
 *
 * An Angle is measured in turns (multiples of 2π) and has the form
 *
 *     q + Σ_j c_j θ_j   (mod 1)
 *
 * with q rational and c_j integers. The θ_j are formal generators that are
 * treated as rationally independent of 1 and of each other; they only take
 * numeric values when an Angle is evaluated.
 *
 * Text syntax: a rational "p/q" (or integer) followed by "+c*g<j>" terms,
 * e.g. "1/2", "1/3+2*g1", "g1", "1/4-g2". The printer emits the canonical
 * form and parse(print(a)) == a for every Angle.
 */

#include "measalg/rational.hpp"

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace measalg {

/// Numeric values (in turns, [0,1)) for formal generators, keyed by index.
using GeneratorValues = std::map<int, double>;

/// θ_j ↦ frac(√p_j) with p_j the j-th prime (θ_1 ↦ √2−1).
const GeneratorValues& default_generator_values();

/// Default value of generator j; valid for every j ≥ 1.
double default_generator_value(int j);

class Angle {
public:
    Angle() = default;
    explicit Angle(Rational turns) : rational_(turns.frac()) {}
    Angle(Rational turns, std::map<int, std::int64_t> generator_coeffs);

    static Angle turns(std::int64_t p, std::int64_t q) { return Angle(Rational(p, q)); }
    /// The formal generator θ_j.
    static Angle generator(int j, std::int64_t coeff = 1);
    static Angle parse(std::string_view text);

    const Rational& rational_part() const { return rational_; }
    const std::map<int, std::int64_t>& generator_coeffs() const { return coeffs_; }

    bool is_zero() const { return rational_.is_zero() && coeffs_.empty(); }
    bool is_torsion() const { return coeffs_.empty(); }

    Angle operator-() const;
    friend Angle operator+(const Angle& a, const Angle& b) { return combine(1, a, 1, b); }
    friend Angle operator-(const Angle& a, const Angle& b) { return combine(1, a, -1, b); }
    Angle scaled(std::int64_t k) const { return combine(k, *this, 0, Angle{}); }

    /// Canonical form of k1·a1 + k2·a2 modulo one turn.
    friend Angle combine(std::int64_t k1, const Angle& a1, std::int64_t k2, const Angle& a2);

    std::string str() const;

    friend bool operator==(const Angle&, const Angle&) = default;
    /// Canonical total order: rational part first, then generator coefficients.
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

private:
    Rational rational_;
    std::map<int, std::int64_t> coeffs_;
};

/// Smallest n ≥ 1 with n·a ≡ 0, or nullopt for non-torsion angles.
std::optional<mpz_class> torsion_order(const Angle& a);

/// Phase n·a in turns reduced to [0,1), evaluated with the given generator values.
long double phase_turns(const Angle& a, std::int64_t n, const GeneratorValues& values);

/// exp(2πi·n·a) with the argument reduced modulo 1 before exponentiation.
std::complex<double> eval_unimodular(const Angle& a, std::int64_t n,
                                     const GeneratorValues& values = default_generator_values());

/// exp(2πi·t) for t in turns, computed in extended precision.
std::complex<double> unimodular_from_turns(long double t);

inline std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

}  // namespace measalg
