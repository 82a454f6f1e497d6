#pragma once

/**
 * @file measure.hpp
 * @brief Hybrid measures on the circle and the convolution-algebra operations.
 *
 * A Measure is a finite combination of Dirac atoms at exact Angles plus an
 * absolutely continuous part given by a finite table of Fourier coefficients.
 * Fourier–Stieltjes coefficients follow μ̂(n) = ∫ e^{-int} dμ(t), so the ac
 * table is returned verbatim by fourier_coefficient.
 *
 * Measures are immutable values; zero weights (exact zero only) are never
 * stored and atoms are kept sorted by Angle.
 */

#include "measalg/angle.hpp"
#include "measalg/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace measalg {

struct Atom {
    Scalar weight;
    Angle position;
    friend bool operator==(const Atom&, const Atom&) = default;
};

using AcTable = std::map<std::int64_t, Scalar>;

namespace detail {
struct DiscreteCache;
}

class Measure {
public:
    Measure();

    /// Merges atoms at equal positions and drops exact zeros.
    static Measure from_parts(std::vector<Atom> atoms, AcTable ac);
    static Measure dirac(const Angle& a, const Scalar& weight = 1);
    /// Normalized Haar measure of the cyclic subgroup of order l.
    static Measure haar_cyclic(std::int64_t l);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const AcTable& ac() const { return ac_; }

    bool is_zero() const { return atoms_.empty() && ac_.empty(); }
    bool is_discrete() const { return ac_.empty(); }
    bool all_torsion() const;

    Measure discrete_part() const { return from_parts(atoms_, {}); }
    Measure ac_part() const { return from_parts({}, ac_); }

    /// lcm of the atoms' torsion orders (1 with no atoms); nullopt when some
    /// atom is not torsion or the lcm does not fit in int64.
    std::optional<std::int64_t> torsion_period() const;
    /// lcm of the denominators of the atoms' rational parts.
    std::int64_t rational_period() const;

    /// Fourier coefficient of the discrete part alone.
    Scalar discrete_coefficient(std::int64_t n) const;

    friend bool operator==(const Measure& a, const Measure& b) {
        return a.atoms_ == b.atoms_ && a.ac_ == b.ac_;
    }

private:
    std::vector<Atom> atoms_;
    AcTable ac_;
    std::shared_ptr<detail::DiscreteCache> cache_;
};

Measure linear_combine(const Scalar& c1, const Measure& m1, const Scalar& c2, const Measure& m2);
Measure scaled(const Measure& m, const Scalar& c);
Measure convolve(const Measure& m1, const Measure& m2);
Measure involution(const Measure& m);
Scalar fourier_coefficient(const Measure& m, std::int64_t n);
/// Σ|weights| plus the L¹ norm of the density.
double tv_norm(const Measure& m);
/// T_k: atom weights times exp(2πi·k·τ), coefficients moved from n to n+k.
Measure shift_automorphism(const Measure& m, std::int64_t k);

inline Measure operator+(const Measure& a, const Measure& b) { return linear_combine(1, a, 1, b); }
inline Measure operator-(const Measure& a, const Measure& b) { return linear_combine(1, a, -1, b); }

/// L¹ norm of the density Σ c_n e^{int} (mean of |f| over one period).
double density_l1_norm(const AcTable& ac);
/// Density values at t = j/count turns, j = 0..count-1.
std::vector<Complex> sample_density(const AcTable& ac, std::size_t count);

}  // namespace measalg
