#pragma once

/**
 * @file corpus.hpp
 * @brief Seeded random measures for property checks and scenarios.
 *
 * Torsion atoms of one measure share a period L dividing 360, so exact
 * arithmetic stays inside a single cyclotomic field. Weights are Gaussian
 * rationals with small denominators.
 */

#include "measalg/measure.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace measalg {

class Corpus {
public:
    explicit Corpus(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    /// Random integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    /// Nonzero Gaussian rational with small numerators and denominators.
    Scalar weight();

    /// A period dividing 360.
    std::int64_t exact_period();

    /// 1..max_atoms atoms at multiples of 1/L for one L ≤ max_order.
    Measure torsion_measure(std::size_t max_atoms, std::int64_t max_order);
    /// Like torsion_measure with L dividing 360 (exact arithmetic throughout).
    Measure exact_torsion_measure(std::size_t max_atoms);
    /// Torsion atoms mixed with atoms carrying generator terms (generators 1..max_generators).
    Measure generator_measure(std::size_t max_atoms, int max_generators = 2);
    /// Exact torsion discrete part plus a nonzero trigonometric-polynomial density.
    Measure hybrid_measure(std::size_t max_atoms);
    /// A random trigonometric polynomial with up to `terms` coefficients and |frequency| ≤ max_freq.
    AcTable ac_table(std::size_t terms, std::int64_t max_freq);

    /// μ = e∗ρ₁, ν = (δ₀ − e)∗ρ₂ with e = haar_cyclic(l), so μ∗ν = 0 exactly.
    std::pair<Measure, Measure> annihilating_pair(bool torsion);

private:
    std::mt19937_64 rng_;
};

}  // namespace measalg
