#pragma once

/**
 * @file spectra.hpp
 * @brief Spectra, joint spectra and Fourier-orbit closures of hybrid measures.
 *
 * Two character families are computable for a Measure μ = μ_d + f:
 *
 *  - integer characters n ↦ μ̂(n), whose closure is the orbit closure;
 *  - characters of the discrete group G generated by the atoms (these kill
 *    the ac ideal), parametrized by the Smith normal form of the relation
 *    lattice Λ = {m ∈ ℤ^K : Σ m_k τ_k ≡ 0}.
 *
 * A character of G is a tuple u ∈ 𝕋^K with u^m = 1 for every m ∈ Λ. With
 * U·B·V = diag(s) for the K×r basis matrix B of Λ, these tuples are
 * u_k = exp(2πi Σ_i U_ik φ_i) where φ_i ∈ (1/s_i)ℤ for i < r and φ_i is free
 * for i ≥ r. Each choice of the torsion coordinates gives one torus cell.
 *
 * The orbit closure is computed residue by residue modulo the period D of
 * the rational parts: for n = mD + r the generator phases (mDθ_j) fill the
 * torus (Kronecker), so the closure over m is a full torus image.
 *
 * spectrum(μ) = closure{μ̂(ℤ)} ∪ σ_d(μ_d) for hybrid μ, and σ_d(μ) for
 * discrete μ.
 */

#include "measalg/lattice.hpp"
#include "measalg/measure.hpp"
#include "measalg/spectrum_set.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace measalg {

struct CharacterStructure {
    std::vector<Angle> atom_angles;
    /// Basis of Λ as rows (Hermite normal form).
    std::vector<IntVector> relation_basis;
    /// Smith form U·B·V = diag of the K×r matrix whose columns are the basis.
    SmithForm snf;
    /// lcm of the denominators of the rational parts.
    std::int64_t torsion_period = 1;
    /// Rank of the group generated by the atoms modulo torsion.
    std::size_t free_rank = 0;
};

/// Throws EmptyDiscretePart when m has no atoms.
CharacterStructure character_structure(const Measure& m);
CharacterStructure character_structure(const std::vector<Angle>& angles);

SpectrumSet spectrum(const Measure& m);
SpectrumSet fourier_orbit_closure(const Measure& m);
SpectrumSet joint_spectrum(const Measure& m1, const Measure& m2);
SpectrumSet joint_orbit_closure(const Measure& m1, const Measure& m2);

struct NaturalityReport {
    bool natural = false;
    double hausdorff = 0.0;
    bool structural_match = false;
    /// For each finite spectrum point, a frequency n with μ̂(n) at that point.
    std::vector<std::optional<std::int64_t>> witness_frequencies;
};

NaturalityReport naturality_report(const Measure& m, double tol, std::size_t samples, std::uint64_t seed = 0);
NaturalityReport naturality_report(const Measure& m1, const Measure& m2, double tol, std::size_t samples,
                                   std::uint64_t seed = 0);

/// Search bound D·(1 + largest |ac frequency|) used for witness frequencies.
std::int64_t witness_bound(const Measure& m);
/// Smallest |n| ≤ bound with |μ̂(n) − λ| ≤ tol.
std::optional<std::int64_t> attaining_frequency(const Measure& m, Complex lambda, std::int64_t bound, double tol);
std::optional<std::int64_t> attaining_frequency(const Measure& m1, const Measure& m2, const Point& lambda,
                                                std::int64_t bound, double tol);

struct CirculantOracle {
    /// L = lcm of the atom orders.
    std::int64_t order = 1;
    /// Σ_k a_k ω^{n s_k}, n = 0..L−1 (convolution operator eigenvalues via DFT).
    std::vector<Complex> values;
    /// Eigenvalues of the dense L×L convolution matrix, when L ≤ dense_limit.
    std::vector<Complex> dense_eigenvalues;
    /// Largest distance between matched values of the two computations.
    std::optional<double> dense_mismatch;
};

/// Throws NonTorsionAtom, NonDiscreteMeasure, GroupTooLarge (L > 4096).
CirculantOracle circulant_oracle(const Measure& m, std::int64_t dense_limit = 128);

using ScalarFunction = std::function<Scalar(const Scalar&)>;

/// The measure on the same cyclic group whose character values are f of the
/// character values of m. Throws NonTorsionAtom, NonDiscreteMeasure,
/// DomainViolation.
Measure cyclic_functional_calculus(const Measure& m, const ScalarFunction& f, bool domain_check = true);

double spectral_radius(const Measure& m);

}  // namespace measalg
