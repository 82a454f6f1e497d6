#pragma once

/**
 * @file poly_lemma.hpp
 * @brief Annihilator polynomials and the atom-isolation iteration.
 *
 * For angles α ≠ β let γ = α − β. When 0 lies in the convex hull of
 * γ⁰, γ¹, …, γᴺ there are weights a_j ≥ 0 summing to 1 with Σ a_j γʲ = 0,
 * and f(z) = Σ a_j (β̄ z)ʲ satisfies f(α) = 0 and f(β) = Σ a_j = |f|₁.
 *
 * Points on the circle are written e^{2πi·t} for angles t in turns, with
 * formal generators at their default values. The filter built from f is
 * Σ b_j T_j with T_j the shift automorphism, so every atom δ_τ is multiplied
 * by f(e^{2πiτ}).
 */

#include "measalg/measure.hpp"

#include <cstdint>
#include <vector>

namespace measalg {

/// Smallest N with 0 in conv{e^{2πi·n·γ} : n = 0..N}. Throws DegenerateEqualAngles for γ ≡ 0.
std::int64_t minimal_hull_index(const Angle& gamma);

struct AnnihilatorPolynomial {
    Angle alpha;
    Angle beta;
    std::int64_t hull_index = 0;
    /// a_0..a_N: nonnegative reals, exact when γ is torsion of small order.
    std::vector<Scalar> weights;
    /// b_j = a_j · e^{−2πi·j·β}.
    std::vector<Scalar> coefficients;

    /// |f|₁ = Σ |b_j| = Σ a_j.
    Scalar l1_norm() const;
    /// f(e^{2πi·t}).
    Scalar evaluate(const Angle& t) const;
    /// True when every weight and coefficient is exact.
    bool is_exact() const;
};

/// Throws DegenerateEqualAngles when alpha == beta.
AnnihilatorPolynomial annihilator_polynomial(const Angle& alpha, const Angle& beta);

/// Σ_j b_j · shift_automorphism(m, j). Throws NonDiscreteMeasure.
Measure apply_polynomial_filter(const AnnihilatorPolynomial& p, const Measure& m);

struct IsolationStep {
    /// Index of the eliminated atom in the input measure's atom list.
    std::size_t eliminated_atom = 0;
    AnnihilatorPolynomial polynomial;
    Measure measure_after;
    /// Total variation of everything except the target atom.
    double tail_norm = 0.0;
};

struct IsolationTrace {
    std::size_t target_atom = 0;
    /// Input with the target weight normalized to 1.
    Measure normalized_input;
    double initial_tail_norm = 0.0;
    std::vector<IsolationStep> steps;
    /// True when only the target atom remains (exactly, or up to 1e−9 relative for numeric weights).
    bool isolated = false;

    const Measure& result() const { return steps.empty() ? normalized_input : steps.back().measure_after; }
};

/// Throws TargetWeightZero, NonDiscreteMeasure, std::out_of_range for a bad index.
IsolationTrace isolate_atom(const Measure& m, std::size_t target_atom, std::size_t max_steps);

}  // namespace measalg
