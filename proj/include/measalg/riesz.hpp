#pragma once

/**
 * @file riesz.hpp
 * @brief Truncated Riesz products ∏_{k=1}^{N} (1 + cos(b^k t)).
 *
 * Expanding the product gives the coefficient ∏_{ε_k≠0} 1/2 at every signed
 * sum Σ ε_k b^k with ε_k ∈ {−1, 0, 1}. For b ≥ 3 these sums are pairwise
 * distinct, so the table has exactly 3^N entries and no merging occurs.
 */

#include "measalg/measure.hpp"

#include <cstdint>

namespace measalg {

struct RieszSpec {
    std::int64_t base = 4;
    int levels = 1;
};

/// Pure ac measure with exact dyadic coefficients. Throws InvalidBase for base < 3.
Measure riesz_partial(const RieszSpec& spec);

/// True iff μ̂(n) = 0 for every n ≢ 0 (mod modulus). Throws NotCheckable when
/// an atom is not torsion.
bool support_in_lattice(const Measure& m, std::int64_t modulus);

struct RieszConvergence {
    bool stable = false;           ///< levels N and N+1 agree on the level-N support
    std::size_t compared = 0;      ///< number of frequencies compared
    std::size_t new_frequencies = 0;
};

/// Compares the truncations at `levels` and `levels + 1`.
RieszConvergence riesz_convergence(const RieszSpec& spec);

}  // namespace measalg
