#pragma once

/**
 * @file quasirandom.hpp
 * @brief Seeded low-discrepancy points in the unit cube.
 *
 * Additive recurrence x_n = frac(s + n·α) with α_i = 1/g^i, g the unique
 * positive root of x^{d+1} = x + 1 (the R_d sequence). The shift s is drawn
 * from the seed, so every seed gives a reproducible, equally uniform sequence.
 */

#include <cstdint>
#include <vector>

namespace measalg {

class QuasiRandom {
public:
    QuasiRandom(std::size_t dim, std::uint64_t seed);

    std::size_t dim() const { return alpha_.size(); }
    /// The n-th point (n ≥ 0), coordinates in [0,1).
    std::vector<double> point(std::uint64_t n) const;
    /// Points 0..count-1.
    std::vector<std::vector<double>> points(std::size_t count) const;

private:
    std::vector<long double> alpha_;
    std::vector<long double> shift_;
};

}  // namespace measalg
