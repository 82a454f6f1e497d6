#include "measalg/quasirandom.hpp"

#include <cmath>
#include <random>

namespace measalg {

QuasiRandom::QuasiRandom(std::size_t dim, std::uint64_t seed) {
    long double g = 2.0L;
    for (int it = 0; it < 64; ++it) {
        const long double f = std::pow(g, static_cast<long double>(dim + 1)) - g - 1.0L;
        const long double df = static_cast<long double>(dim + 1) * std::pow(g, static_cast<long double>(dim)) - 1.0L;
        g -= f / df;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < dim; ++i) {
        const long double a = 1.0L / std::pow(g, static_cast<long double>(i + 1));
        alpha_.push_back(a - std::floor(a));
        shift_.push_back(unit(rng));
    }
}

std::vector<double> QuasiRandom::point(std::uint64_t n) const {
    std::vector<double> out(alpha_.size());
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
        const long double x = shift_[i] + static_cast<long double>(n + 1) * alpha_[i];
        out[i] = static_cast<double>(x - std::floor(x));
    }
    return out;
}

std::vector<std::vector<double>> QuasiRandom::points(std::size_t count) const {
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back(point(n));
    return out;
}

}  // namespace measalg
