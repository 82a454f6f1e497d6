#include "measalg/riesz.hpp"

#include "measalg/errors.hpp"
#include "measalg/lattice.hpp"

#include <numeric>

namespace measalg {

Measure riesz_partial(const RieszSpec& spec) {
    if (spec.base < 3) throw InvalidBase("Riesz product base must be at least 3, got " + std::to_string(spec.base));
    if (spec.levels < 1) throw std::invalid_argument("Riesz product needs at least one level");

    std::map<std::int64_t, Rational> coeffs{{0, Rational(1)}};
    std::int64_t step = 1;
    const Rational half(1, 2);
    for (int k = 1; k <= spec.levels; ++k) {
        step = checked_mul(step, spec.base);
        std::map<std::int64_t, Rational> next;
        for (const auto& [n, c] : coeffs) {
            next[n] = c;
            next[checked_add(n, step)] = c * half;
            next[checked_add(n, -step)] = c * half;
        }
        coeffs = std::move(next);
    }
    AcTable ac;
    for (const auto& [n, c] : coeffs) ac.emplace_hint(ac.end(), n, Scalar(c));
    return Measure::from_parts({}, std::move(ac));
}

bool support_in_lattice(const Measure& m, std::int64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("support_in_lattice: modulus must be positive");
    if (!m.all_torsion()) throw NotCheckable("support of the Fourier transform is not defined for non-torsion atoms");
    for (const auto& [n, v] : m.ac())
        if (n % modulus != 0) return false;
    if (m.atoms().empty()) return true;

    // The discrete transform is periodic, so every residue class modulo
    // lcm(period, modulus) outside the lattice must vanish identically.
    const std::int64_t period = m.rational_period();
    const std::int64_t l = std::lcm(period, modulus);
    if (l > 1'000'000) throw GroupTooLarge("support_in_lattice: period too large");
    double scale = 0.0;
    for (const auto& a : m.atoms()) scale += a.weight.abs();
    for (std::int64_t r = 0; r < l; ++r) {
        if (r % modulus == 0) continue;
        const Scalar v = m.discrete_coefficient(r);
        if (v.is_exact() ? !v.is_zero() : v.abs() > 1e-12 * scale) return false;
    }
    return true;
}

RieszConvergence riesz_convergence(const RieszSpec& spec) {
    const Measure a = riesz_partial(spec);
    const Measure b = riesz_partial(RieszSpec{spec.base, spec.levels + 1});
    RieszConvergence out;
    out.stable = true;
    for (const auto& [n, v] : a.ac()) {
        ++out.compared;
        auto it = b.ac().find(n);
        if (it == b.ac().end() || !(it->second == v)) out.stable = false;
    }
    out.new_frequencies = b.ac().size() - out.compared;
    return out;
}

}  // namespace measalg
