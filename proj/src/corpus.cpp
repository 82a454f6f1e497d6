#include "measalg/corpus.hpp"

#include <array>

namespace measalg {

namespace {

constexpr std::array<std::int64_t, 20> kExactPeriods{1,  2,  3,  4,  5,  6,  8,  9,  10, 12,
                                                      15, 18, 20, 24, 30, 36, 40, 45, 60, 72};

}  // namespace

std::int64_t Corpus::uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

Scalar Corpus::weight() {
    while (true) {
        const Rational re(uniform(-6, 6), uniform(1, 6));
        const Rational im(uniform(-1, 1) * uniform(0, 6), uniform(1, 6));
        if (!re.is_zero() || !im.is_zero()) return Scalar::gaussian(re, im);
    }
}

std::int64_t Corpus::exact_period() {
    return kExactPeriods[static_cast<std::size_t>(uniform(0, kExactPeriods.size() - 1))];
}

Measure Corpus::torsion_measure(std::size_t max_atoms, std::int64_t max_order) {
    const std::int64_t l = uniform(1, max_order);
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_atoms)));
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < count; ++i) atoms.push_back(Atom{weight(), Angle::turns(uniform(0, l - 1), l)});
    return Measure::from_parts(std::move(atoms), {});
}

Measure Corpus::exact_torsion_measure(std::size_t max_atoms) {
    const std::int64_t l = exact_period();
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_atoms)));
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < count; ++i) atoms.push_back(Atom{weight(), Angle::turns(uniform(0, l - 1), l)});
    return Measure::from_parts(std::move(atoms), {});
}

Measure Corpus::generator_measure(std::size_t max_atoms, int max_generators) {
    const std::int64_t l = exact_period();
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_atoms)));
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < count; ++i) {
        Angle a = Angle::turns(uniform(0, l - 1), l);
        if (i == 0 || uniform(0, 2) > 0) {
            std::int64_t c = uniform(-2, 2);
            if (c == 0) c = 1;
            a = a + Angle::generator(static_cast<int>(uniform(1, max_generators)), c);
        }
        atoms.push_back(Atom{weight(), a});
    }
    return Measure::from_parts(std::move(atoms), {});
}

AcTable Corpus::ac_table(std::size_t terms, std::int64_t max_freq) {
    AcTable ac;
    const auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(terms)));
    for (std::size_t i = 0; i < count; ++i) ac[uniform(-max_freq, max_freq)] = weight();
    return ac;
}

Measure Corpus::hybrid_measure(std::size_t max_atoms) {
    const Measure d = exact_torsion_measure(max_atoms);
    return Measure::from_parts(d.atoms(), ac_table(4, 12));
}

std::pair<Measure, Measure> Corpus::annihilating_pair(bool torsion) {
    const std::int64_t l = uniform(2, 6);
    const Measure e = Measure::haar_cyclic(l);
    const Measure rho1 = torsion ? exact_torsion_measure(4) : generator_measure(3, 2);
    const Measure rho2 = torsion ? exact_torsion_measure(4) : generator_measure(3, 2);
    return {convolve(e, rho1), convolve(Measure::dirac(Angle()) - e, rho2)};
}

}  // namespace measalg
