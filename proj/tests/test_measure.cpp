#include <doctest.h>

#include "measalg/measure.hpp"

#include <cmath>
#include <random>

using namespace measalg;

namespace {

Measure half_sum(const Angle& a, const Angle& b, int sign) {
    return linear_combine(Rational(1, 2), Measure::dirac(a), Rational(sign, 2), Measure::dirac(b));
}

/// Independent evaluation of μ̂(n) straight from the definition.
Complex direct_coefficient(const Measure& m, std::int64_t n) {
    Complex s{0, 0};
    for (const auto& a : m.atoms()) {
        const long double t = phase_turns(a.position, 1, default_generator_values());
        const long double x = -2.0L * M_PIl * static_cast<long double>(n) * t;
        s += a.weight.numeric() * Complex(static_cast<double>(std::cos(x)), static_cast<double>(std::sin(x)));
    }
    if (auto it = m.ac().find(n); it != m.ac().end()) s += it->second.numeric();
    return s;
}

Measure random_measure(std::mt19937_64& rng, bool torsion) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::vector<Atom> atoms;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) {
        std::map<int, std::int64_t> gens;
        if (!torsion) gens = {{1, num(rng)}, {2, num(rng)}};
        atoms.push_back(Atom{Scalar::gaussian(Rational(num(rng), 3), Rational(num(rng), 2)),
                             Angle(Rational(static_cast<std::int64_t>(rng() % 12), 12), gens)});
    }
    AcTable ac;
    const int f = static_cast<int>(rng() % 3);
    for (int i = 0; i < f; ++i) ac[num(rng) * 3] = Scalar::gaussian(Rational(num(rng), 5), Rational(num(rng), 7));
    return Measure::from_parts(atoms, ac);
}

}  // namespace

TEST_CASE("dirac and haar constructors") {
    const Measure m = Measure::from_parts({Atom{Rational(2, 3), Angle::turns(1, 5)}}, {{3, Rational(1, 2)}});
    CHECK(convolve(Measure::dirac(Angle{}), m) == m);
    for (std::int64_t n = -10; n <= 10; ++n)
        CHECK(fourier_coefficient(Measure::dirac(Angle::turns(1, 2)), n) == Scalar(n % 2 == 0 ? 1 : -1));
    CHECK(tv_norm(Measure::dirac(Angle::generator(1))) == 1.0);

    CHECK(fourier_coefficient(Measure::haar_cyclic(3), 6) == Scalar(1));
    CHECK(fourier_coefficient(Measure::haar_cyclic(3), 4) == Scalar(0));
    CHECK(Measure::haar_cyclic(1) == Measure::dirac(Angle{}));
}

TEST_CASE("linear combinations merge and prune exactly") {
    const Measure m = Measure::from_parts({Atom{Rational(1, 3), Angle::generator(1)}}, {{2, Rational(5)}});
    CHECK(linear_combine(1, m, -1, m).is_zero());
    const Measure s = half_sum(Angle{}, Angle::turns(1, 2), 1);
    REQUIRE(s.atoms().size() == 2);
    CHECK(s.atoms()[0] == Atom{Rational(1, 2), Angle{}});
    CHECK(s.atoms()[1] == Atom{Rational(1, 2), Angle::turns(1, 2)});
    const Measure five = linear_combine(2, Measure::dirac(Angle::turns(1, 3)), 3, Measure::dirac(Angle::turns(1, 3)));
    CHECK(five == Measure::dirac(Angle::turns(1, 3), 5));
}

TEST_CASE("convolution") {
    const Measure plus = half_sum(Angle{}, Angle::turns(1, 2), 1);
    const Measure minus = half_sum(Angle{}, Angle::turns(1, 2), -1);
    CHECK(convolve(plus, minus).is_zero());
    CHECK(convolve(Measure::dirac(Angle::turns(1, 3)), Measure::dirac(Angle::turns(1, 3))) ==
          Measure::dirac(Angle::turns(2, 3)));
    for (std::int64_t n = -6; n <= 6; ++n)
        CHECK(fourier_coefficient(minus, n) == Scalar(n % 2 == 0 ? 0 : 1));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const bool torsion = t % 2 == 0;
        const Measure a = random_measure(rng, torsion), b = random_measure(rng, torsion), c = random_measure(rng, torsion);
        const Measure ab = convolve(a, b);
        for (std::int64_t n : {-9, -3, 0, 1, 3, 6, 12}) {
            const Complex expected = direct_coefficient(a, n) * direct_coefficient(b, n);
            CHECK(std::abs(fourier_coefficient(ab, n).numeric() - expected) <= 1e-12);
            CHECK(std::abs(fourier_coefficient(a, n).numeric() - direct_coefficient(a, n)) <= 1e-12);
        }
        if (torsion) {
            CHECK(ab == convolve(b, a));
            CHECK(convolve(ab, c) == convolve(a, convolve(b, c)));
        }
        CHECK(tv_norm(ab) <= tv_norm(a) * tv_norm(b) + 1e-9);
        for (std::int64_t n = -20; n <= 20; ++n) CHECK(fourier_coefficient(a, n).abs() <= tv_norm(a) + 1e-9);
    }
}

TEST_CASE("involution") {
    CHECK(involution(Measure::dirac(Angle::turns(1, 3))) == Measure::dirac(Angle::turns(2, 3)));
    CHECK(involution(Measure::haar_cyclic(6)) == Measure::haar_cyclic(6));
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        const Measure m = random_measure(rng, t % 3 != 0);
        CHECK(involution(involution(m)) == m);
        for (std::int64_t n : {-4, 0, 3, 5})
            CHECK(std::abs(fourier_coefficient(involution(m), n).numeric() - std::conj(direct_coefficient(m, n))) <= 1e-12);
    }
}

TEST_CASE("shift automorphisms") {
    CHECK(shift_automorphism(Measure::dirac(Angle::turns(1, 2)), 1) == Measure::dirac(Angle::turns(1, 2), -1));
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        const bool torsion = t % 2 == 0;
        const Measure m = random_measure(rng, torsion), p = random_measure(rng, torsion);
        const std::int64_t k = static_cast<std::int64_t>(rng() % 13) - 6;
        CHECK(shift_automorphism(m, 0) == m);
        const Measure s = shift_automorphism(m, k);
        for (std::int64_t n = -8; n <= 8; ++n) {
            if (torsion) {
                CHECK(fourier_coefficient(s, n) == fourier_coefficient(m, n - k));
            } else {
                CHECK(std::abs(fourier_coefficient(s, n).numeric() - fourier_coefficient(m, n - k).numeric()) <= 1e-12);
            }
        }
        const Measure lhs = shift_automorphism(convolve(m, p), k);
        const Measure rhs = convolve(shift_automorphism(m, k), shift_automorphism(p, k));
        const Measure comp = shift_automorphism(shift_automorphism(m, 2), k);
        for (std::int64_t n = -5; n <= 5; ++n) {
            CHECK(std::abs(fourier_coefficient(lhs, n).numeric() - fourier_coefficient(rhs, n).numeric()) <= 1e-12);
            CHECK(std::abs(fourier_coefficient(comp, n).numeric() -
                           fourier_coefficient(shift_automorphism(m, k + 2), n).numeric()) <= 1e-12);
        }
        if (torsion) CHECK(lhs == rhs);
    }
}

TEST_CASE("total variation norm") {
    CHECK(tv_norm(half_sum(Angle{}, Angle::turns(1, 2), -1)) == 1.0);
    // 1 + cos(t) is nonnegative with mean 1.
    const AcTable positive{{-1, Rational(1, 2)}, {0, Rational(1)}, {1, Rational(1, 2)}};
    CHECK(density_l1_norm(positive) == doctest::Approx(1.0).epsilon(1e-12));
    // e^{5it}(1 + cos t) has the same L¹ norm.
    AcTable twisted;
    for (const auto& [n, v] : positive) twisted[n + 5] = v;
    CHECK(density_l1_norm(twisted) == doctest::Approx(1.0).epsilon(1e-12));
    // cos t: mean of |cos| is 2/π.
    const AcTable cosine{{-1, Rational(1, 2)}, {1, Rational(1, 2)}};
    CHECK(density_l1_norm(cosine) == doctest::Approx(2.0 / M_PI).epsilon(1e-9));
    // Midpoint-rule oracle on a mixed-sign trigonometric polynomial.
    const AcTable mixed{{-3, Scalar(Complex(0.2, 0.1))}, {0, Rational(1, 10)}, {2, Scalar(Complex(-0.7, 0.3))}};
    double oracle = 0.0;
    const int steps = 400000;
    for (int j = 0; j < steps; ++j) {
        const double t = (j + 0.5) / steps;
        Complex s{0, 0};
        for (const auto& [n, v] : mixed) s += v.numeric() * std::polar(1.0, 2 * M_PI * n * t);
        oracle += std::abs(s);
    }
    oracle /= steps;
    CHECK(density_l1_norm(mixed) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("density sampling through the FFT") {
    const AcTable t{{-7, Scalar(Complex(0.5, -0.25))}, {3, Rational(2)}, {40, Scalar(Complex(0, 1))}};
    const auto fast = sample_density(t, 128);
    for (std::size_t j = 0; j < fast.size(); j += 7) {
        Complex s{0, 0};
        for (const auto& [n, v] : t) s += v.numeric() * std::polar(1.0, 2 * M_PI * n * static_cast<double>(j) / 128);
        CHECK(std::abs(fast[j] - s) <= 1e-12);
    }
}

TEST_CASE("coefficients cancel exactly across atoms sharing a generator part") {
    const Angle g = Angle::generator(1);
    const Measure m = Measure::dirac(g) - Measure::dirac(g + Angle::turns(1, 2));
    for (std::int64_t n = -8; n <= 8; n += 2) CHECK(fourier_coefficient(m, n).is_zero());
    const Complex odd = fourier_coefficient(m, 3).numeric();
    CHECK(std::abs(odd - 2.0 * std::polar(1.0, -2.0 * 3.14159265358979323846 * 3 * default_generator_value(1))) < 1e-12);

    AcTable ac{{-4, Scalar(1)}, {0, Scalar(1)}, {8, Scalar(Rational(1, 2))}};
    CHECK(convolve(Measure::from_parts({}, ac), m).is_zero());
}
