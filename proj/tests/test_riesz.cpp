#include "doctest.h"

#include "measalg/errors.hpp"
#include "measalg/riesz.hpp"

#include <map>
#include <numeric>

using namespace measalg;

namespace {

/// Multiplies out ∏ (1 + (z^{b^k} + z^{-b^k})/2) as a Laurent polynomial over ℚ.
std::map<std::int64_t, Rational> expand_by_multiplication(std::int64_t base, int levels) {
    std::map<std::int64_t, Rational> poly{{0, Rational(1)}};
    std::int64_t power = 1;
    for (int k = 1; k <= levels; ++k) {
        power *= base;
        const std::map<std::int64_t, Rational> factor{{-power, Rational(1, 2)}, {0, Rational(1)}, {power, Rational(1, 2)}};
        std::map<std::int64_t, Rational> next;
        for (const auto& [e1, c1] : poly)
            for (const auto& [e2, c2] : factor) next[e1 + e2] = next[e1 + e2] + c1 * c2;
        poly.clear();
        for (const auto& [e, c] : next)
            if (!c.is_zero()) poly[e] = c;
    }
    return poly;
}

Measure half_difference(const Angle& a) {
    return linear_combine(Rational(1, 2), Measure::dirac(Angle()), Rational(-1, 2), Measure::dirac(a));
}

}  // namespace

TEST_CASE("riesz truncation matches polynomial multiplication") {
    for (std::int64_t base : {3, 4, 5, 7}) {
        for (int levels = 1; levels <= 5; ++levels) {
            const Measure r = riesz_partial({base, levels});
            const auto oracle = expand_by_multiplication(base, levels);
            REQUIRE(r.ac().size() == oracle.size());
            for (const auto& [n, c] : oracle) CHECK(fourier_coefficient(r, n) == Scalar(c));
            CHECK(r.is_discrete() == false);
            CHECK(r.atoms().empty());
        }
    }
}

TEST_CASE("riesz examples") {
    const Measure one = riesz_partial({4, 1});
    CHECK(one.ac().size() == 3);
    CHECK(fourier_coefficient(one, -4) == Scalar(Rational(1, 2)));
    CHECK(fourier_coefficient(one, 0) == Scalar(1));
    CHECK(fourier_coefficient(one, 4) == Scalar(Rational(1, 2)));
    CHECK(fourier_coefficient(riesz_partial({4, 2}), 20) == Scalar(Rational(1, 4)));

    std::size_t expected = 1;
    for (int levels = 1; levels <= 8; ++levels) {
        expected *= 3;
        const Measure r = riesz_partial({4, levels});
        CHECK(r.ac().size() == expected);
        CHECK(fourier_coefficient(r, 0) == Scalar(1));
    }

    CHECK_THROWS_AS(riesz_partial({2, 3}), InvalidBase);
    CHECK_THROWS_AS(riesz_partial({1, 3}), InvalidBase);
    CHECK_THROWS_AS(riesz_partial({4, 0}), std::invalid_argument);
}

TEST_CASE("support lattice checks") {
    CHECK(support_in_lattice(riesz_partial({4, 5}), 4));
    CHECK_FALSE(support_in_lattice(riesz_partial({4, 5}), 8));
    CHECK(support_in_lattice(Measure(), 7));
    CHECK(support_in_lattice(Measure::haar_cyclic(3), 3));
    CHECK_FALSE(support_in_lattice(Measure::haar_cyclic(3), 6));
    CHECK_FALSE(support_in_lattice(Measure::dirac(Angle::turns(1, 3)), 3));
    CHECK_THROWS_AS(support_in_lattice(Measure::dirac(Angle::generator(1)), 2), NotCheckable);
}

TEST_CASE("annihilation by half differences") {
    for (int levels = 1; levels <= 8; ++levels)
        CHECK(convolve(half_difference(Angle::turns(1, 2)), riesz_partial({4, levels})).is_zero());
    for (std::int64_t l : {3, 4, 5, 6}) {
        for (std::int64_t k = 1; k < l; ++k) {
            if (std::gcd(k, l) != 1) continue;
            for (int levels = 1; levels <= 4; ++levels)
                CHECK(convolve(half_difference(Angle::turns(k, l)), riesz_partial({l, levels})).is_zero());
        }
    }
}

TEST_CASE("riesz density is a probability density") {
    for (int levels = 1; levels <= 4; ++levels) {
        const Measure r = riesz_partial({4, levels});
        for (const auto& v : sample_density(r.ac(), 4096)) {
            CHECK(v.real() >= -1e-9);
            CHECK(std::abs(v.imag()) < 1e-9);
        }
        CHECK(tv_norm(r) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("riesz coefficient tables stabilize") {
    for (int levels = 1; levels <= 5; ++levels) {
        const auto c = riesz_convergence({4, levels});
        CHECK(c.stable);
        std::size_t count = 1;
        for (int i = 0; i < levels; ++i) count *= 3;
        CHECK(c.compared == count);
        CHECK(c.new_frequencies == 3 * count - count);
    }
}
