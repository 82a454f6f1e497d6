#include <doctest.h>

#include "measalg/cyclotomic.hpp"
#include "measalg/scalar.hpp"

#include <cmath>
#include <random>

using namespace measalg;

namespace {

std::complex<double> root(long p, long q) {
    const double a = 2 * M_PI * static_cast<double>(p) / static_cast<double>(q);
    return {std::cos(a), std::sin(a)};
}

}  // namespace

TEST_CASE("roots of unity and the cyclotomic relation") {
    for (long q = 1; q <= 60; ++q) {
        Cyclotomic sum;
        for (long p = 0; p < q; ++p) {
            const auto z = Cyclotomic::root_of_unity(Rational(p, q));
            REQUIRE(z.has_value());
            CHECK(std::abs(z->to_complex() - root(p, q)) <= 1e-14);
            sum = sum + *z;
        }
        CHECK(sum == Cyclotomic(Rational(q == 1 ? 1 : 0)));
    }
    CHECK_FALSE(Cyclotomic::root_of_unity(Rational(1, 401)).has_value());
}

TEST_CASE("field arithmetic agrees with complex arithmetic") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> coeff(-5, 5);
    const int orders[] = {3, 4, 5, 8, 12, 15, 24};
    for (int t = 0; t < 200; ++t) {
        const int na = orders[rng() % 7], nb = orders[rng() % 7];
        std::vector<Rational> ca, cb;
        for (int i = 0; i < na; ++i) ca.emplace_back(coeff(rng), 1 + (rng() % 3));
        for (int i = 0; i < nb; ++i) cb.emplace_back(coeff(rng), 1 + (rng() % 3));
        const auto a = Cyclotomic::from_power_coefficients(na, ca);
        const auto b = Cyclotomic::from_power_coefficients(nb, cb);
        std::complex<double> za{0, 0}, zb{0, 0};
        for (int i = 0; i < na; ++i) za += ca[static_cast<std::size_t>(i)].to_double() * root(i, na);
        for (int i = 0; i < nb; ++i) zb += cb[static_cast<std::size_t>(i)].to_double() * root(i, nb);
        CHECK(std::abs((a + b).to_complex() - (za + zb)) <= 1e-10);
        CHECK(std::abs((a * b).to_complex() - (za * zb)) <= 1e-9);
        CHECK(std::abs(a.conj().to_complex() - std::conj(za)) <= 1e-10);
        CHECK(a * b == b * a);
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
            CHECK(b * b.inverse() == Cyclotomic(Rational(1)));
        }
    }
}

TEST_CASE("gaussian rationals") {
    const auto z = Cyclotomic::gaussian(Rational(1, 2), Rational(-3, 4));
    const auto g = z.as_gaussian();
    REQUIRE(g.has_value());
    CHECK(g->first == Rational(1, 2));
    CHECK(g->second == Rational(-3, 4));
    const auto w = *Cyclotomic::root_of_unity(Rational(1, 3));
    CHECK_FALSE(w.as_gaussian().has_value());
    // ζ_8 + ζ_8^7 = √2 is real but not rational.
    const auto s = *Cyclotomic::root_of_unity(Rational(1, 8)) + *Cyclotomic::root_of_unity(Rational(7, 8));
    CHECK_FALSE(s.as_rational().has_value());
    CHECK(s.conj() == s);
    CHECK(s * s == Cyclotomic(Rational(2)));
}

TEST_CASE("root sums match term-by-term evaluation") {
    std::mt19937_64 rng(21);
    for (int order : {6, 10, 12, 30, 64, 90}) {
        std::vector<std::pair<Rational, std::int64_t>> terms;
        Cyclotomic slow;
        for (int k = 0; k < 20; ++k) {
            const Rational w(static_cast<std::int64_t>(rng() % 11) - 5, 1 + static_cast<std::int64_t>(rng() % 7));
            const std::int64_t e = static_cast<std::int64_t>(rng() % 500) - 250;
            terms.emplace_back(w, e);
            slow = slow + Cyclotomic(w) * *Cyclotomic::root_of_unity(Rational(e, order));
        }
        CHECK(Cyclotomic::root_sum(order, terms) == slow);
    }
}

TEST_CASE("scalars fall back to doubles") {
    const Scalar exact = Scalar::gaussian(Rational(1, 3), Rational(1));
    CHECK(exact.is_exact());
    const Scalar numeric = Complex(0.5, 0.25);
    CHECK_FALSE((exact + numeric).is_exact());
    CHECK(std::abs((exact * numeric).numeric() - Complex(1.0 / 3, 1) * Complex(0.5, 0.25)) <= 1e-15);
    CHECK(Scalar::unimodular(Angle::turns(1, 4), 3) == Scalar::gaussian(0, -1));
    CHECK_FALSE(Scalar::unimodular(Angle::generator(1), 1).is_exact());
    CHECK(power(Scalar::gaussian(0, 1), 4) == Scalar(1));
    CHECK(power(Scalar(2), -2) == Scalar(Rational(1, 4)));
}
