#include "doctest.h"

#include "measalg/errors.hpp"
#include "measalg/poly_lemma.hpp"

#include <cmath>
#include <random>

using namespace measalg;

namespace {

constexpr double kPi = 3.14159265358979323846;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// 0 in the closed convex hull of planar points, by testing every segment and triangle.
bool origin_in_hull(const std::vector<Complex>& pts) {
    const double eps = 1e-12;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(pts[i]) < eps) return true;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (std::abs(cross(pts[i], pts[j])) < eps && (pts[i].real() * pts[j].real() + pts[i].imag() * pts[j].imag()) < 0)
                return true;
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                const double d1 = cross(pts[j] - pts[i], -pts[i]);
                const double d2 = cross(pts[k] - pts[j], -pts[j]);
                const double d3 = cross(pts[i] - pts[k], -pts[k]);
                if ((d1 >= -eps && d2 >= -eps && d3 >= -eps) || (d1 <= eps && d2 <= eps && d3 <= eps)) return true;
            }
        }
    }
    return false;
}

std::int64_t brute_force_hull_index(std::int64_t p, std::int64_t q) {
    std::vector<Complex> pts;
    for (std::int64_t n = 0;; ++n) {
        pts.push_back(std::polar(1.0, 2.0 * kPi * static_cast<double>((n * p) % q) / static_cast<double>(q)));
        if (origin_in_hull(pts)) return n;
    }
}

Angle random_angle(std::mt19937_64& rng, bool torsion) {
    std::uniform_int_distribution<int> num(0, 23);
    std::uniform_int_distribution<int> den(1, 24);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> gen(1, 3);
    Angle a(Rational(num(rng), den(rng)));
    if (!torsion) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        a = a + Angle::generator(gen(rng), c);
    }
    return a;
}

/// Torsion atoms share a period L dividing 360 so that exact arithmetic stays in one field.
Measure random_discrete(std::mt19937_64& rng, std::size_t atoms, bool torsion) {
    static const std::vector<std::int64_t> periods{2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18, 20, 24, 30, 36, 40, 45, 60};
    std::uniform_int_distribution<int> small(-6, 6);
    std::uniform_int_distribution<std::size_t> which(0, periods.size() - 1);
    const std::int64_t l = periods[which(rng)];
    std::uniform_int_distribution<std::int64_t> pos(0, l - 1);
    std::vector<Atom> out;
    for (std::size_t i = 0; i < atoms; ++i) {
        Scalar w = Scalar::gaussian(Rational(small(rng), 5), Rational(small(rng), 7));
        if (w.is_zero()) w = Scalar(1);
        Angle a = Angle::turns(pos(rng), l);
        if (!torsion && i % 2 == 1) a = a + random_angle(rng, false);
        out.push_back(Atom{w, a});
    }
    return Measure::from_parts(out, {});
}

}  // namespace

TEST_CASE("minimal hull index") {
    CHECK(minimal_hull_index(Angle::turns(1, 2)) == 1);
    CHECK(minimal_hull_index(Angle::turns(1, 3)) == 2);
    CHECK(minimal_hull_index(Angle::generator(1)) == 2);
    CHECK_THROWS_AS(minimal_hull_index(Angle()), DegenerateEqualAngles);
    for (std::int64_t q = 2; q <= 24; ++q)
        for (std::int64_t p = 1; p < q; ++p)
            CHECK(minimal_hull_index(Angle::turns(p, q)) == brute_force_hull_index(p, q));
}

TEST_CASE("annihilator polynomial examples") {
    const auto half = annihilator_polynomial(Angle::turns(1, 2), Angle());
    CHECK(half.hull_index == 1);
    CHECK(half.coefficients == std::vector<Scalar>{Scalar(Rational(1, 2)), Scalar(Rational(1, 2))});
    CHECK(half.evaluate(Angle::turns(1, 2)).is_zero());
    CHECK(half.evaluate(Angle()) == Scalar(1));

    const auto third = annihilator_polynomial(Angle::turns(1, 3), Angle());
    CHECK(third.hull_index == 2);
    for (const auto& c : third.coefficients) CHECK(c == Scalar(Rational(1, 3)));
    CHECK(third.evaluate(Angle::turns(1, 3)).is_zero());
    CHECK(third.evaluate(Angle()) == Scalar(1));

    CHECK_THROWS_AS(annihilator_polynomial(Angle::generator(1), Angle::generator(1)), DegenerateEqualAngles);
}

TEST_CASE("annihilator polynomials are exact for torsion differences") {
    for (std::int64_t q = 2; q <= 24; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            const Angle beta = Angle::turns(1, 5);
            const Angle alpha = beta + Angle::turns(p, q);
            const auto f = annihilator_polynomial(alpha, beta);
            REQUIRE(f.is_exact());
            CHECK(f.hull_index == brute_force_hull_index(p, q));
            CHECK(f.l1_norm() == Scalar(1));
            CHECK(f.evaluate(alpha).is_zero());
            CHECK(f.evaluate(beta) == f.l1_norm());
            for (const auto& w : f.weights) {
                CHECK(std::abs(w.numeric().imag()) < 1e-15);
                CHECK(w.numeric().real() >= 0.0);
            }
        }
    }
}

TEST_CASE("annihilator polynomial certificates for random pairs") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const Angle alpha = random_angle(rng, false);
        Angle beta = random_angle(rng, trial % 2 == 0);
        if (beta == alpha) beta = beta + Angle::turns(1, 7);
        const auto f = annihilator_polynomial(alpha, beta);
        double sum = 0.0;
        double l1 = 0.0;
        for (std::size_t j = 0; j < f.weights.size(); ++j) {
            const double a = f.weights[j].numeric().real();
            CHECK(a >= 0.0);
            sum += a;
            l1 += f.coefficients[j].abs();
            const Complex expected = a * std::polar(1.0, -2.0 * kPi * static_cast<double>(phase_turns(beta, static_cast<std::int64_t>(j), default_generator_values())));
            CHECK(std::abs(f.coefficients[j].numeric() - expected) < 1e-12);
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(f.evaluate(alpha).abs() <= 1e-10);
        CHECK(std::abs(f.evaluate(beta).numeric() - l1) <= 1e-10);
        CHECK(f.hull_index == minimal_hull_index(alpha - beta));
    }
}

TEST_CASE("polynomial filter") {
    const auto f = annihilator_polynomial(Angle::turns(1, 2), Angle());
    const Measure two = Measure::dirac(Angle()) + Measure::dirac(Angle::turns(1, 2));
    CHECK(apply_polynomial_filter(f, two) == Measure::dirac(Angle()));
    CHECK(apply_polynomial_filter(f, Measure()).is_zero());
    CHECK_THROWS_AS(apply_polynomial_filter(f, Measure::from_parts({}, {{1, Scalar(1)}})), NonDiscreteMeasure);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const Measure m = random_discrete(rng, 5, trial % 2 == 0);
        const Measure n = random_discrete(rng, 3, true);
        const Angle alpha = random_angle(rng, trial % 3 == 0);
        Angle beta = random_angle(rng, true) + Angle::turns(1, 11);
        if (beta == alpha) beta = beta + Angle::turns(1, 2);
        const auto g = annihilator_polynomial(alpha, beta);
        const Measure fm = apply_polynomial_filter(g, m);
        const double norm = g.l1_norm().abs();
        // Each atom is multiplied by f at its position, bounded by |f|₁.
        for (const auto& a : m.atoms()) {
            const Complex expected = a.weight.numeric() * g.evaluate(a.position).numeric();
            Complex got{0.0, 0.0};
            for (const auto& b : fm.atoms())
                if (b.position == a.position) got = b.weight.numeric();
            CHECK(std::abs(got - expected) < 1e-12);
            CHECK(std::abs(got) <= a.weight.abs() * norm + 1e-12);
        }
        const Measure lhs = apply_polynomial_filter(g, linear_combine(2, m, Scalar::gaussian(0, 1), n));
        const Measure rhs = linear_combine(2, fm, Scalar::gaussian(0, 1), apply_polynomial_filter(g, n));
        CHECK(tv_norm(lhs - rhs) < 1e-12);
        // Each T_j is an algebra automorphism, so F(m∗n) = Σ b_j T_j(m) ∗ T_j(n).
        Measure expected;
        for (std::size_t j = 0; j < g.coefficients.size(); ++j) {
            const auto k = static_cast<std::int64_t>(j);
            expected = linear_combine(1, expected, g.coefficients[j],
                                      convolve(shift_automorphism(m, k), shift_automorphism(n, k)));
        }
        CHECK(tv_norm(apply_polynomial_filter(g, convolve(m, n)) - expected) < 1e-12);
        CHECK(tv_norm(apply_polynomial_filter(g, shift_automorphism(m, 3)) - shift_automorphism(fm, 3)) < 1e-12);
    }
}

TEST_CASE("atom isolation examples") {
    const Measure one = Measure::dirac(Angle()) + Measure::dirac(Angle::turns(1, 2), Rational(1, 2));
    const auto t1 = isolate_atom(one, 0, 10);
    CHECK(t1.steps.size() == 1);
    CHECK(t1.isolated);
    CHECK(t1.result() == Measure::dirac(Angle()));

    const Measure three = Measure::dirac(Angle()) + Measure::dirac(Angle::turns(1, 3), Scalar::gaussian(2, 1)) +
                          Measure::dirac(Angle::turns(2, 3), Rational(-1, 3));
    const auto t2 = isolate_atom(three, 0, 10);
    CHECK(t2.steps.size() <= 2);
    CHECK(t2.result() == Measure::dirac(Angle()));

    const auto t3 = isolate_atom(Measure::dirac(Angle::turns(1, 7), 3), 0, 10);
    CHECK(t3.steps.empty());
    CHECK(t3.result() == Measure::dirac(Angle::turns(1, 7)));

    const Measure scaled_target = Measure::dirac(Angle::turns(1, 4), Scalar::gaussian(0, 2)) + Measure::dirac(Angle::turns(3, 4));
    const auto t4 = isolate_atom(scaled_target, 0, 10);
    CHECK(t4.result() == Measure::dirac(Angle::turns(1, 4)));

    CHECK_THROWS_AS(isolate_atom(Measure::from_parts({}, {{2, Scalar(1)}}), 0, 3), NonDiscreteMeasure);
    CHECK_THROWS_AS(isolate_atom(Measure::dirac(Angle()), 3, 3), std::out_of_range);
}

TEST_CASE("atom isolation on random measures") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> count(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const bool torsion = trial % 2 == 0;
        const Measure m = random_discrete(rng, count(rng), torsion);
        const std::size_t k = m.atoms().size();
        std::uniform_int_distribution<std::size_t> pick(0, k - 1);
        const std::size_t target = pick(rng);
        const auto trace = isolate_atom(m, target, 20);
        CHECK(trace.isolated);
        // Filters may annihilate further atoms on the way, so at most K−1 steps.
        CHECK(trace.steps.size() <= k - 1);
        CHECK(trace.steps.size() <= 7);
        double prev = trace.initial_tail_norm;
        for (const auto& s : trace.steps) {
            CHECK(s.tail_norm <= prev * (1.0 + 1e-12) + 1e-15);
            prev = s.tail_norm;
        }
        const Angle pos = m.atoms()[target].position;
        if (m.all_torsion()) {
            CHECK(trace.result() == Measure::dirac(pos));
        } else {
            CHECK(tv_norm(trace.result() - Measure::dirac(pos)) <= 1e-9);
        }
    }
}
