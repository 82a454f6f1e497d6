#include "doctest.h"

#include "measalg/errors.hpp"
#include "measalg/riesz.hpp"
#include "measalg/spectra.hpp"

#include <cmath>
#include <random>

using namespace measalg;

namespace {

const Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

Complex root(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }

/// Brute-force symmetric Hausdorff distance between two finite clouds.
double cloud_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    auto one_side = [](const std::vector<Point>& x, const std::vector<Point>& y) {
        double worst = 0.0;
        for (const auto& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : y) best = std::min(best, point_distance(p, q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_side(a, b), one_side(b, a));
}

std::vector<Point> as_points(const std::vector<Complex>& zs) {
    std::vector<Point> out;
    for (const auto& z : zs) out.push_back(make_point(z));
    return out;
}

/// Spectrum consisting only of finite points.
std::vector<Point> points_only(const SpectrumSet& s) {
    REQUIRE(s.tori().empty());
    return s.finite_points();
}

Measure random_torsion(std::mt19937_64& rng, std::int64_t max_order) {
    std::uniform_int_distribution<std::int64_t> order(1, max_order);
    std::uniform_int_distribution<int> count(1, 5);
    std::uniform_int_distribution<int> small(-4, 4);
    const std::int64_t l = order(rng);
    std::uniform_int_distribution<std::int64_t> pos(0, l - 1);
    std::vector<Atom> atoms;
    const int k = count(rng);
    for (int i = 0; i < k; ++i)
        atoms.push_back(Atom{Scalar::gaussian(Rational(small(rng), 4), Rational(small(rng), 3)), Angle::turns(pos(rng), l)});
    return Measure::from_parts(atoms, {});
}

/// Σ m_k τ_k ≡ 0 checked directly on Angles.
bool is_relation(const std::vector<Angle>& angles, const IntVector& m) {
    Angle sum;
    for (std::size_t k = 0; k < angles.size(); ++k) sum = combine(1, sum, m[k], angles[k]);
    return sum.is_zero();
}

void check_lattice_by_enumeration(const std::vector<Angle>& angles, std::int64_t box) {
    const auto cs = character_structure(angles);
    for (const auto& b : cs.relation_basis) CHECK(is_relation(angles, b));
    CHECK(cs.free_rank + cs.relation_basis.size() == angles.size());
    IntVector m(angles.size(), -box);
    while (true) {
        CHECK(is_relation(angles, m) == lattice_contains(cs.relation_basis, m));
        std::size_t i = 0;
        while (i < m.size() && ++m[i] > box) m[i++] = -box;
        if (i == m.size()) break;
    }
}

Measure disc_measure() {
    const Measure a = linear_combine(Rational(1, 2), Measure::dirac(Angle()), Rational(-1, 2),
                                     Measure::dirac(Angle::turns(1, 2)));
    const Measure b = linear_combine(Rational(1, 2), Measure::dirac(Angle::generator(1)), Rational(1, 2),
                                     Measure::dirac(Angle::generator(2)));
    return convolve(a, b);
}

}  // namespace

TEST_CASE("character structure of small atom systems") {
    const auto half = character_structure(std::vector<Angle>{Angle::turns(1, 2)});
    CHECK(half.relation_basis == std::vector<IntVector>{{2}});
    CHECK(half.torsion_period == 2);
    CHECK(half.free_rank == 0);

    const std::vector<Angle> mixed{Angle::turns(1, 2), Angle::generator(1), Angle::parse("1/4+g1")};
    const auto cs = character_structure(mixed);
    CHECK(cs.free_rank == 1);
    CHECK(lattice_contains(cs.relation_basis, {2, 0, 0}));
    CHECK(lattice_contains(cs.relation_basis, {0, 4, -4}));
    check_lattice_by_enumeration(mixed, 5);

    const auto ind = character_structure(std::vector<Angle>{Angle::generator(1), Angle::generator(2)});
    CHECK(ind.relation_basis.empty());
    CHECK(ind.free_rank == 2);

    check_lattice_by_enumeration({Angle::turns(1, 6), Angle::turns(1, 4), Angle::parse("1/3+2*g1"),
                                  Angle::parse("g1-g2")},
                                 3);
    CHECK_THROWS_AS(character_structure(Measure()), EmptyDiscretePart);
}

TEST_CASE("SNF transforms diagonalize the relation matrix") {
    const std::vector<Angle> angles{Angle::turns(1, 6), Angle::parse("1/4+g1"), Angle::parse("1/3+g1"),
                                    Angle::parse("2*g2")};
    const auto cs = character_structure(angles);
    IntMatrix b(angles.size(), cs.relation_basis.size());
    for (std::size_t j = 0; j < cs.relation_basis.size(); ++j)
        for (std::size_t k = 0; k < angles.size(); ++k) b(k, j) = cs.relation_basis[j][k];
    const IntMatrix d = cs.snf.left * b * cs.snf.right;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            CHECK(d(i, j) == (i == j ? cs.snf.diagonal[i] : 0));
}

TEST_CASE("spectra of small torsion measures") {
    const auto third = points_only(spectrum(Measure::dirac(Angle::turns(1, 3))));
    CHECK(cloud_distance(third, as_points({1.0, root(1.0 / 3), root(2.0 / 3)})) < 1e-12);

    const Measure avg = Measure::haar_cyclic(2);
    CHECK(cloud_distance(points_only(spectrum(avg)), as_points({0.0, 1.0})) < 1e-12);

    const auto orbit = points_only(fourier_orbit_closure(Measure::dirac(Angle::turns(1, 2))));
    CHECK(cloud_distance(orbit, as_points({1.0, -1.0})) < 1e-12);
    CHECK(cloud_distance(points_only(spectrum(Measure())), as_points({0.0})) == 0.0);
}

TEST_CASE("circulant oracle examples and dense cross-check") {
    const auto quarter = circulant_oracle(Measure::dirac(Angle::turns(1, 4)));
    CHECK(quarter.order == 4);
    CHECK(cloud_distance(as_points(quarter.values), as_points({1.0, kI, -1.0, -kI})) < 1e-12);
    REQUIRE(quarter.dense_mismatch);
    CHECK(*quarter.dense_mismatch < 1e-10);

    const auto haar = circulant_oracle(Measure::haar_cyclic(3));
    CHECK(std::abs(haar.values[0] - 1.0) < 1e-12);
    CHECK(std::abs(haar.values[1]) < 1e-12);
    CHECK(std::abs(haar.values[2]) < 1e-12);

    const auto scalar = circulant_oracle(Measure::dirac(Angle(), Scalar::gaussian(2, 3)));
    CHECK(scalar.values.size() == 1);
    CHECK(std::abs(scalar.values[0] - Complex(2, 3)) < 1e-12);

    CHECK_THROWS_AS(circulant_oracle(Measure::dirac(Angle::generator(1))), NonTorsionAtom);
    CHECK_THROWS_AS(circulant_oracle(Measure::dirac(Angle::turns(1, 4099))), GroupTooLarge);
    CHECK_THROWS_AS(circulant_oracle(riesz_partial({4, 1})), NonDiscreteMeasure);
}

TEST_CASE("spectrum agrees with the circulant oracle on random torsion measures") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const Measure m = random_torsion(rng, 120);
        const auto oracle = circulant_oracle(m, 64);
        if (oracle.dense_mismatch) CHECK(*oracle.dense_mismatch < 1e-9);
        const auto spec = points_only(spectrum(m));
        CHECK(cloud_distance(spec, as_points(oracle.values)) < 1e-9);
    }
}

TEST_CASE("disc-filling measure") {
    const Measure nu = disc_measure();
    const SpectrumSet spec = spectrum(nu);
    const SpectrumSet orbit = fourier_orbit_closure(nu);
    CHECK(structurally_equal(spec, orbit));
    CHECK(spectral_radius(spec) == doctest::Approx(1.0).epsilon(1e-9));

    // Every point of a grid on the closed disc lies in the set; nothing outside does.
    for (double x = -1.0; x <= 1.0; x += 0.125)
        for (double y = -1.0; y <= 1.0; y += 0.125) {
            const double r = std::hypot(x, y);
            const double dist = spec.distance(make_point({x, y}));
            if (r <= 1.0) CHECK(dist < 1e-6);
            else CHECK(dist == doctest::Approx(r - 1.0).epsilon(1e-6));
        }

    std::vector<Point> cloud;
    for (std::int64_t n = -10000; n <= 10000; ++n) cloud.push_back(make_point(fourier_coefficient(nu, n).numeric()));
    CHECK(cloud_hausdorff(cloud, orbit, 2000, 5) <= 0.08);
}

TEST_CASE("orbit closure of an irrational rotation is the circle") {
    const Measure m = Measure::dirac(Angle::generator(1));
    const SpectrumSet orbit = fourier_orbit_closure(m);
    std::vector<Point> cloud;
    for (std::int64_t n = 0; n < 10000; ++n) cloud.push_back(make_point(fourier_coefficient(m, n).numeric()));
    CHECK(cloud_hausdorff(cloud, orbit, 4000, 1) <= 1e-3);
    CHECK(orbit.distance(make_point(0.0)) == doctest::Approx(1.0));
}

TEST_CASE("joint spectra") {
    const Measure m = Measure::haar_cyclic(3);
    const auto unit = points_only(joint_spectrum(Measure::dirac(Angle()), m));
    CHECK(cloud_distance(unit, {make_point(1.0, 1.0), make_point(1.0, 0.0)}) < 1e-12);

    const Measure half = Measure::dirac(Angle::turns(1, 2));
    const auto diag = points_only(joint_spectrum(half, half));
    CHECK(cloud_distance(diag, {make_point(1.0, 1.0), make_point(-1.0, -1.0)}) < 1e-12);

    const Measure plus = Measure::haar_cyclic(2);
    const Measure minus = linear_combine(Rational(1, 2), Measure::dirac(Angle()), Rational(-1, 2), half);
    const auto split = points_only(joint_spectrum(plus, minus));
    CHECK(cloud_distance(split, {make_point(1.0, 0.0), make_point(0.0, 1.0)}) < 1e-12);

    const auto rep = naturality_report(plus, minus, 1e-9, 100);
    CHECK(rep.natural);
    CHECK(rep.structural_match);
}

TEST_CASE("naturality reports") {
    const auto third = naturality_report(Measure::dirac(Angle::turns(1, 3)), 1e-9, 1000);
    CHECK(third.natural);
    CHECK(third.structural_match);
    CHECK(third.hausdorff < 1e-12);
    CHECK(third.witness_frequencies.size() == 3);
    for (const auto& w : third.witness_frequencies) CHECK(w.has_value());

    const Measure hybrid = Measure::haar_cyclic(4) + riesz_partial({4, 3});
    const auto h = naturality_report(hybrid, 0.05, 1000);
    CHECK(h.natural);

    const auto disc = naturality_report(disc_measure(), 0.05, 500);
    CHECK(disc.natural);
    CHECK(disc.structural_match);
}

TEST_CASE("isolated points are attained") {
    const auto both = isolated_points(spectrum(Measure::haar_cyclic(2)), 0.5);
    CHECK(cloud_distance(both, as_points({0.0, 1.0})) < 1e-12);

    CHECK(isolated_points(spectrum(disc_measure()), 0.1).empty());

    const Measure m = Measure::dirac(Angle::turns(1, 2), Rational(1, 4)) + scaled(riesz_partial({4, 2}), 0);
    const auto iso = isolated_points(spectrum(m), 0.1);
    CHECK(cloud_distance(iso, as_points({0.25, -0.25})) < 1e-12);
    for (const auto& p : iso) {
        const auto n = attaining_frequency(m, p[0], witness_bound(m), 1e-9);
        REQUIRE(n);
        CHECK(std::abs(fourier_coefficient(m, *n).numeric() - p[0]) < 1e-9);
    }

    const Measure h = Measure::dirac(Angle::turns(1, 3), Rational(1, 2)) + riesz_partial({3, 2});
    const SpectrumSet s = spectrum(h);
    for (const auto& p : isolated_points(s, 1e-3)) {
        const auto n = attaining_frequency(h, p[0], witness_bound(h), 1e-9);
        CHECK(n.has_value());
    }
}

TEST_CASE("functional calculus on cyclic groups") {
    const Measure m = Measure::dirac(Angle::turns(1, 4), 2) + Measure::dirac(Angle::turns(1, 2), Scalar::gaussian(0, 1));
    CHECK(cyclic_functional_calculus(m, [](const Scalar& z) { return z; }) == m);
    CHECK(cyclic_functional_calculus(m, [](const Scalar& z) { return z * z; }) == convolve(m, m));

    const Measure two = Measure::dirac(Angle::turns(1, 4), 2);
    const Measure inv = cyclic_functional_calculus(two, [](const Scalar& z) { return z.inverse(); });
    CHECK(inv == Measure::dirac(Angle::turns(3, 4), Rational(1, 2)));
    CHECK(convolve(inv, two) == Measure::dirac(Angle()));

    CHECK_THROWS_AS(cyclic_functional_calculus(Measure::haar_cyclic(2), [](const Scalar& z) { return z.inverse(); }),
                    DomainViolation);
    CHECK_THROWS_AS(cyclic_functional_calculus(Measure::dirac(Angle::generator(1)), [](const Scalar& z) { return z; }),
                    NonTorsionAtom);

    // Spectral mapping: spectrum of f(m) is f of the spectrum.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const Measure r = random_torsion(rng, 24);
        auto f = [](const Scalar& z) { return z * z * z - z + Scalar::gaussian(0, 1); };
        const Measure fr = cyclic_functional_calculus(r, f);
        std::vector<Point> mapped;
        for (const auto& p : points_only(spectrum(r))) {
            const Complex z = p[0];
            mapped.push_back(make_point(z * z * z - z + kI));
        }
        CHECK(cloud_distance(points_only(spectrum(fr)), mapped) < 1e-9);
    }
}

TEST_CASE("spectral radius") {
    CHECK(spectral_radius(Measure::dirac(Angle::turns(1, 7), Scalar::gaussian(3, 4))) ==
          doctest::Approx(5.0).epsilon(1e-12));
    const Measure indep = linear_combine(Rational(1, 2), Measure::dirac(Angle::generator(1)), Rational(1, 2),
                                         Measure::dirac(Angle::generator(2)));
    CHECK(spectral_radius(indep) == doctest::Approx(1.0).epsilon(1e-9));
    for (int n = 1; n <= 4; ++n) CHECK(spectral_radius(riesz_partial({4, n})) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("spectrum invariances") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Measure m = random_torsion(rng, 30);
        if (trial % 3 == 0) m = m + Measure::dirac(Angle::parse("1/5+g1"), Rational(1, 3));
        if (trial % 4 == 1) m = m + riesz_partial({3, 2});
        const std::int64_t k = trial - 10;
        CHECK(structurally_equal(spectrum(shift_automorphism(m, k)), spectrum(m)));
        CHECK(structurally_equal(spectrum(involution(m)), spectrum(m).conjugated()));

        const SpectrumSet spec = spectrum(m);
        for (const auto& cell : fourier_orbit_closure(m).sample(64, 3))
            for (const auto& p : cell) CHECK(spec.distance(p) < 1e-9);
    }
}

TEST_CASE("product map of a joint spectrum with a collapsing torus keeps every point") {
    // m = w·δ_{13/18 − θ₂}, d = δ_{θ₂}; m∗d = w·δ_{13/18} has spectrum {w·ζ₁₈^k}.
    const Scalar w = Scalar::gaussian(Rational(-6, 5), Rational(1, 3));
    const Measure m = Measure::dirac(Angle::turns(13, 18) - Angle::generator(2), w);
    const Measure d = Measure::dirac(Angle::generator(2));
    const SpectrumSet product = joint_spectrum(m, d).product_map().normalized();
    CHECK(product.tori().empty());
    std::vector<Point> expected;
    for (int k = 0; k < 18; ++k) expected.push_back(make_point(w.numeric() * root(k / 18.0)));
    CHECK(cloud_distance(product.finite_points(), expected) < 1e-12);
    CHECK(structurally_equal(product, spectrum(convolve(m, d))));
}
