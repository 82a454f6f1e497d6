#include "measalg/spectra.hpp"

#include "measalg/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace measalg {

namespace {

constexpr std::int64_t kMaxLabels = 100000;
constexpr std::int64_t kMaxCirculantOrder = 4096;
constexpr double kPointTol = 1e-9;

struct WeightedAtoms {
    std::vector<Angle> angles;
    std::vector<Point> weights;
};

WeightedAtoms weighted_atoms(const Measure& m) {
    WeightedAtoms out;
    for (const auto& a : m.atoms()) {
        out.angles.push_back(a.position);
        out.weights.push_back(make_point(a.weight.numeric()));
    }
    return out;
}

WeightedAtoms weighted_atoms(const Measure& m1, const Measure& m2) {
    std::map<Angle, Point> merged;
    for (const auto& a : m1.atoms()) merged[a.position][0] += a.weight.numeric();
    for (const auto& a : m2.atoms()) merged[a.position][1] += a.weight.numeric();
    WeightedAtoms out;
    for (const auto& [angle, w] : merged) {
        out.angles.push_back(angle);
        out.weights.push_back(w);
    }
    return out;
}

std::int64_t denominator_of(const Angle& a) { return to_int64(a.rational_part().denominator()); }
std::int64_t numerator_of(const Angle& a) { return to_int64(a.rational_part().numerator()); }

std::int64_t rational_period(const std::vector<Angle>& angles) {
    std::int64_t d = 1;
    for (const auto& a : angles) {
        const std::int64_t q = denominator_of(a);
        d = checked_mul(d / std::gcd(d, q), q);
    }
    return d;
}

std::vector<int> generator_indices(const std::vector<Angle>& angles) {
    std::set<int> idx;
    for (const auto& a : angles)
        for (const auto& [j, c] : a.generator_coeffs()) idx.insert(j);
    return {idx.begin(), idx.end()};
}

std::int64_t mod(__int128 a, std::int64_t m) {
    __int128 r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

Point add(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }
Point times(const Point& a, Complex c) { return {a[0] * c, a[1] * c}; }

/// One torus cell: constant collects exponent-zero terms, equal exponents merge.
void add_cell(SpectrumSet& out, std::map<IntVector, Point>&& grouped, std::size_t params, std::string label) {
    TorusCell cell;
    cell.params = params;
    cell.label = std::move(label);
    const IntVector zero(params, 0);
    for (auto& [e, c] : grouped) {
        if (e == zero) {
            cell.constant = add(cell.constant, c);
        } else {
            cell.terms.push_back(TorusTerm{c, e});
        }
    }
    if (cell.terms.empty()) {
        out.add_point(cell.constant);
    } else {
        out.add_torus(std::move(cell));
    }
}

/// Character values Σ w_k u_k over the character variety of the atom group.
SpectrumSet character_cells(const WeightedAtoms& wa, int arity) {
    SpectrumSet out(arity);
    if (wa.angles.empty()) {
        out.add_point(Point{});
        return out;
    }
    const CharacterStructure cs = character_structure(wa.angles);
    const std::size_t k_count = wa.angles.size();
    const std::size_t r = cs.snf.diagonal.size();
    const std::size_t d = cs.free_rank;

    std::vector<std::int64_t> radix;
    std::vector<std::size_t> radix_index;
    std::int64_t labels = 1;
    std::int64_t common = 1;
    for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t s = cs.snf.diagonal[i];
        if (s == 1) continue;
        radix.push_back(s);
        radix_index.push_back(i);
        labels = checked_mul(labels, s);
        if (labels > kMaxLabels) throw GroupTooLarge("character group has more than 100000 components");
        common = checked_mul(common / std::gcd(common, s), s);
    }

    const IntMatrix& u = cs.snf.left;
    std::vector<IntVector> exponents(k_count, IntVector(d, 0));
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t i = 0; i < d; ++i) exponents[k][i] = u(r + i, k);

    // Per atom, the phase contribution of each torsion coordinate, in units of 1/common.
    std::vector<std::vector<std::int64_t>> step(k_count, std::vector<std::int64_t>(radix.size(), 0));
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t t = 0; t < radix.size(); ++t)
            step[k][t] = mod(static_cast<__int128>(u(radix_index[t], k)) * (common / radix[t]), common);

    std::vector<std::int64_t> digit(radix.size(), 0);
    for (std::int64_t label = 0; label < labels; ++label) {
        std::map<IntVector, Point> grouped;
        for (std::size_t k = 0; k < k_count; ++k) {
            __int128 phase = 0;
            for (std::size_t t = 0; t < radix.size(); ++t) phase += static_cast<__int128>(step[k][t]) * digit[t];
            const long double turns = static_cast<long double>(mod(phase, common)) / static_cast<long double>(common);
            auto& slot = grouped[exponents[k]];
            slot = add(slot, times(wa.weights[k], unimodular_from_turns(turns)));
        }
        std::ostringstream name;
        name << "t=(";
        for (std::size_t t = 0; t < digit.size(); ++t) name << (t ? "," : "") << digit[t];
        name << ")";
        add_cell(out, std::move(grouped), d, name.str());

        for (std::size_t t = 0; t < digit.size(); ++t) {
            if (++digit[t] < radix[t]) break;
            digit[t] = 0;
        }
    }
    return out;
}

/// Closure of the discrete integer-character values, one torus image per residue mod D.
SpectrumSet orbit_cells(const WeightedAtoms& wa, int arity) {
    SpectrumSet out(arity);
    if (wa.angles.empty()) {
        out.add_point(Point{});
        return out;
    }
    const std::int64_t period = rational_period(wa.angles);
    if (period > kMaxLabels) throw GroupTooLarge("rational period exceeds 100000");
    const std::vector<int> gens = generator_indices(wa.angles);
    const std::size_t k_count = wa.angles.size();

    std::vector<IntVector> exponents(k_count, IntVector(gens.size(), 0));
    std::vector<std::int64_t> scaled_num(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
            const auto& c = wa.angles[k].generator_coeffs();
            const auto it = c.find(gens[j]);
            if (it != c.end()) exponents[k][j] = it->second;
        }
        scaled_num[k] = mod(static_cast<__int128>(numerator_of(wa.angles[k])) * (period / denominator_of(wa.angles[k])),
                            period);
    }

    for (std::int64_t res = 0; res < period; ++res) {
        std::map<IntVector, Point> grouped;
        for (std::size_t k = 0; k < k_count; ++k) {
            const std::int64_t phase = mod(-static_cast<__int128>(res) * scaled_num[k], period);
            const long double turns = static_cast<long double>(phase) / static_cast<long double>(period);
            auto& slot = grouped[exponents[k]];
            slot = add(slot, times(wa.weights[k], unimodular_from_turns(turns)));
        }
        add_cell(out, std::move(grouped), gens.size(), "r=" + std::to_string(res));
    }
    return out;
}

std::set<std::int64_t> ac_support(const Measure& m) {
    std::set<std::int64_t> out;
    for (const auto& [n, c] : m.ac()) out.insert(n);
    return out;
}

Point coefficient_point(const Measure& m, std::int64_t n) { return make_point(fourier_coefficient(m, n).numeric()); }

Point coefficient_point(const Measure& m1, const Measure& m2, std::int64_t n) {
    return make_point(fourier_coefficient(m1, n).numeric(), fourier_coefficient(m2, n).numeric());
}

/// Frequencies that realize every value of n ↦ μ̂(n) when the discrete part is
/// torsion: the ac support plus, per residue mod D, the smallest |n| outside it.
std::vector<std::int64_t> torsion_candidates(std::int64_t period, const std::set<std::int64_t>& support) {
    std::vector<std::int64_t> out(support.begin(), support.end());
    for (std::int64_t res = 0; res < period; ++res) {
        const std::int64_t lo = res == 0 ? 0 : res - period;
        for (std::int64_t step = 0;; ++step) {
            const std::int64_t a = lo - step * period;
            const std::int64_t b = res + step * period;
            const std::int64_t first = std::abs(a) <= std::abs(b) ? a : b;
            const std::int64_t second = first == a ? b : a;
            if (!support.count(first)) {
                out.push_back(first);
                break;
            }
            if (!support.count(second)) {
                out.push_back(second);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](std::int64_t x, std::int64_t y) {
        return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : x < y;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::int64_t> scan_order(std::int64_t bound) {
    std::vector<std::int64_t> out{0};
    for (std::int64_t n = 1; n <= bound; ++n) {
        out.push_back(-n);
        out.push_back(n);
    }
    return out;
}

constexpr std::int64_t kMaxScan = 200000;

bool all_torsion(const std::vector<Angle>& angles) {
    return std::all_of(angles.begin(), angles.end(), [](const Angle& a) { return a.is_torsion(); });
}

std::vector<std::int64_t> candidate_frequencies(const std::vector<Angle>& angles, bool torsion,
                                                const std::set<std::int64_t>& support, std::int64_t bound) {
    if (!torsion) return scan_order(std::min(bound, kMaxScan));
    auto freqs = torsion_candidates(rational_period(angles), support);
    std::erase_if(freqs, [&](std::int64_t n) { return std::abs(n) > bound; });
    return freqs;
}

template <class Value>
std::vector<std::pair<std::int64_t, Point>> frequency_table(const std::vector<Angle>& angles, bool torsion,
                                                            const std::set<std::int64_t>& support,
                                                            std::int64_t bound, Value value) {
    std::vector<std::pair<std::int64_t, Point>> out;
    for (const std::int64_t n : candidate_frequencies(angles, torsion, support, bound)) out.emplace_back(n, value(n));
    return out;
}

/// First candidate (in order of increasing |n|) whose value lies within tol of lambda.
template <class Value>
std::optional<std::int64_t> first_match(const std::vector<Angle>& angles, const std::set<std::int64_t>& support,
                                        std::int64_t bound, const Point& lambda, double tol, Value value) {
    for (const std::int64_t n : candidate_frequencies(angles, all_torsion(angles), support, bound))
        if (point_distance(value(n), lambda) <= tol) return n;
    return std::nullopt;
}

std::optional<std::int64_t> find_in_table(const std::vector<std::pair<std::int64_t, Point>>& table,
                                          const Point& lambda, double tol) {
    for (const auto& [n, p] : table)
        if (point_distance(p, lambda) <= tol) return n;
    return std::nullopt;
}

std::int64_t joint_bound(const std::vector<Angle>& angles, const std::set<std::int64_t>& support) {
    std::int64_t radius = 0;
    for (const std::int64_t n : support) radius = std::max(radius, std::abs(n));
    return checked_mul(rational_period(angles), checked_add(1, radius));
}

std::vector<Angle> union_angles(const Measure& m1, const Measure& m2) {
    return weighted_atoms(m1, m2).angles;
}

NaturalityReport make_report(const SpectrumSet& spec, const SpectrumSet& orbit, double tol, std::size_t samples,
                             std::uint64_t seed, const std::vector<std::pair<std::int64_t, Point>>& table) {
    NaturalityReport rep;
    rep.structural_match = structurally_equal(spec, orbit, 1e-9);
    rep.hausdorff = sampled_hausdorff(spec, orbit, samples, seed);
    rep.natural = rep.structural_match || rep.hausdorff <= tol;
    for (const auto& p : spec.finite_points()) rep.witness_frequencies.push_back(find_in_table(table, p, kPointTol));
    return rep;
}

}  // namespace

CharacterStructure character_structure(const std::vector<Angle>& angles) {
    if (angles.empty()) throw EmptyDiscretePart("character structure needs at least one atom");
    CharacterStructure cs;
    cs.atom_angles = angles;
    const std::size_t k_count = angles.size();
    cs.torsion_period = rational_period(angles);
    const std::vector<int> gens = generator_indices(angles);

    // Unknowns (m_1..m_K, t): Σ m_k c_kj = 0 for every generator, Σ m_k p_k D/q_k = t·D.
    IntMatrix a(gens.size() + 1, k_count + 1);
    for (std::size_t k = 0; k < k_count; ++k) {
        const auto& c = angles[k].generator_coeffs();
        for (std::size_t j = 0; j < gens.size(); ++j) {
            const auto it = c.find(gens[j]);
            a(j, k) = it == c.end() ? 0 : it->second;
        }
        a(gens.size(), k) = checked_mul(numerator_of(angles[k]), cs.torsion_period / denominator_of(angles[k]));
    }
    a(gens.size(), k_count) = -cs.torsion_period;

    std::vector<IntVector> projected;
    for (auto& v : integer_kernel(a)) {
        v.pop_back();
        projected.push_back(std::move(v));
    }
    cs.relation_basis = hermite_normal_form(projected, k_count);
    const std::size_t r = cs.relation_basis.size();
    cs.free_rank = k_count - r;

    if (r == 0) {
        cs.snf.left = IntMatrix::identity(k_count);
        cs.snf.right = IntMatrix(0, 0);
    } else {
        IntMatrix b(k_count, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < k_count; ++k) b(k, j) = cs.relation_basis[j][k];
        cs.snf = smith_normal_form(b);
    }
    return cs;
}

CharacterStructure character_structure(const Measure& m) {
    std::vector<Angle> angles;
    for (const auto& a : m.atoms()) angles.push_back(a.position);
    return character_structure(angles);
}

SpectrumSet fourier_orbit_closure(const Measure& m) {
    SpectrumSet out = orbit_cells(weighted_atoms(m), 1);
    for (const std::int64_t n : ac_support(m)) out.add_point(coefficient_point(m, n));
    return out.normalized();
}

SpectrumSet joint_orbit_closure(const Measure& m1, const Measure& m2) {
    SpectrumSet out = orbit_cells(weighted_atoms(m1, m2), 2);
    std::set<std::int64_t> support = ac_support(m1);
    support.merge(ac_support(m2));
    for (const std::int64_t n : support) out.add_point(coefficient_point(m1, m2, n));
    return out.normalized();
}

SpectrumSet spectrum(const Measure& m) {
    SpectrumSet out(1);
    if (!m.atoms().empty()) out.merge(character_cells(weighted_atoms(m), 1));
    if (!m.is_discrete() || m.atoms().empty()) out.merge(fourier_orbit_closure(m));
    return out.normalized();
}

SpectrumSet joint_spectrum(const Measure& m1, const Measure& m2) {
    SpectrumSet out(2);
    const bool has_atoms = !m1.atoms().empty() || !m2.atoms().empty();
    if (has_atoms) out.merge(character_cells(weighted_atoms(m1, m2), 2));
    if (!m1.is_discrete() || !m2.is_discrete() || !has_atoms) out.merge(joint_orbit_closure(m1, m2));
    return out.normalized();
}

std::int64_t witness_bound(const Measure& m) {
    return joint_bound(weighted_atoms(m).angles, ac_support(m));
}

std::optional<std::int64_t> attaining_frequency(const Measure& m, Complex lambda, std::int64_t bound, double tol) {
    const auto angles = weighted_atoms(m).angles;
    return first_match(angles, ac_support(m), bound, make_point(lambda), tol,
                       [&](std::int64_t n) { return coefficient_point(m, n); });
}

std::optional<std::int64_t> attaining_frequency(const Measure& m1, const Measure& m2, const Point& lambda,
                                                std::int64_t bound, double tol) {
    const auto angles = union_angles(m1, m2);
    std::set<std::int64_t> support = ac_support(m1);
    support.merge(ac_support(m2));
    return first_match(angles, support, bound, lambda, tol,
                       [&](std::int64_t n) { return coefficient_point(m1, m2, n); });
}

NaturalityReport naturality_report(const Measure& m, double tol, std::size_t samples, std::uint64_t seed) {
    const auto angles = weighted_atoms(m).angles;
    const auto support = ac_support(m);
    const auto table = frequency_table(angles, all_torsion(angles), support, joint_bound(angles, support),
                                       [&](std::int64_t n) { return coefficient_point(m, n); });
    return make_report(spectrum(m), fourier_orbit_closure(m), tol, samples, seed, table);
}

NaturalityReport naturality_report(const Measure& m1, const Measure& m2, double tol, std::size_t samples,
                                   std::uint64_t seed) {
    const auto angles = union_angles(m1, m2);
    std::set<std::int64_t> support = ac_support(m1);
    support.merge(ac_support(m2));
    const auto table = frequency_table(angles, all_torsion(angles), support, joint_bound(angles, support),
                                       [&](std::int64_t n) { return coefficient_point(m1, m2, n); });
    return make_report(joint_spectrum(m1, m2), joint_orbit_closure(m1, m2), tol, samples, seed, table);
}

CirculantOracle circulant_oracle(const Measure& m, std::int64_t dense_limit) {
    if (!m.is_discrete()) throw NonDiscreteMeasure("circulant oracle needs a discrete measure");
    if (!m.all_torsion()) throw NonTorsionAtom("circulant oracle needs torsion atoms");
    const auto period = m.torsion_period();
    if (!period || *period > kMaxCirculantOrder) throw GroupTooLarge("circulant order exceeds 4096");

    CirculantOracle out;
    const std::int64_t l = *period;
    out.order = l;
    std::vector<std::int64_t> shift;
    std::vector<Complex> weight;
    for (const auto& a : m.atoms()) {
        shift.push_back(mod(static_cast<__int128>(numerator_of(a.position)) * (l / denominator_of(a.position)), l));
        weight.push_back(a.weight.numeric());
    }
    out.values.resize(static_cast<std::size_t>(l));
    for (std::int64_t n = 0; n < l; ++n) {
        Complex v{0.0, 0.0};
        for (std::size_t k = 0; k < shift.size(); ++k) {
            const std::int64_t e = mod(static_cast<__int128>(n) * shift[k], l);
            v += weight[k] * unimodular_from_turns(static_cast<long double>(e) / static_cast<long double>(l));
        }
        out.values[static_cast<std::size_t>(n)] = v;
    }

    if (l <= dense_limit) {
        Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(l, l);
        for (std::int64_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < shift.size(); ++k) c(j, mod(j - shift[k], l)) += weight[k];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
        const auto& ev = solver.eigenvalues();
        out.dense_eigenvalues.assign(ev.data(), ev.data() + ev.size());

        std::vector<bool> used(out.dense_eigenvalues.size(), false);
        double worst = 0.0;
        for (const Complex& v : out.values) {
            std::size_t best = 0;
            double dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < used.size(); ++i) {
                if (used[i]) continue;
                const double e = std::abs(out.dense_eigenvalues[i] - v);
                if (e < dist) {
                    dist = e;
                    best = i;
                }
            }
            used[best] = true;
            worst = std::max(worst, dist);
        }
        out.dense_mismatch = worst;
    }
    return out;
}

Measure cyclic_functional_calculus(const Measure& m, const ScalarFunction& f, bool domain_check) {
    if (!m.is_discrete()) throw NonDiscreteMeasure("functional calculus needs a discrete measure");
    if (!m.all_torsion()) throw NonTorsionAtom("functional calculus needs torsion atoms");
    const auto period = m.torsion_period();
    if (!period || *period > kMaxCirculantOrder) throw GroupTooLarge("cyclic group order exceeds 4096");
    const std::int64_t d = *period;

    std::vector<Scalar> g;
    g.reserve(static_cast<std::size_t>(d));
    for (std::int64_t n = 0; n < d; ++n) {
        const Scalar value = m.discrete_coefficient(n);
        if (!domain_check) {
            g.push_back(f(value));
            continue;
        }
        Scalar image;
        try {
            image = f(value);
        } catch (const std::exception& e) {
            throw DomainViolation("function undefined at character value " + value.str() + ": " + e.what());
        }
        const Complex z = image.numeric();
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainViolation("function not finite at character value " + value.str());
        g.push_back(image);
    }

    // Inverse transform: w_s = (1/D) Σ_n G(n) e^{2πi n s/D}.
    std::int64_t order = d;
    bool exact = true;
    for (const auto& v : g) {
        if (!v.is_exact()) {
            exact = false;
            break;
        }
        const std::int64_t o = v.exact().order();
        order = order / std::gcd(order, o) * o;
        if (Cyclotomic::normalized_order(order) > Cyclotomic::kMaxOrder) {
            exact = false;
            break;
        }
    }

    std::vector<Atom> atoms;
    if (exact) {
        const Rational inv_d(1, d);
        for (std::int64_t s = 0; s < d; ++s) {
            std::vector<std::pair<Rational, std::int64_t>> terms;
            for (std::int64_t n = 0; n < d; ++n) {
                const Cyclotomic& c = g[static_cast<std::size_t>(n)].exact();
                const std::int64_t lift = order / c.order();
                const std::int64_t base = mod(static_cast<__int128>(n) * s * (order / d), order);
                const auto coeffs = c.coefficients();
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    if (coeffs[i].is_zero()) continue;
                    terms.emplace_back(coeffs[i] * inv_d,
                                       mod(base + static_cast<__int128>(i) * lift, order));
                }
            }
            atoms.push_back(Atom{Cyclotomic::root_sum(static_cast<int>(order), terms), Angle::turns(s, d)});
        }
    } else {
        for (std::int64_t s = 0; s < d; ++s) {
            Complex w{0.0, 0.0};
            for (std::int64_t n = 0; n < d; ++n) {
                const std::int64_t e = mod(static_cast<__int128>(n) * s, d);
                w += g[static_cast<std::size_t>(n)].numeric() *
                     unimodular_from_turns(static_cast<long double>(e) / static_cast<long double>(d));
            }
            atoms.push_back(Atom{Scalar(w / static_cast<double>(d)), Angle::turns(s, d)});
        }
    }
    return Measure::from_parts(std::move(atoms), {});
}

double spectral_radius(const Measure& m) { return spectral_radius(spectrum(m)); }

}  // namespace measalg
