#include "measalg/measure.hpp"

#include "measalg/errors.hpp"
#include "measalg/lattice.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

namespace measalg {

namespace detail {

/// Gaussian-rational weights at positions steps[k] / period.
struct RootSumTerms {
    std::int64_t period = 1;
    std::vector<Rational> re, im;
    std::vector<std::int64_t> steps;
};

/// Atoms sharing one generator part, with their rational parts as root-sum terms when exact.
struct AtomGroup {
    std::map<int, std::int64_t> coeffs;
    std::vector<Atom> atoms;
    std::optional<RootSumTerms> terms;
    std::vector<std::optional<Scalar>> table;
};

/// Per-measure lazily built data for fast discrete coefficients.
struct DiscreteCache {
    std::once_flag once;
    std::vector<AtomGroup> groups;

    std::mutex table_mutex;
};

}  // namespace detail

namespace {

constexpr std::int64_t kTableLimit = 2 * Cyclotomic::kMaxOrder;

std::optional<detail::RootSumTerms> root_sum_terms(const std::vector<Atom>& atoms) {
    mpz_class period = 1;
    for (const auto& a : atoms) {
        if (!a.weight.is_exact()) return std::nullopt;
        period = lcm(period, a.position.rational_part().denominator());
        if (period > kTableLimit) return std::nullopt;
    }
    if (Cyclotomic::normalized_order(period.get_si()) > Cyclotomic::kMaxOrder) return std::nullopt;
    detail::RootSumTerms t;
    t.period = period.get_si();
    for (const auto& a : atoms) {
        auto g = a.weight.exact().as_gaussian();
        if (!g) return std::nullopt;
        t.re.push_back(g->first);
        t.im.push_back(g->second);
        const Rational& q = a.position.rational_part();
        t.steps.push_back(q.numerator().get_si() * (t.period / q.denominator().get_si()));
    }
    return t;
}

void prepare(const std::vector<Atom>& atoms, detail::DiscreteCache& cache) {
    std::map<std::map<int, std::int64_t>, std::vector<Atom>> by_generator;
    for (const auto& a : atoms) by_generator[a.position.generator_coeffs()].push_back(a);
    for (auto& [coeffs, members] : by_generator) {
        detail::AtomGroup g;
        g.coeffs = coeffs;
        if (coeffs.empty() || members.size() > 1) g.terms = root_sum_terms(members);
        if (g.terms) g.table.assign(static_cast<std::size_t>(g.terms->period), std::nullopt);
        g.atoms = std::move(members);
        cache.groups.push_back(std::move(g));
    }
}

Scalar gaussian_root_sum(const detail::RootSumTerms& c, std::int64_t residue) {
    const auto order = static_cast<int>(c.period);
    std::vector<std::pair<Rational, std::int64_t>> re_terms, im_terms;
    for (std::size_t k = 0; k < c.steps.size(); ++k) {
        // e^{-2πi n q} with q = steps/period.
        const std::int64_t e = ((-residue * c.steps[k]) % c.period + c.period) % c.period;
        if (!c.re[k].is_zero()) re_terms.emplace_back(c.re[k], e);
        if (!c.im[k].is_zero()) im_terms.emplace_back(c.im[k], e);
    }
    Cyclotomic out = Cyclotomic::root_sum(order, re_terms);
    if (!im_terms.empty()) {
        const Cyclotomic im_sum = Cyclotomic::root_sum(order, im_terms);
        if (!im_sum.is_zero()) {
            const Cyclotomic i = Cyclotomic::gaussian(Rational{}, Rational(1));
            if (!Cyclotomic::common_order(out.order(), 4) || !Cyclotomic::common_order(im_sum.order(), 4))
                return Scalar(out.to_complex() + Complex(0, 1) * im_sum.to_complex());
            return out + im_sum * i;
        }
    }
    return out;
}

Scalar numeric_group_sum(const std::vector<Atom>& atoms, std::int64_t n) {
    Scalar exact_sum;
    Complex numeric_sum{0.0, 0.0};
    bool any_numeric = false;
    for (const auto& a : atoms) {
        const Scalar term = a.weight * Scalar::unimodular(Angle(a.position.rational_part()), -n);
        if (term.is_exact()) {
            const Scalar s = exact_sum + term;
            if (s.is_exact()) {
                exact_sum = s;
                continue;
            }
        }
        numeric_sum += term.numeric();
        any_numeric = true;
    }
    if (!any_numeric) return exact_sum;
    return exact_sum.numeric() + numeric_sum;
}

AcTable prune(AcTable t) {
    std::erase_if(t, [](const auto& kv) { return kv.second.is_zero(); });
    return t;
}

}  // namespace

Measure::Measure() : cache_(std::make_shared<detail::DiscreteCache>()) {}

Measure Measure::from_parts(std::vector<Atom> atoms, AcTable ac) {
    std::map<Angle, Scalar> merged;
    for (auto& a : atoms) {
        auto [it, inserted] = merged.try_emplace(a.position, a.weight);
        if (!inserted) it->second = it->second + a.weight;
    }
    Measure m;
    for (auto& [pos, w] : merged)
        if (!w.is_zero()) m.atoms_.push_back(Atom{w, pos});
    m.ac_ = prune(std::move(ac));
    return m;
}

Measure Measure::dirac(const Angle& a, const Scalar& weight) { return from_parts({Atom{weight, a}}, {}); }

Measure Measure::haar_cyclic(std::int64_t l) {
    if (l < 1) throw std::invalid_argument("haar_cyclic: order must be positive");
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(l));
    const Rational w(1, l);
    for (std::int64_t j = 0; j < l; ++j) atoms.push_back(Atom{w, Angle::turns(j, l)});
    return from_parts(std::move(atoms), {});
}

bool Measure::all_torsion() const {
    return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.position.is_torsion(); });
}

std::optional<std::int64_t> Measure::torsion_period() const {
    if (!all_torsion()) return std::nullopt;
    mpz_class period = 1;
    for (const auto& a : atoms_) period = lcm(period, a.position.rational_part().denominator());
    if (!period.fits_slong_p()) return std::nullopt;
    return period.get_si();
}

std::int64_t Measure::rational_period() const {
    mpz_class period = 1;
    for (const auto& a : atoms_) period = lcm(period, a.position.rational_part().denominator());
    return to_int64(period);
}

Scalar Measure::discrete_coefficient(std::int64_t n) const {
    if (atoms_.empty()) return Scalar{};
    auto& cache = *cache_;
    std::call_once(cache.once, [&] { prepare(atoms_, cache); });

    // Rational parts within a generator group are summed exactly, so
    // cancellations inside a group give an exact zero.
    Scalar exact_sum;
    Complex numeric_sum{0.0, 0.0};
    bool any_numeric = false;
    for (auto& g : cache.groups) {
        Scalar value;
        if (g.terms) {
            const auto r = static_cast<std::size_t>(((n % g.terms->period) + g.terms->period) % g.terms->period);
            std::optional<Scalar> cached;
            {
                std::lock_guard lock(cache.table_mutex);
                cached = g.table[r];
            }
            if (!cached) {
                cached = gaussian_root_sum(*g.terms, static_cast<std::int64_t>(r));
                std::lock_guard lock(cache.table_mutex);
                g.table[r] = cached;
            }
            value = *cached;
        } else if (g.coeffs.empty()) {
            value = numeric_group_sum(g.atoms, n);
        } else {
            Complex v{0.0, 0.0};
            for (const auto& a : g.atoms) v += a.weight.numeric() * Scalar::unimodular(a.position, -n).numeric();
            numeric_sum += v;
            any_numeric = true;
            continue;
        }
        if (value.is_zero()) continue;
        if (g.coeffs.empty() && value.is_exact()) {
            const Scalar s = exact_sum + value;
            if (s.is_exact()) {
                exact_sum = s;
                continue;
            }
        }
        Complex v = value.numeric();
        if (!g.coeffs.empty()) v *= Scalar::unimodular(Angle(Rational{}, g.coeffs), -n).numeric();
        numeric_sum += v;
        any_numeric = true;
    }
    if (!any_numeric) return exact_sum;
    return exact_sum.numeric() + numeric_sum;
}

Measure linear_combine(const Scalar& c1, const Measure& m1, const Scalar& c2, const Measure& m2) {
    std::vector<Atom> atoms;
    atoms.reserve(m1.atoms().size() + m2.atoms().size());
    if (!c1.is_zero())
        for (const auto& a : m1.atoms()) atoms.push_back(Atom{c1 * a.weight, a.position});
    if (!c2.is_zero())
        for (const auto& a : m2.atoms()) atoms.push_back(Atom{c2 * a.weight, a.position});
    AcTable ac;
    if (!c1.is_zero())
        for (const auto& [n, v] : m1.ac()) ac[n] = c1 * v;
    if (!c2.is_zero())
        for (const auto& [n, v] : m2.ac()) {
            auto [it, inserted] = ac.try_emplace(n, c2 * v);
            if (!inserted) it->second = it->second + c2 * v;
        }
    return Measure::from_parts(std::move(atoms), std::move(ac));
}

Measure scaled(const Measure& m, const Scalar& c) { return linear_combine(c, m, 0, Measure{}); }

Measure convolve(const Measure& m1, const Measure& m2) {
    std::vector<Atom> atoms;
    atoms.reserve(m1.atoms().size() * m2.atoms().size());
    for (const auto& a : m1.atoms())
        for (const auto& b : m2.atoms()) atoms.push_back(Atom{a.weight * b.weight, a.position + b.position});

    // (d1 + f1)(d2 + f2) has ac part d1·f2 + f1·d2 + f1·f2 coefficientwise.
    AcTable ac;
    for (const auto& [n, v] : m2.ac()) ac[n] = m1.discrete_coefficient(n) * v;
    for (const auto& [n, v] : m1.ac()) {
        Scalar term = v * m2.discrete_coefficient(n);
        if (auto it = m2.ac().find(n); it != m2.ac().end()) term = term + v * it->second;
        auto [slot, inserted] = ac.try_emplace(n, term);
        if (!inserted) slot->second = slot->second + term;
    }
    return Measure::from_parts(std::move(atoms), std::move(ac));
}

Measure involution(const Measure& m) {
    std::vector<Atom> atoms;
    atoms.reserve(m.atoms().size());
    for (const auto& a : m.atoms()) atoms.push_back(Atom{a.weight.conj(), -a.position});
    AcTable ac;
    for (const auto& [n, v] : m.ac()) ac[n] = v.conj();
    return Measure::from_parts(std::move(atoms), std::move(ac));
}

Scalar fourier_coefficient(const Measure& m, std::int64_t n) {
    Scalar out = m.discrete_coefficient(n);
    if (auto it = m.ac().find(n); it != m.ac().end()) out = out + it->second;
    return out;
}

Measure shift_automorphism(const Measure& m, std::int64_t k) {
    if (k == 0) return m;
    std::vector<Atom> atoms;
    atoms.reserve(m.atoms().size());
    for (const auto& a : m.atoms()) atoms.push_back(Atom{a.weight * Scalar::unimodular(a.position, k), a.position});
    AcTable ac;
    for (const auto& [n, v] : m.ac()) ac[checked_add(n, k)] = v;
    return Measure::from_parts(std::move(atoms), std::move(ac));
}

std::vector<Complex> sample_density(const AcTable& ac, std::size_t count) {
    std::vector<Complex> out(count, Complex{0, 0});
    if (ac.empty() || count == 0) return out;
    const std::int64_t lo = ac.begin()->first;
    const std::int64_t hi = ac.rbegin()->first;
    if (static_cast<std::uint64_t>(hi - lo) < count && (count & (count - 1)) == 0) {
        // f(j/M) = e^{2πi·lo·j/M} Σ_m c_{lo+m} e^{2πi·m·j/M}: one unscaled inverse FFT.
        std::vector<Complex> spectrum(count, Complex{0, 0});
        for (const auto& [n, v] : ac) spectrum[static_cast<std::size_t>(n - lo)] = v.numeric();
        Eigen::FFT<double> fft;
        fft.SetFlag(Eigen::FFT<double>::Unscaled);
        std::vector<Complex> values;
        fft.inv(values, spectrum);
        const auto m = static_cast<std::int64_t>(count);
        const std::int64_t lo_mod = ((lo % m) + m) % m;
        for (std::size_t j = 0; j < count; ++j) {
            const auto step = static_cast<long double>((lo_mod * static_cast<std::int64_t>(j)) % m) / m;
            out[j] = values[j] * unimodular_from_turns(step);
        }
        return out;
    }
    for (std::size_t j = 0; j < count; ++j) {
        Complex s{0, 0};
        for (const auto& [n, v] : ac) {
            const auto m = static_cast<std::int64_t>(count);
            const auto step = static_cast<long double>(((n % m + m) % m) * static_cast<std::int64_t>(j) % m) / m;
            s += v.numeric() * unimodular_from_turns(step);
        }
        out[j] = s;
    }
    return out;
}

double density_l1_norm(const AcTable& ac) {
    if (ac.empty()) return 0.0;
    double scale = 0.0;
    for (const auto& [n, v] : ac) scale += v.abs();

    const std::int64_t span = ac.rbegin()->first - ac.begin()->first + 1;
    constexpr std::size_t kMaxSamples = std::size_t{1} << 22;
    std::size_t samples = 4096;
    while (samples < kMaxSamples && static_cast<std::int64_t>(samples) < 8 * span) samples *= 2;

    if (static_cast<std::int64_t>(samples) >= 4 * span) {
        const auto values = sample_density(ac, samples);
        // A density of the form c·e^{ikt}·g(t) with g ≥ 0 has L¹ norm |ĝ(0)| = |c_k|;
        // candidates for k are 0 and the frequency of the largest coefficient.
        std::int64_t peak = ac.begin()->first;
        double peak_abs = -1.0;
        for (const auto& [n, v] : ac)
            if (v.abs() > peak_abs) { peak_abs = v.abs(); peak = n; }
        for (const std::int64_t k : {std::int64_t{0}, peak}) {
            const auto it = ac.find(k);
            if (it == ac.end()) continue;
            const Complex ck = it->second.numeric();
            const Complex unit = ck / std::abs(ck);
            const auto m = static_cast<std::int64_t>(samples);
            const std::int64_t k_mod = ((k % m) + m) % m;
            bool nonnegative = true;
            for (std::size_t j = 0; j < samples && nonnegative; ++j) {
                const auto step = static_cast<long double>((k_mod * static_cast<std::int64_t>(j)) % m) / m;
                const Complex g = std::conj(unit * unimodular_from_turns(step)) * values[j];
                if (g.real() < -1e-12 * scale || std::abs(g.imag()) > 1e-9 * scale) nonnegative = false;
            }
            if (nonnegative) return std::abs(ck);
        }
    }

    // General case: adaptive Gauss–Kronrod on subintervals of one period.
    std::vector<std::pair<double, Complex>> terms;
    for (const auto& [n, v] : ac) terms.emplace_back(static_cast<double>(n), v.numeric());
    auto density_abs = [&](double t) {
        Complex s{0, 0};
        for (const auto& [n, c] : terms) {
            const double phase = 2.0 * std::numbers::pi * (n * t - std::floor(n * t));
            s += c * Complex(std::cos(phase), std::sin(phase));
        }
        return std::abs(s);
    };
    double max_freq = 0.0;
    for (const auto& [n, c] : terms) max_freq = std::max(max_freq, std::abs(n));
    const int pieces = static_cast<int>(std::clamp(4.0 * max_freq, 16.0, 20000.0));
    double total = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const double a = static_cast<double>(p) / pieces;
        const double b = static_cast<double>(p + 1) / pieces;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(density_abs, a, b, 12, 1e-12);
    }
    return total;
}

double tv_norm(const Measure& m) {
    double total = 0.0;
    for (const auto& a : m.atoms()) total += a.weight.abs();
    return total + density_l1_norm(m.ac());
}

}  // namespace measalg
