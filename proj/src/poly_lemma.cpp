#include "measalg/poly_lemma.hpp"

#include "measalg/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace measalg {

namespace {

constexpr long double kGapTol = 1e-12L;
constexpr std::int64_t kMaxHullIndex = 10000000;
constexpr long double kTwoPi = 6.283185307179586476925286766559L;

/// Circle positions of γⁿ for n = 0..N: integers mod q for torsion γ, turns otherwise.
struct HullPoints {
    bool torsion = false;
    std::int64_t q = 1;
    std::vector<std::int64_t> exact;
    std::vector<long double> turns;
};

template <class T>
class GapTracker {
public:
    explicit GapTracker(T period) : period_(period) {}

    void insert(T x) {
        if (points_.empty()) {
            points_.insert(x);
            gaps_.insert(period_);
            return;
        }
        if (!points_.insert(x).second) return;
        auto it = points_.find(x);
        const T prev = it == points_.begin() ? *points_.rbegin() - period_ : *std::prev(it);
        const T next = std::next(it) == points_.end() ? *points_.begin() + period_ : *std::next(it);
        gaps_.erase(gaps_.find(next - prev));
        gaps_.insert(x - prev);
        gaps_.insert(next - x);
    }

    T max_gap() const { return *gaps_.rbegin(); }

private:
    T period_;
    std::set<T> points_;
    std::multiset<T> gaps_;
};

std::int64_t residue(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

HullPoints hull_points(const Angle& gamma) {
    if (gamma.is_zero()) throw DegenerateEqualAngles("alpha and beta coincide");
    HullPoints hp;
    hp.torsion = gamma.is_torsion();
    if (hp.torsion) {
        hp.q = to_int64(gamma.rational_part().denominator());
        const std::int64_t p = residue(to_int64(gamma.rational_part().numerator()), hp.q);
        GapTracker<std::int64_t> gaps(hp.q);
        std::int64_t k = 0;
        for (std::int64_t n = 0;; ++n) {
            hp.exact.push_back(k);
            gaps.insert(k);
            if (2 * gaps.max_gap() <= hp.q) return hp;
            k = (k + p) % hp.q;
        }
    }
    GapTracker<long double> gaps(1.0L);
    for (std::int64_t n = 0; n <= kMaxHullIndex; ++n) {
        const long double t = phase_turns(gamma, n, default_generator_values());
        hp.turns.push_back(t);
        gaps.insert(t);
        if (gaps.max_gap() <= 0.5L + kGapTol) return hp;
    }
    throw Error("no hull index found below 10^7");
}

long double position(const HullPoints& hp, std::size_t n) {
    return hp.torsion ? static_cast<long double>(hp.exact[n]) / static_cast<long double>(hp.q) : hp.turns[n];
}

/// Oriented arc from a to b in turns, in [0,1).
long double arc(long double a, long double b) {
    long double d = b - a;
    d -= std::floor(d);
    return d;
}

struct Selection {
    std::vector<std::size_t> index;
    std::vector<long double> weight;
};

/// Barycentric weights of 0 in the triangle a, b, c (positions in turns).
std::array<long double, 3> triangle_weights(long double a, long double b, long double c) {
    std::array<long double, 3> w{std::sin(kTwoPi * (c - b)), std::sin(kTwoPi * (a - c)), std::sin(kTwoPi * (b - a))};
    const long double sum = w[0] + w[1] + w[2];
    for (auto& x : w) x = std::max(0.0L, x / sum);
    return w;
}

/// Two antipodal points or a triangle containing 0, always using the newest point.
Selection caratheodory(const HullPoints& hp) {
    const std::size_t n_last = hp.torsion ? hp.exact.size() - 1 : hp.turns.size() - 1;
    const long double z = position(hp, n_last);
    for (std::size_t j = 0; j < n_last; ++j) {
        const bool antipodal = hp.torsion ? 2 * residue(hp.exact[n_last] - hp.exact[j], hp.q) == hp.q
                                          : std::abs(arc(position(hp, j), z) - 0.5L) <= kGapTol;
        if (antipodal) return {{j, n_last}, {0.5L, 0.5L}};
    }
    Selection best;
    long double best_min = -1.0L;
    for (std::size_t j = 0; j < n_last; ++j) {
        for (std::size_t k = 0; k < n_last; ++k) {
            const long double a = arc(z, position(hp, j));
            const long double b = arc(z, position(hp, k));
            // j strictly in the first half turn after z, k strictly in the second, arc j→k at most half.
            if (!(a > 0.0L && a < 0.5L && b > 0.5L && b - a <= 0.5L + kGapTol)) continue;
            const auto w = triangle_weights(z, position(hp, j), position(hp, k));
            const long double mn = std::min({w[0], w[1], w[2]});
            if (mn > best_min) {
                best_min = mn;
                best = {{n_last, j, k}, {w[0], w[1], w[2]}};
            }
        }
    }
    if (best.index.empty()) throw Error("no Caratheodory subset found");
    return best;
}

/// 1/(ζ^t − ζ^{−t}) for ζ = e^{2πi/(2q)}, using 1/(η − 1) = (1/d) Σ_{k<d} k·ηᵏ for η of order d > 1.
Cyclotomic inverse_half_sine(std::int64_t t, std::int64_t q) {
    const std::int64_t two_q = 2 * q;
    const std::int64_t d = q / std::gcd(residue(t, q), q);
    std::vector<std::pair<Rational, std::int64_t>> terms;
    for (std::int64_t k = 1; k < d; ++k) terms.emplace_back(Rational(k, d), residue(t + 2 * t * k, two_q));
    return Cyclotomic::root_sum(static_cast<int>(two_q), terms);
}

/// ζ^t + ζ^{−t} for ζ = e^{2πi/(2q)}.
Cyclotomic half_cosine(std::int64_t t, std::int64_t q) {
    const std::int64_t two_q = 2 * q;
    return Cyclotomic::root_sum(static_cast<int>(two_q), {{Rational(1), residue(t, two_q)}, {Rational(1), residue(-t, two_q)}});
}

/// For arcs x + y + z = 0 the sines satisfy s(x)+s(y)+s(z) = h(x)h(y)h(z) with
/// s(t) = h(t)·(ζ^t + ζ^{−t}), so the weight of the point opposite x is
/// (ζ^x + ζ^{−x}) / (h(y)·h(z)).
std::vector<Scalar> exact_weights(const HullPoints& hp, const Selection& sel) {
    if (sel.index.size() == 2) return {Scalar(Rational(1, 2)), Scalar(Rational(1, 2))};
    const std::int64_t a = hp.exact[sel.index[0]];
    const std::int64_t b = hp.exact[sel.index[1]];
    const std::int64_t c = hp.exact[sel.index[2]];
    const std::array<std::int64_t, 3> arcs{c - b, a - c, b - a};
    std::array<Cyclotomic, 3> inv_h;
    for (std::size_t i = 0; i < 3; ++i) inv_h[i] = inverse_half_sine(arcs[i], hp.q);
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < 3; ++i)
        out.emplace_back(half_cosine(arcs[i], hp.q) * inv_h[(i + 1) % 3] * inv_h[(i + 2) % 3]);
    return out;
}

bool exact_path_available(const HullPoints& hp) {
    return hp.torsion && hp.q <= Cyclotomic::kMaxOrder &&
           Cyclotomic::root_of_unity(Rational(1, 2 * hp.q)).has_value();
}

}  // namespace

std::int64_t minimal_hull_index(const Angle& gamma) {
    const HullPoints hp = hull_points(gamma);
    return static_cast<std::int64_t>((hp.torsion ? hp.exact.size() : hp.turns.size()) - 1);
}

AnnihilatorPolynomial annihilator_polynomial(const Angle& alpha, const Angle& beta) {
    if (alpha == beta) throw DegenerateEqualAngles("alpha and beta coincide");
    const HullPoints hp = hull_points(alpha - beta);
    const Selection sel = caratheodory(hp);

    AnnihilatorPolynomial p;
    p.alpha = alpha;
    p.beta = beta;
    p.hull_index = static_cast<std::int64_t>((hp.torsion ? hp.exact.size() : hp.turns.size()) - 1);
    p.weights.assign(static_cast<std::size_t>(p.hull_index + 1), Scalar(0));
    if (exact_path_available(hp)) {
        const auto w = exact_weights(hp, sel);
        for (std::size_t i = 0; i < w.size(); ++i) p.weights[sel.index[i]] = w[i];
    } else if (sel.index.size() == 2) {
        for (const std::size_t i : sel.index) p.weights[i] = Scalar(Rational(1, 2));
    } else {
        for (std::size_t i = 0; i < sel.index.size(); ++i)
            p.weights[sel.index[i]] = Scalar(static_cast<double>(sel.weight[i]));
    }
    for (std::size_t j = 0; j < p.weights.size(); ++j)
        p.coefficients.push_back(p.weights[j].is_zero() ? Scalar(0)
                                                        : p.weights[j] * Scalar::unimodular(beta, -static_cast<std::int64_t>(j)));
    return p;
}

Scalar AnnihilatorPolynomial::l1_norm() const {
    Scalar sum(0);
    for (const auto& w : weights) sum += w;
    return sum;
}

Scalar AnnihilatorPolynomial::evaluate(const Angle& t) const {
    Scalar sum(0);
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        if (coefficients[j].is_zero()) continue;
        sum += coefficients[j] * Scalar::unimodular(t, static_cast<std::int64_t>(j));
    }
    return sum;
}

bool AnnihilatorPolynomial::is_exact() const {
    const auto exact = [](const Scalar& s) { return s.is_exact(); };
    return std::all_of(weights.begin(), weights.end(), exact) &&
           std::all_of(coefficients.begin(), coefficients.end(), exact);
}

Measure apply_polynomial_filter(const AnnihilatorPolynomial& p, const Measure& m) {
    if (!m.is_discrete()) throw NonDiscreteMeasure("polynomial filters act on discrete measures");
    Measure out;
    for (std::size_t j = 0; j < p.coefficients.size(); ++j) {
        if (p.coefficients[j].is_zero()) continue;
        out = linear_combine(1, out, p.coefficients[j], shift_automorphism(m, static_cast<std::int64_t>(j)));
    }
    return out;
}

namespace {

double tail_norm(const Measure& m, const Angle& target) {
    double sum = 0.0;
    for (const auto& a : m.atoms())
        if (a.position != target) sum += a.weight.abs();
    return sum;
}

}  // namespace

IsolationTrace isolate_atom(const Measure& m, std::size_t target_atom, std::size_t max_steps) {
    if (!m.is_discrete()) throw NonDiscreteMeasure("isolation needs a discrete measure");
    if (target_atom >= m.atoms().size()) throw std::out_of_range("target atom index out of range");
    const Atom& target = m.atoms()[target_atom];
    if (target.weight.is_zero() || target.weight.abs() == 0.0) throw TargetWeightZero("target atom has zero weight");

    std::map<Angle, std::size_t> original_index;
    for (std::size_t i = 0; i < m.atoms().size(); ++i) original_index[m.atoms()[i].position] = i;

    IsolationTrace trace;
    trace.target_atom = target_atom;
    trace.normalized_input = scaled(m, target.weight.inverse());
    trace.initial_tail_norm = tail_norm(trace.normalized_input, target.position);

    std::set<Angle> eliminated;
    Measure current = trace.normalized_input;
    while (trace.steps.size() < max_steps) {
        const Atom* pick = nullptr;
        for (const auto& a : current.atoms()) {
            if (a.position == target.position || eliminated.count(a.position)) continue;
            if (!pick || a.weight.abs() > pick->weight.abs()) pick = &a;
        }
        if (!pick) break;

        IsolationStep step;
        step.eliminated_atom = original_index.at(pick->position);
        step.polynomial = annihilator_polynomial(pick->position, target.position);
        eliminated.insert(pick->position);
        current = scaled(apply_polynomial_filter(step.polynomial, current), step.polynomial.l1_norm().inverse());
        step.measure_after = current;
        step.tail_norm = tail_norm(current, target.position);
        trace.steps.push_back(std::move(step));
    }

    trace.isolated = true;
    for (const auto& a : current.atoms()) {
        if (a.position == target.position) continue;
        if (!eliminated.count(a.position) || a.weight.abs() > 1e-9) trace.isolated = false;
    }
    return trace;
}

}  // namespace measalg
