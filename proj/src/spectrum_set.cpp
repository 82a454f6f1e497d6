#include "measalg/spectrum_set.hpp"

#include "measalg/quasirandom.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <unordered_map>

namespace measalg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDropTol = 1e-12;
constexpr double kHausdorffFloor = 1e-12;
constexpr double kEquivalenceTol = 1e-9;

Complex unit(double turns) { return std::polar(1.0, kTwoPi * (turns - std::floor(turns))); }

double dot_turns(const IntVector& x, std::span<const double> phi) {
    long double s = 0.0L;
    for (std::size_t k = 0; k < x.size(); ++k) s += static_cast<long double>(x[k]) * phi[k];
    return static_cast<double>(s - std::floor(s));
}

Point add(const Point& a, const Point& b) { return Point{a[0] + b[0], a[1] + b[1]}; }
Point scale(const Point& a, Complex s) { return Point{a[0] * s, a[1] * s}; }

bool lex_less(const Point& a, const Point& b) {
    for (int c = 0; c < 2; ++c) {
        if (a[c].real() != b[c].real()) return a[c].real() < b[c].real();
        if (a[c].imag() != b[c].imag()) return a[c].imag() < b[c].imag();
    }
    return false;
}

std::vector<Point> dedupe_points(std::vector<Point> pts, double tol) {
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<Point> kept;
    for (const auto& p : pts) {
        bool dup = false;
        for (std::size_t i = kept.size(); i-- > 0;) {
            if (p[0].real() - kept[i][0].real() > tol) break;
            if (point_distance(p, kept[i]) <= tol) { dup = true; break; }
        }
        if (!dup) kept.push_back(p);
    }
    return kept;
}

/// Coordinates of v in the echelon basis (v must lie in its lattice).
IntVector coordinates_in(const std::vector<IntVector>& basis, IntVector v) {
    IntVector coords(basis.size(), 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::size_t p = 0;
        while (basis[k][p] == 0) ++p;
        const std::int64_t c = v[p] / basis[k][p];
        coords[k] = c;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(v[i], checked_mul(-c, basis[k][i]));
    }
    return coords;
}

/// Canonical form of a torus cell; nullopt when it degenerates to its constant.
/// Merged and reduced form; a cell whose terms all cancel comes back with no terms.
TorusCell canonical(const TorusCell& cell) {
    double scale = point_norm(cell.constant);
    for (const auto& t : cell.terms) scale += point_norm(t.coeff);
    const double drop = kDropTol * std::max(1.0, scale);

    std::map<IntVector, Point> merged;
    TorusCell out;
    out.constant = cell.constant;
    out.label = cell.label;
    for (const auto& t : cell.terms) {
        if (std::all_of(t.exponent.begin(), t.exponent.end(), [](std::int64_t x) { return x == 0; })) {
            out.constant = add(out.constant, t.coeff);
            continue;
        }
        auto [it, inserted] = merged.try_emplace(t.exponent, t.coeff);
        if (!inserted) it->second = add(it->second, t.coeff);
    }
    std::vector<IntVector> exps;
    std::vector<Point> coeffs;
    for (const auto& [e, c] : merged) {
        if (point_norm(c) <= drop) continue;
        exps.push_back(e);
        coeffs.push_back(c);
    }
    if (exps.empty()) return out;
    const std::size_t p = exps.front().size();
    const auto basis = hermite_normal_form(exps, p);
    out.params = basis.size();
    for (std::size_t j = 0; j < exps.size(); ++j) out.terms.push_back(TorusTerm{coeffs[j], coordinates_in(basis, exps[j])});
    std::sort(out.terms.begin(), out.terms.end(),
              [](const TorusTerm& a, const TorusTerm& b) { return a.exponent < b.exponent; });
    return out;
}

std::vector<std::vector<double>> grid_starts(std::size_t params) {
    const std::size_t count = params <= 1 ? 64 : (params == 2 ? 256 : 512);
    return QuasiRandom(params, 0x5eedULL + params).points(count);
}

/// Local least-squares minimization of |g(φ) − z| from a start point.
double refine_distance(const TorusCell& cell, const Point& z, int arity, std::vector<double> phi) {
    const std::size_t p = cell.params;
    const int rows = 2 * arity;
    auto residual = [&](const std::vector<double>& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        Point g = cell.constant;
        if (jac) jac->setZero(rows, static_cast<Eigen::Index>(p));
        for (const auto& t : cell.terms) {
            const Complex e = unit(dot_turns(t.exponent, x));
            for (int c = 0; c < arity; ++c) {
                const Complex v = t.coeff[static_cast<std::size_t>(c)] * e;
                g[static_cast<std::size_t>(c)] += v;
                if (jac) {
                    const Complex dv = v * Complex(0.0, kTwoPi);
                    for (std::size_t k = 0; k < p; ++k) {
                        (*jac)(2 * c, static_cast<Eigen::Index>(k)) += dv.real() * static_cast<double>(t.exponent[k]);
                        (*jac)(2 * c + 1, static_cast<Eigen::Index>(k)) += dv.imag() * static_cast<double>(t.exponent[k]);
                    }
                }
            }
        }
        r.resize(rows);
        for (int c = 0; c < arity; ++c) {
            const Complex d = g[static_cast<std::size_t>(c)] - z[static_cast<std::size_t>(c)];
            r(2 * c) = d.real();
            r(2 * c + 1) = d.imag();
        }
    };
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    residual(phi, r, &jac);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < 100 && cost > 1e-30; ++it) {
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd grad = jac.transpose() * r;
        Eigen::MatrixXd lhs = jtj;
        for (Eigen::Index k = 0; k < lhs.rows(); ++k) lhs(k, k) += lambda * (1.0 + jtj(k, k));
        const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
        std::vector<double> trial = phi;
        for (std::size_t k = 0; k < p; ++k) trial[k] += step(static_cast<Eigen::Index>(k));
        Eigen::VectorXd rt;
        residual(trial, rt, nullptr);
        const double trial_cost = rt.squaredNorm();
        if (trial_cost < cost) {
            const double gain = cost - trial_cost;
            phi = std::move(trial);
            cost = trial_cost;
            residual(phi, r, &jac);
            lambda = std::max(lambda * 0.3, 1e-12);
            if (gain <= 1e-32 && step.norm() < 1e-14) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }
    return std::sqrt(cost);
}

Point evaluate_cell(const TorusCell& cell, std::span<const double> phi) { return cell.evaluate(phi); }

double annulus_distance(const Annulus& a, Complex z) {
    const double d = std::abs(z - a.center);
    if (d > a.outer) return d - a.outer;
    if (d < a.inner) return a.inner - d;
    return 0.0;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Unimodular phase ratio λ with b ≈ λ·a componentwise, if it exists.
std::optional<double> phase_ratio(const Point& a, const Point& b, int arity, double tol) {
    std::optional<double> turns;
    for (int c = 0; c < arity; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        if (!near(std::abs(a[ci]), std::abs(b[ci]), tol)) return std::nullopt;
        if (std::abs(a[ci]) <= tol) continue;
        const double t = std::arg(b[ci] / a[ci]) / kTwoPi;
        if (!turns) {
            turns = t;
        } else if (std::abs(unit(t) - unit(*turns)) * std::abs(a[ci]) > tol) {
            return std::nullopt;
        }
    }
    return turns.value_or(0.0);
}

bool tori_equivalent(const TorusCell& a, const TorusCell& b, int arity, double tol) {
    if (point_distance(a.constant, b.constant) > tol) return false;
    if (a.terms.size() != b.terms.size()) return false;
    const auto an_a = a.annulus(arity);
    const auto an_b = b.annulus(arity);
    if (an_a && an_b)
        return near(an_a->inner, an_b->inner, tol) && near(an_a->outer, an_b->outer, tol);
    if (an_a.has_value() != an_b.has_value()) return false;

    const auto rel_a = a.relations();
    const auto rel_b = b.relations();
    if (rel_a.size() != rel_b.size()) return false;
    const std::size_t n = a.terms.size();
    std::vector<int> perm(n, -1);
    std::vector<bool> used(n, false);
    std::vector<double> lambda(n, 0.0);

    auto check = [&]() {
        for (const auto& m : rel_a) {
            // Relation transported to b's term order.
            IntVector moved(n, 0);
            for (std::size_t j = 0; j < n; ++j) moved[static_cast<std::size_t>(perm[j])] = m[j];
            IntVector image(b.params, 0);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < b.params; ++k)
                    image[k] = checked_add(image[k], checked_mul(moved[j], b.terms[j].exponent[k]));
            if (std::any_of(image.begin(), image.end(), [](std::int64_t x) { return x != 0; })) return false;
            long double phase = 0.0L;
            double weight = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                phase += static_cast<long double>(m[j]) * lambda[j];
                weight += std::abs(static_cast<double>(m[j]));
            }
            const double frac = static_cast<double>(phase - std::floor(phase + 0.5L));
            if (std::abs(frac) > tol * weight) return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t j) {
        if (j == n) return check();
        for (std::size_t k = 0; k < n; ++k) {
            if (used[k]) continue;
            const auto ratio = phase_ratio(a.terms[j].coeff, b.terms[k].coeff, arity, tol);
            if (!ratio) continue;
            used[k] = true;
            perm[j] = static_cast<int>(k);
            lambda[j] = *ratio;
            if (assign(j + 1)) return true;
            used[k] = false;
        }
        return false;
    };
    return assign(0);
}

bool annulus_contains(const Annulus& big, const Annulus& small, double tol) {
    const double d = std::abs(big.center - small.center);
    if (d + small.outer > big.outer + tol) return false;
    double closest = 0.0;
    if (d < small.inner) closest = small.inner - d;
    else if (d > small.outer) closest = d - small.outer;
    return closest >= big.inner - tol;
}

bool same_points(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        const bool found = std::any_of(b.begin(), b.end(), [&](const Point& q) { return point_distance(p, q) <= tol; });
        if (!found) return false;
    }
    for (const auto& q : b) {
        const bool found = std::any_of(a.begin(), a.end(), [&](const Point& p) { return point_distance(p, q) <= tol; });
        if (!found) return false;
    }
    return true;
}

/// Nearest-neighbour distances in ℂ through a uniform bucket grid.
class PlaneGrid {
public:
    explicit PlaneGrid(const std::vector<Point>& pts) : pts_(pts) {
        double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
        for (const auto& p : pts) {
            lo_x = std::min(lo_x, p[0].real()); hi_x = std::max(hi_x, p[0].real());
            lo_y = std::min(lo_y, p[0].imag()); hi_y = std::max(hi_y, p[0].imag());
        }
        origin_ = {lo_x, lo_y};
        const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
        cells_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::sqrt(static_cast<double>(pts.size()))));
        size_ = extent / static_cast<double>(cells_) * (1.0 + 1e-12);
        for (std::size_t i = 0; i < pts.size(); ++i) buckets_[key(cell_of(pts[i][0]))].push_back(i);
    }

    double nearest(Complex z) const {
        const auto [cx, cy] = cell_of(z);
        double best = 1e300;
        for (std::int64_t ring = 0;; ++ring) {
            for (std::int64_t dx = -ring; dx <= ring; ++dx)
                for (std::int64_t dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::llabs(dx), std::llabs(dy)) != ring) continue;
                    auto it = buckets_.find(key({cx + dx, cy + dy}));
                    if (it == buckets_.end()) continue;
                    for (auto i : it->second) best = std::min(best, std::abs(pts_[i][0] - z));
                }
            // Every point outside the scanned rings is at least ring·size away.
            if (best <= static_cast<double>(ring) * size_) return best;
            if (ring > 2 * cells_ + 4 + static_cast<std::int64_t>(std::abs(z - origin_) / size_)) return best;
        }
    }

private:
    std::pair<std::int64_t, std::int64_t> cell_of(Complex z) const {
        return {static_cast<std::int64_t>(std::floor((z.real() - origin_.real()) / size_)),
                static_cast<std::int64_t>(std::floor((z.imag() - origin_.imag()) / size_))};
    }
    static std::int64_t key(std::pair<std::int64_t, std::int64_t> c) { return c.first * 1'000'003LL + c.second; }

    const std::vector<Point>& pts_;
    Complex origin_;
    std::int64_t cells_ = 1;
    double size_ = 1.0;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

double point_distance(const Point& a, const Point& b) {
    return std::sqrt(std::norm(a[0] - b[0]) + std::norm(a[1] - b[1]));
}

double point_norm(const Point& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1])); }

std::size_t TorusCell::dimension() const {
    std::vector<IntVector> exps;
    for (const auto& t : terms) exps.push_back(t.exponent);
    return integer_rank(exps, params);
}

Point TorusCell::evaluate(std::span<const double> phi) const {
    Point out = constant;
    for (const auto& t : terms) out = add(out, scale(t.coeff, unit(dot_turns(t.exponent, phi))));
    return out;
}

std::vector<IntVector> TorusCell::relations() const {
    IntMatrix m(params, terms.size());
    for (std::size_t j = 0; j < terms.size(); ++j)
        for (std::size_t k = 0; k < params; ++k) m(k, j) = terms[j].exponent[k];
    return integer_kernel(m);
}

std::optional<Annulus> TorusCell::annulus(int arity) const {
    if (arity != 1 || terms.empty() || !relations().empty()) return std::nullopt;
    double sum = 0.0, top = 0.0;
    for (const auto& t : terms) {
        const double r = std::abs(t.coeff[0]);
        sum += r;
        top = std::max(top, r);
    }
    return Annulus{constant[0], std::max(0.0, 2.0 * top - sum), sum};
}

void SpectrumSet::add_point(const Point& p) {
    if (!cells_.empty() && std::holds_alternative<PointCell>(cells_.front())) {
        std::get<PointCell>(cells_.front()).points.push_back(p);
        return;
    }
    cells_.insert(cells_.begin(), PointCell{{p}});
}

void SpectrumSet::add_torus(TorusCell cell) { cells_.emplace_back(std::move(cell)); }

void SpectrumSet::merge(const SpectrumSet& other) {
    for (const auto& c : other.cells_) {
        if (const auto* pc = std::get_if<PointCell>(&c)) {
            for (const auto& p : pc->points) add_point(p);
        } else {
            add_torus(std::get<TorusCell>(c));
        }
    }
}

std::vector<Point> SpectrumSet::finite_points() const {
    std::vector<Point> out;
    for (const auto& c : cells_)
        if (const auto* pc = std::get_if<PointCell>(&c)) out.insert(out.end(), pc->points.begin(), pc->points.end());
    return out;
}

std::vector<const TorusCell*> SpectrumSet::tori() const {
    std::vector<const TorusCell*> out;
    for (const auto& c : cells_)
        if (const auto* tc = std::get_if<TorusCell>(&c)) out.push_back(tc);
    return out;
}

SpectrumSet SpectrumSet::normalized(double tol) const {
    std::vector<Point> points = finite_points();
    std::vector<TorusCell> tori;
    for (const auto* t : this->tori()) {
        TorusCell c = canonical(*t);
        if (c.terms.empty()) {
            points.push_back(c.constant);
        } else {
            tori.push_back(std::move(c));
        }
    }
    // Drop duplicate tori and annuli inside other annuli.
    std::vector<TorusCell> kept;
    for (auto& t : tori) {
        const bool dup = std::any_of(kept.begin(), kept.end(), [&](const TorusCell& k) { return tori_equivalent(k, t, arity_, tol); });
        if (!dup) kept.push_back(std::move(t));
    }
    std::vector<bool> drop(kept.size(), false);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto small = kept[i].annulus(arity_);
        if (!small) continue;
        for (std::size_t j = 0; j < kept.size() && !drop[i]; ++j) {
            if (i == j || drop[j]) continue;
            if (const auto big = kept[j].annulus(arity_); big && annulus_contains(*big, *small, tol)) drop[i] = true;
        }
    }
    SpectrumSet out(arity_);
    for (std::size_t i = 0; i < kept.size(); ++i)
        if (!drop[i]) out.cells_.emplace_back(std::move(kept[i]));
    std::sort(out.cells_.begin(), out.cells_.end(), [](const Cell& x, const Cell& y) {
        const auto& a = std::get<TorusCell>(x);
        const auto& b = std::get<TorusCell>(y);
        if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
        return lex_less(a.constant, b.constant);
    });

    points = dedupe_points(std::move(points), 1e-12);
    std::vector<Point> free;
    for (const auto& p : points) {
        bool absorbed = false;
        for (const auto& c : out.cells_) {
            if (torus_distance(std::get<TorusCell>(c), p, arity_) <= tol) { absorbed = true; break; }
        }
        if (!absorbed) free.push_back(p);
    }
    if (!free.empty()) out.cells_.insert(out.cells_.begin(), PointCell{std::move(free)});
    return out;
}

std::vector<std::vector<Point>> SpectrumSet::sample(std::size_t per_cell, std::uint64_t seed) const {
    std::vector<std::vector<Point>> out;
    std::uint64_t index = 0;
    for (const auto& c : cells_) {
        ++index;
        if (const auto* pc = std::get_if<PointCell>(&c)) {
            out.push_back(pc->points);
            continue;
        }
        const auto& t = std::get<TorusCell>(c);
        std::vector<Point> pts;
        if (t.params == 0) {
            pts.push_back(t.constant);
        } else {
            const QuasiRandom q(t.params, seed * 0x9E3779B97F4A7C15ULL + index);
            pts.reserve(per_cell);
            for (std::size_t n = 0; n < per_cell; ++n) {
                const auto phi = q.point(n);
                pts.push_back(evaluate_cell(t, phi));
            }
        }
        out.push_back(std::move(pts));
    }
    return out;
}

double torus_distance(const TorusCell& cell, const Point& z, int arity) {
    if (const auto a = cell.annulus(arity)) return annulus_distance(*a, z[0]);
    if (cell.params == 0) return point_distance(cell.constant, z);
    const auto starts = grid_starts(cell.params);
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i)
        ranked.emplace_back(point_distance(cell.evaluate(starts[i]), z), i);
    const std::size_t keep = std::min<std::size_t>(6, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
    double best = ranked.front().first;
    for (std::size_t i = 0; i < keep && best > 0.0; ++i)
        best = std::min(best, refine_distance(cell, z, arity, starts[ranked[i].second]));
    return best;
}

double SpectrumSet::distance(const Point& z) const { return bounded_distance(*this, z, 0.0); }

double bounded_distance(const SpectrumSet& s, const Point& z, double cutoff) {
    double best = 1e300;
    std::vector<std::pair<double, const TorusCell*>> ranked;
    for (const auto& c : s.cells()) {
        if (const auto* pc = std::get_if<PointCell>(&c)) {
            for (const auto& p : pc->points) best = std::min(best, point_distance(p, z));
            continue;
        }
        const auto& t = std::get<TorusCell>(c);
        double reach = 0.0;
        for (const auto& term : t.terms) reach += point_norm(term.coeff);
        ranked.emplace_back(std::max(0.0, point_distance(t.constant, z) - reach), &t);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [lower, t] : ranked) {
        if (best <= cutoff || lower >= best) break;
        best = std::min(best, torus_distance(*t, z, s.arity()));
    }
    return best;
}

namespace {

/// One-sided sampled distance sup_{p ∈ a} d(p, b). Tori of a with an
/// equivalent torus in b contribute nothing beyond the equivalence tolerance.
double directed_hausdorff(const SpectrumSet& a, const SpectrumSet& b, std::size_t samples, std::uint64_t seed,
                          double h) {
    const auto cells = a.sample(samples, seed);
    const auto tb = b.tori();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (const auto* t = std::get_if<TorusCell>(&a.cells()[i])) {
            const bool has_partner = std::any_of(tb.begin(), tb.end(), [&](const TorusCell* u) {
                return tori_equivalent(*t, *u, a.arity(), kEquivalenceTol);
            });
            if (has_partner) continue;
        }
        for (const auto& p : cells[i]) h = std::max(h, bounded_distance(b, p, std::max(h, kHausdorffFloor)));
    }
    return h;
}

}  // namespace

SpectrumSet SpectrumSet::product_map() const {
    SpectrumSet out(1);
    for (const auto& c : cells_) {
        if (const auto* pc = std::get_if<PointCell>(&c)) {
            for (const auto& p : pc->points) out.add_point(make_point(p[0] * p[1]));
            continue;
        }
        const auto& t = std::get<TorusCell>(c);
        // (c0 + Σ a_j e_j)(d0 + Σ b_k e_k), expanded into exponent sums.
        TorusCell prod;
        prod.params = t.params;
        prod.label = t.label;
        prod.constant = make_point(t.constant[0] * t.constant[1]);
        for (const auto& term : t.terms) {
            prod.terms.push_back(TorusTerm{make_point(t.constant[0] * term.coeff[1] + t.constant[1] * term.coeff[0]), term.exponent});
            for (const auto& other : t.terms) {
                IntVector e(t.params);
                for (std::size_t k = 0; k < t.params; ++k) e[k] = checked_add(term.exponent[k], other.exponent[k]);
                prod.terms.push_back(TorusTerm{make_point(term.coeff[0] * other.coeff[1]), std::move(e)});
            }
        }
        out.add_torus(std::move(prod));
    }
    return out;
}

SpectrumSet SpectrumSet::conjugated() const {
    SpectrumSet out(arity_);
    auto conj_point = [](const Point& p) { return Point{std::conj(p[0]), std::conj(p[1])}; };
    for (const auto& c : cells_) {
        if (const auto* pc = std::get_if<PointCell>(&c)) {
            for (const auto& p : pc->points) out.add_point(conj_point(p));
            continue;
        }
        TorusCell t = std::get<TorusCell>(c);
        t.constant = conj_point(t.constant);
        for (auto& term : t.terms) {
            term.coeff = conj_point(term.coeff);
            for (auto& x : term.exponent) x = -x;
        }
        out.add_torus(std::move(t));
    }
    return out;
}

bool structurally_equal(const SpectrumSet& a, const SpectrumSet& b, double tol) {
    if (a.arity() != b.arity()) return false;
    const SpectrumSet na = a.normalized(tol);
    const SpectrumSet nb = b.normalized(tol);
    if (!same_points(na.finite_points(), nb.finite_points(), tol)) return false;
    const auto ta = na.tori();
    const auto tb = nb.tori();
    if (ta.size() != tb.size()) return false;
    for (const auto* x : ta)
        if (std::none_of(tb.begin(), tb.end(), [&](const TorusCell* y) { return tori_equivalent(*x, *y, a.arity(), tol); }))
            return false;
    for (const auto* y : tb)
        if (std::none_of(ta.begin(), ta.end(), [&](const TorusCell* x) { return tori_equivalent(*x, *y, a.arity(), tol); }))
            return false;
    return true;
}

double sampled_hausdorff(const SpectrumSet& a, const SpectrumSet& b, std::size_t samples, std::uint64_t seed) {
    double h = 0.0;
    h = directed_hausdorff(a, b, samples, seed, h);
    return directed_hausdorff(b, a, samples, seed + 1, h);
}

double cloud_hausdorff(const std::vector<Point>& cloud, const SpectrumSet& s, std::size_t samples, std::uint64_t seed) {
    double h = 0.0;
    for (const auto& p : cloud) h = std::max(h, bounded_distance(s, p, std::max(h, kHausdorffFloor)));
    const auto cells = s.sample(samples, seed);
    if (s.arity() == 1) {
        const PlaneGrid grid(cloud);
        for (const auto& cell : cells)
            for (const auto& p : cell) h = std::max(h, grid.nearest(p[0]));
    } else {
        for (const auto& cell : cells)
            for (const auto& p : cell) {
                double best = 1e300;
                for (const auto& q : cloud) best = std::min(best, point_distance(p, q));
                h = std::max(h, best);
            }
    }
    return h;
}

double spectral_radius(const SpectrumSet& s, std::uint64_t seed) {
    const SpectrumSet n = s.normalized();
    double best = 0.0;
    for (const auto& p : n.finite_points()) best = std::max(best, std::abs(p[0]));
    const auto tori = n.tori();
    std::size_t general = 0;
    for (const auto* t : tori) {
        if (const auto a = t->annulus(1)) {
            best = std::max(best, std::abs(a->center) + a->outer);
        } else {
            ++general;
        }
    }
    if (general == 0) return best;
    const std::size_t budget = std::max<std::size_t>(10'000, 100'000 / general);
    for (const auto* t : tori) {
        if (t->annulus(1)) continue;
        double upper = std::abs(t->constant[0]);
        for (const auto& term : t->terms) upper += std::abs(term.coeff[0]);
        auto modulus = [&](const std::vector<double>& phi) { return std::abs(t->evaluate(phi)[0]); };

        // Lower bound from dense quasi-random sampling.
        const QuasiRandom q(t->params, seed + 17);
        std::vector<std::pair<double, std::vector<double>>> top;
        double lower = 0.0;
        for (std::size_t i = 0; i < budget; ++i) {
            auto phi = q.point(i);
            const double v = modulus(phi);
            lower = std::max(lower, v);
            if (top.size() < 64) {
                top.emplace_back(v, std::move(phi));
                std::push_heap(top.begin(), top.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
            } else if (v > top.front().first) {
                std::pop_heap(top.begin(), top.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
                top.back() = {v, std::move(phi)};
                std::push_heap(top.begin(), top.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
            }
        }
        // Coordinate ascent from the 64 best samples.
        double refined = lower;
        for (auto& [value, phi] : top) {
            double current = value;
            for (int sweep = 0; sweep < 50; ++sweep) {
                const double before = current;
                for (std::size_t k = 0; k < phi.size(); ++k) {
                    auto f = [&](double x) {
                        std::vector<double> trial = phi;
                        trial[k] = x;
                        return -modulus(trial);
                    };
                    const auto r = boost::math::tools::brent_find_minima(f, phi[k] - 0.5, phi[k] + 0.5, 52);
                    if (-r.second > current) {
                        current = -r.second;
                        phi[k] = r.first;
                    }
                }
                if (current - before <= 1e-15 * std::max(1.0, current)) break;
            }
            refined = std::max(refined, current);
        }
        if (refined >= upper * (1.0 - 1e-12)) refined = upper;
        best = std::max(best, refined);
    }
    return best;
}

std::vector<Point> isolated_points(const SpectrumSet& s, double separation) {
    const SpectrumSet n = s.normalized();
    const auto pts = n.finite_points();
    const auto tori = n.tori();
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool isolated = true;
        for (std::size_t j = 0; j < pts.size() && isolated; ++j)
            if (i != j && point_distance(pts[i], pts[j]) < separation) isolated = false;
        for (const auto* t : tori) {
            if (!isolated) break;
            if (torus_distance(*t, pts[i], n.arity()) < separation) isolated = false;
        }
        if (isolated) out.push_back(pts[i]);
    }
    return out;
}

}  // namespace measalg
