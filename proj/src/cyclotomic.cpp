#include "measalg/cyclotomic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace measalg {

namespace {

struct CyclotomicPolynomial {
    int degree = 0;
    // Φ_N(x) = x^degree + Σ coeff·x^power over the nonzero lower terms.
    std::vector<std::pair<int, std::int64_t>> lower_terms;
    std::vector<std::int64_t> dense;  // all coefficients, low to high
};

std::vector<std::int64_t> exact_divide(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
    // Both monic, exact division.
    const std::size_t dn = den.size() - 1;
    std::vector<std::int64_t> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const std::int64_t c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t t = 0; t <= dn; ++t) num[i - dn + t] -= c * den[t];
    }
    return q;
}

const std::vector<CyclotomicPolynomial>& table() {
    static const std::vector<CyclotomicPolynomial> polys = [] {
        std::vector<CyclotomicPolynomial> out(Cyclotomic::kMaxOrder + 1);
        for (int n = 1; n <= Cyclotomic::kMaxOrder; ++n) {
            std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
            p[0] = -1;
            p[static_cast<std::size_t>(n)] = 1;
            for (int d = 1; d < n; ++d) {
                if (n % d == 0) p = exact_divide(std::move(p), out[static_cast<std::size_t>(d)].dense);
            }
            auto& entry = out[static_cast<std::size_t>(n)];
            entry.dense = p;
            entry.degree = static_cast<int>(p.size()) - 1;
            for (int i = 0; i < entry.degree; ++i)
                if (p[static_cast<std::size_t>(i)] != 0) entry.lower_terms.emplace_back(i, p[static_cast<std::size_t>(i)]);
        }
        return out;
    }();
    return polys;
}

const CyclotomicPolynomial& phi_poly(int n) {
    if (n < 1 || n > Cyclotomic::kMaxOrder) throw std::out_of_range("cyclotomic order out of range");
    return table()[static_cast<std::size_t>(n)];
}

/// Reduces a dense polynomial modulo Φ_n in place and truncates to φ(n) entries.
template <typename T>
void reduce_in_place(std::vector<T>& a, int n) {
    const auto& poly = phi_poly(n);
    const auto deg = static_cast<std::size_t>(poly.degree);
    for (std::size_t i = a.size(); i-- > deg;) {
        if (a[i] == 0) continue;
        const T c = a[i];
        for (const auto& [power, coeff] : poly.lower_terms) a[i - deg + static_cast<std::size_t>(power)] -= c * T(coeff);
        a[i] = 0;
    }
    a.resize(deg);
}

std::complex<long double> root_ld(int n, long k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / n;
    return {std::cos(angle), std::sin(angle)};
}

// Polynomial helpers over ℚ for the extended Euclidean algorithm.
using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    if (num.size() < den.size()) return {Poly{}, num};
    Poly q(num.size() - den.size() + 1);
    const mpq_class& lead = den.back();
    for (std::size_t i = num.size(); i-- >= den.size();) {
        if (num[i] == 0) continue;
        const mpq_class c = num[i] / lead;
        q[i - den.size() + 1] = c;
        for (std::size_t t = 0; t < den.size(); ++t) num[i - den.size() + 1 + t] -= c * den[t];
    }
    trim(q);
    trim(num);
    return {q, num};
}

}  // namespace

Cyclotomic::Cyclotomic(int order, std::vector<mpq_class> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    shrink();
}

void Cyclotomic::shrink() {
    if (order_ == 1) return;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return;
    coeffs_.resize(1);
    order_ = 1;
}

int Cyclotomic::normalized_order(long q) {
    if (q % 4 == 2) return static_cast<int>(q / 2);
    return static_cast<int>(q);
}

std::optional<int> Cyclotomic::common_order(int a, int b) {
    const long l = std::lcm(static_cast<long>(a), static_cast<long>(b));
    if (l > kMaxOrder) return std::nullopt;
    return static_cast<int>(l);
}

Cyclotomic Cyclotomic::gaussian(const Rational& re, const Rational& im) {
    if (im.is_zero()) return Cyclotomic(re);
    // In ℚ(ζ_4) the power basis is {1, i}.
    return Cyclotomic(4, {re.raw(), im.raw()});
}

std::optional<Cyclotomic> Cyclotomic::root_of_unity(const Rational& turns) {
    const Rational t = turns.frac();
    const mpz_class den = t.denominator();
    if (den > kMaxOrder) return std::nullopt;
    long q = den.get_si();
    long p = t.numerator().get_si();
    mpq_class sign = 1;
    if (q % 4 == 2) {
        // ζ_q^p with q = 2m, m odd, equals ±ζ_m^{e}.
        const long m = q / 2;
        if (p % 2 != 0) {
            sign = -1;
            p -= m;
        }
        p = ((p / 2) % m + m) % m;
        q = m;
    }
    const int n = static_cast<int>(q);
    std::vector<mpq_class> dense(static_cast<std::size_t>(n));
    dense[static_cast<std::size_t>(p)] = sign;
    reduce_in_place(dense, n);
    return Cyclotomic(n, std::move(dense));
}

Cyclotomic Cyclotomic::from_power_coefficients(int order, const std::vector<Rational>& coeffs) {
    order = normalized_order(order);
    if (order < 1 || order > kMaxOrder) throw std::out_of_range("cyclotomic order out of range");
    std::vector<mpq_class> dense(std::max<std::size_t>(coeffs.size(), static_cast<std::size_t>(order)));
    for (std::size_t i = 0; i < coeffs.size(); ++i) dense[i % static_cast<std::size_t>(order)] += coeffs[i].raw();
    dense.resize(static_cast<std::size_t>(order));
    reduce_in_place(dense, order);
    return Cyclotomic(order, std::move(dense));
}

Cyclotomic Cyclotomic::root_sum(int order, const std::vector<std::pair<Rational, std::int64_t>>& terms) {
    if (order % 4 == 2) {
        // Rewrite each ζ_{2m}^e as ±ζ_m^{e'} and accumulate in the odd order.
        std::vector<std::pair<Rational, std::int64_t>> odd;
        odd.reserve(terms.size());
        const long m = order / 2;
        for (const auto& [w, e] : terms) {
            long p = ((e % order) + order) % order;
            Rational weight = w;
            if (p % 2 != 0) { weight = -weight; p -= m; }
            odd.emplace_back(weight, ((p / 2) % m + m) % m);
        }
        return root_sum(static_cast<int>(m), odd);
    }
    const auto n = static_cast<std::size_t>(order);
    // Integer fast path over a common denominator.
    mpz_class common = 1;
    for (const auto& [w, e] : terms) common = lcm(common, w.denominator());
    bool fits = common.fits_slong_p();
    std::vector<__int128> acc;
    if (fits) {
        acc.assign(n, 0);
        for (const auto& [w, e] : terms) {
            const mpz_class scaled = w.numerator() * (common / w.denominator());
            if (!scaled.fits_slong_p()) { fits = false; break; }
            const auto idx = static_cast<std::size_t>(((e % order) + order) % order);
            acc[idx] += scaled.get_si();
        }
    }
    if (fits) {
        reduce_in_place(acc, order);
        std::vector<mpq_class> coeffs(acc.size());
        bool ok = true;
        for (std::size_t i = 0; i < acc.size(); ++i) {
            const __int128 v = acc[i];
            if (v > INT64_MAX || v < INT64_MIN) { ok = false; break; }
            coeffs[i] = mpq_class(mpz_class(static_cast<long>(v)), common);
            coeffs[i].canonicalize();
        }
        if (ok) return Cyclotomic(order, std::move(coeffs));
    }
    std::vector<mpq_class> dense(n);
    for (const auto& [w, e] : terms) dense[static_cast<std::size_t>(((e % order) + order) % order)] += w.raw();
    reduce_in_place(dense, order);
    return Cyclotomic(order, std::move(dense));
}

std::vector<Rational> Cyclotomic::coefficients() const {
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.emplace_back(c);
    return out;
}

bool Cyclotomic::is_zero() const {
    return order_ == 1 && coeffs_[0] == 0;
}

std::optional<Rational> Cyclotomic::as_rational() const {
    if (order_ != 1) return std::nullopt;
    return Rational(coeffs_[0]);
}

std::optional<std::pair<Rational, Rational>> Cyclotomic::as_gaussian() const {
    if (order_ == 1) return std::make_pair(Rational(coeffs_[0]), Rational{});
    if (order_ % 4 != 0) return std::nullopt;
    const Cyclotomic half(Rational(1, 2));
    const auto re = ((*this + conj()) * half).as_rational();
    const auto minus_i = *root_of_unity(Rational(3, 4));
    const auto im = ((*this - conj()) * half * minus_i).as_rational();
    if (!re || !im) return std::nullopt;
    if (!(gaussian(*re, *im) == *this)) return std::nullopt;
    return std::make_pair(*re, *im);
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<long double> acc{0, 0};
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        const long double c = static_cast<long double>(coeffs_[i].get_num().get_d()) /
                              static_cast<long double>(coeffs_[i].get_den().get_d());
        acc += c * root_ld(order_, static_cast<long>(i));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Cyclotomic Cyclotomic::lifted(int order) const {
    if (order == order_) return *this;
    if (order % order_ != 0) throw std::invalid_argument("Cyclotomic::lifted: order is not a multiple");
    const auto stride = static_cast<std::size_t>(order / order_);
    std::vector<mpq_class> dense(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) dense[i * stride] = coeffs_[i];
    reduce_in_place(dense, order);
    Cyclotomic out;
    out.order_ = order;
    out.coeffs_ = std::move(dense);
    return out;
}

Cyclotomic Cyclotomic::conj() const {
    if (order_ == 1) return *this;
    const auto n = static_cast<std::size_t>(order_);
    std::vector<mpq_class> dense(n);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) dense[(n - i) % n] += coeffs_[i];
    reduce_in_place(dense, order_);
    return Cyclotomic(order_, std::move(dense));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
    if (order_ == 1) return Cyclotomic(Rational(mpq_class(1 / coeffs_[0])));
    // Extended Euclid: s·a + t·Φ = 1, so s is the inverse modulo Φ.
    Poly a(coeffs_.begin(), coeffs_.end());
    trim(a);
    const auto& dense = phi_poly(order_).dense;
    Poly b(dense.begin(), dense.end());
    Poly s0{1}, s1{};
    Poly r0 = a, r1 = b;
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Φ is irreducible and a ≠ 0 mod Φ.
    const mpq_class scale = 1 / r0[0];
    std::vector<mpq_class> out(static_cast<std::size_t>(order_));
    for (std::size_t i = 0; i < s0.size(); ++i) out[i % out.size()] += s0[i] * scale;
    if (s0.size() > out.size()) throw std::logic_error("Cyclotomic::inverse: unexpected degree");
    reduce_in_place(out, order_);
    return Cyclotomic(order_, std::move(out));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    const auto order = Cyclotomic::common_order(a.order_, b.order_);
    if (!order) throw std::out_of_range("Cyclotomic: combined order too large");
    Cyclotomic x = a.lifted(*order);
    const Cyclotomic y = b.lifted(*order);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
    x.shrink();
    return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == 1 || b.order_ == 1) {
        const Cyclotomic& scalar = a.order_ == 1 ? a : b;
        Cyclotomic out = a.order_ == 1 ? b : a;
        for (auto& c : out.coeffs_) c *= scalar.coeffs_[0];
        out.shrink();
        return out;
    }
    const auto order = Cyclotomic::common_order(a.order_, b.order_);
    if (!order) throw std::out_of_range("Cyclotomic: combined order too large");
    const Cyclotomic x = a.lifted(*order);
    const Cyclotomic y = b.lifted(*order);
    std::vector<mpq_class> prod(x.coeffs_.size() + y.coeffs_.size() - 1);
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        if (x.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
            if (y.coeffs_[j] == 0) continue;
            prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
        }
    }
    reduce_in_place(prod, *order);
    return Cyclotomic(*order, std::move(prod));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    const long l = std::lcm(static_cast<long>(a.order_), static_cast<long>(b.order_));
    if (l > Cyclotomic::kMaxOrder) {
        // Distinct fields whose compositum is out of range: equal only if both rational.
        return a.order_ == 1 && b.order_ == 1 && a.coeffs_ == b.coeffs_;
    }
    return a.lifted(static_cast<int>(l)).coeffs_ == b.lifted(static_cast<int>(l)).coeffs_;
}

}  // namespace measalg
