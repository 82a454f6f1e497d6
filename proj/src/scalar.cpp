#include "measalg/scalar.hpp"

#include "measalg/errors.hpp"

#include <cmath>
#include <sstream>

namespace measalg {

Scalar Scalar::unimodular(const Angle& a, std::int64_t n) {
    if (a.is_torsion()) {
        const Rational t = (Rational(n) * a.rational_part()).frac();
        if (auto root = Cyclotomic::root_of_unity(t)) return *root;
    }
    return Scalar(eval_unimodular(a, n));
}

Complex Scalar::numeric() const {
    if (const auto* c = std::get_if<Cyclotomic>(&value_)) return c->to_complex();
    return std::get<Complex>(value_);
}

bool Scalar::is_zero() const {
    if (const auto* c = std::get_if<Cyclotomic>(&value_)) return c->is_zero();
    const Complex z = std::get<Complex>(value_);
    return z.real() == 0.0 && z.imag() == 0.0;
}

Scalar Scalar::conj() const {
    if (const auto* c = std::get_if<Cyclotomic>(&value_)) return c->conj();
    return std::conj(std::get<Complex>(value_));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DomainViolation("inverse of zero");
    if (const auto* c = std::get_if<Cyclotomic>(&value_)) return c->inverse();
    return 1.0 / std::get<Complex>(value_);
}

Scalar Scalar::operator-() const {
    if (const auto* c = std::get_if<Cyclotomic>(&value_)) return -*c;
    return -std::get<Complex>(value_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact() && Cyclotomic::common_order(a.exact().order(), b.exact().order()))
        return a.exact() + b.exact();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return a.numeric() + b.numeric();
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact() && Cyclotomic::common_order(a.exact().order(), b.exact().order()))
        return a.exact() * b.exact();
    if (a.is_zero() || b.is_zero()) return Scalar{};
    return a.numeric() * b.numeric();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
    return a.numeric() == b.numeric();
}

std::string Scalar::str() const {
    std::ostringstream os;
    if (const auto* c = std::get_if<Cyclotomic>(&value_)) {
        if (auto g = c->as_gaussian()) {
            os << g->first;
            if (!g->second.is_zero()) os << (g->second.sign() > 0 ? "+" : "") << g->second << "i";
            return os.str();
        }
    }
    const Complex z = numeric();
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

Scalar power(const Scalar& base, int exponent) {
    Scalar b = exponent < 0 ? base.inverse() : base;
    unsigned e = exponent < 0 ? static_cast<unsigned>(-static_cast<long>(exponent)) : static_cast<unsigned>(exponent);
    Scalar out = 1;
    while (e != 0) {
        if (e & 1U) out = out * b;
        e >>= 1U;
        if (e != 0) b = b * b;
    }
    return out;
}

}  // namespace measalg
