#include "measalg/rational.hpp"

#include "measalg/errors.hpp"

#include <cctype>
#include <limits>

namespace measalg {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_integer_text(num, true) || !valid_integer_text(den, false)) {
        throw ParseError("invalid rational '" + std::string(text) + "'");
    }
    std::string n(num);
    if (!n.empty() && n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10);
    mpz_class zd(std::string(den), 10);
    if (zd == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    return Rational(std::move(q));
}

long double Rational::to_long_double() const {
    // Split into integer part and remainder so large numerators keep precision.
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    mpq_class rest = q_ - mpq_class(whole);
    const long double r = static_cast<long double>(rest.get_num().get_d()) /
                          static_cast<long double>(rest.get_den().get_d());
    return static_cast<long double>(whole.get_d()) + r;
}

Rational Rational::frac() const {
    return Rational(mpq_class(q_ - mpq_class(floor())));
}

mpz_class Rational::floor() const {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

std::int64_t to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw IntegerOverflow("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

}  // namespace measalg
