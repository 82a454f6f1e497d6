#include "measalg/angle.hpp"

#include "measalg/errors.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace measalg {

namespace {

int nth_prime(int j) {
    static std::vector<int> primes{2};
    for (int c = primes.back() + 1; static_cast<int>(primes.size()) < j; ++c) {
        bool prime = true;
        for (int p : primes) {
            if (p * p > c) break;
            if (c % p == 0) { prime = false; break; }
        }
        if (prime) primes.push_back(c);
    }
    return primes[static_cast<std::size_t>(j - 1)];
}

std::int64_t checked_mul_add(std::int64_t k1, std::int64_t a, std::int64_t k2, std::int64_t b) {
    std::int64_t x = 0, y = 0, s = 0;
    if (__builtin_mul_overflow(k1, a, &x) || __builtin_mul_overflow(k2, b, &y) ||
        __builtin_add_overflow(x, y, &s)) {
        throw IntegerOverflow("generator coefficient overflow");
    }
    return s;
}

class AngleParser {
public:
    explicit AngleParser(std::string_view text) : text_(text) {}

    Angle run() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty angle");
        Rational rational;
        std::map<int, std::int64_t> coeffs;
        bool first = true;
        while (pos_ < text_.size()) {
            int sign = 1;
            if (text_[pos_] == '+' || text_[pos_] == '-') {
                sign = text_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            parse_term(sign, rational, coeffs);
            first = false;
            skip_ws();
        }
        return Angle(rational, std::move(coeffs));
    }

private:
    void parse_term(int sign, Rational& rational, std::map<int, std::int64_t>& coeffs) {
        if (pos_ < text_.size() && text_[pos_] == 'g') {
            add_generator(sign, read_generator_index(), coeffs);
            return;
        }
        const std::string_view digits = read_digits();
        if (digits.empty()) fail("expected number or generator");
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != 'g') fail("expected 'g<j>' after '*'");
            const int j = read_generator_index();
            add_generator(sign * 1, j, coeffs, digits);
            return;
        }
        std::string r(digits);
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            const std::string_view den = read_digits();
            if (den.empty()) fail("expected denominator");
            r += "/";
            r += den;
        }
        Rational value = Rational::parse(r);
        rational += sign < 0 ? -value : value;
    }

    void add_generator(int sign, int j, std::map<int, std::int64_t>& coeffs,
                       std::string_view digits = "1") {
        mpz_class c(std::string(digits), 10);
        if (sign < 0) c = -c;
        const std::int64_t v = to_int64(c);
        std::int64_t& slot = coeffs[j];
        if (__builtin_add_overflow(slot, v, &slot)) throw IntegerOverflow("generator coefficient overflow");
    }

    int read_generator_index() {
        ++pos_;  // 'g'
        const std::string_view digits = read_digits();
        if (digits.empty()) fail("expected generator index after 'g'");
        const mpz_class j(std::string(digits), 10);
        if (j < 1 || !j.fits_sint_p()) fail("generator index must be a positive integer");
        return static_cast<int>(j.get_si());
    }

    std::string_view read_digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("angle '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

const GeneratorValues& default_generator_values() {
    static const GeneratorValues values = [] {
        GeneratorValues v;
        for (int j = 1; j <= 64; ++j) v[j] = default_generator_value(j);
        return v;
    }();
    return values;
}

double default_generator_value(int j) {
    const long double root = std::sqrt(static_cast<long double>(nth_prime(j)));
    return static_cast<double>(root - std::floor(root));
}

Angle::Angle(Rational turns, std::map<int, std::int64_t> generator_coeffs)
    : rational_(turns.frac()), coeffs_(std::move(generator_coeffs)) {
    std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; });
}

Angle Angle::generator(int j, std::int64_t coeff) {
    if (j < 1) throw std::invalid_argument("generator index must be >= 1");
    return Angle(Rational{}, {{j, coeff}});
}

Angle Angle::parse(std::string_view text) { return AngleParser(text).run(); }

Angle Angle::operator-() const { return combine(-1, *this, 0, Angle{}); }

Angle combine(std::int64_t k1, const Angle& a1, std::int64_t k2, const Angle& a2) {
    Angle out;
    out.rational_ = (Rational(k1) * a1.rational_ + Rational(k2) * a2.rational_).frac();
    for (const auto& [j, c] : a1.coeffs_) out.coeffs_[j] = checked_mul_add(k1, c, 0, 0);
    for (const auto& [j, c] : a2.coeffs_) out.coeffs_[j] = checked_mul_add(1, out.coeffs_[j], k2, c);
    std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::string Angle::str() const {
    std::string out;
    if (!rational_.is_zero() || coeffs_.empty()) out = rational_.str();
    for (const auto& [j, c] : coeffs_) {
        if (c < 0) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        const std::uint64_t mag = c < 0 ? 0ULL - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
        if (mag != 1) out += std::to_string(mag) + "*";
        out += "g" + std::to_string(j);
    }
    return out;
}

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    if (auto c = a.rational_ <=> b.rational_; c != 0) return c;
    return a.coeffs_ <=> b.coeffs_;
}

std::optional<mpz_class> torsion_order(const Angle& a) {
    if (!a.is_torsion()) return std::nullopt;
    return a.rational_part().denominator();
}

long double phase_turns(const Angle& a, std::int64_t n, const GeneratorValues& values) {
    // Exact reduction of the rational part, extended precision for generators.
    const Rational exact = (Rational(n) * a.rational_part()).frac();
    long double t = exact.to_long_double();
    for (const auto& [j, c] : a.generator_coeffs()) {
        const auto it = values.find(j);
        double v = 0;
        if (it != values.end()) {
            v = it->second;
        } else if (&values == &default_generator_values()) {
            v = default_generator_value(j);
        } else {
            throw MissingGeneratorValue("no numeric value for generator g" + std::to_string(j));
        }
        const long double term = static_cast<long double>(n) * static_cast<long double>(c) *
                                 static_cast<long double>(v);
        t += term - std::floor(term);
    }
    return t - std::floor(t);
}

std::complex<double> unimodular_from_turns(long double t) {
    t -= std::floor(t);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * t;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::complex<double> eval_unimodular(const Angle& a, std::int64_t n, const GeneratorValues& values) {
    if (a.is_torsion()) {
        // Exact quarter turns give exact ±1, ±i.
        const Rational t = (Rational(n) * a.rational_part()).frac();
        if (t.is_zero()) return {1.0, 0.0};
        if (t == Rational(1, 2)) return {-1.0, 0.0};
        if (t == Rational(1, 4)) return {0.0, 1.0};
        if (t == Rational(3, 4)) return {0.0, -1.0};
    }
    return unimodular_from_turns(phase_turns(a, n, values));
}

}  // namespace measalg
