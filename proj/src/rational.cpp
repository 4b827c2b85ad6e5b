#include "exq/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace exq {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpz_class to_mpz(std::string_view s) {
    if (s[0] == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return Rational(to_mpz(num), mpz_class(1));
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    const mpz_class d = to_mpz(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(to_mpz(num), d);
}

Rational Rational::parse_canonical(std::string_view text) {
    const Rational r = parse(text);
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const mpz_class num = to_mpz(text.substr(0, slash));
        const mpz_class den = to_mpz(text.substr(slash + 1));
        if (num != r.numerator() || den != r.denominator())
            throw std::invalid_argument("rational '" + std::string(text) + "' is not in lowest terms");
    }
    return r;
}

std::string Rational::to_fraction_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return to_fraction_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace exq
