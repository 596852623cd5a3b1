#include "logsymp/rational.hpp"

#include "logsymp/errors.hpp"

#include <cctype>

namespace logsymp {

Rational rat(long num, long den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;

    auto valid = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!valid(num, true) || !valid(den, false)) return std::nullopt;

    Integer n(num), d(den);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer integer_part(const Rational& value) {
    if (!is_integer(value)) throw InternalError("integer_part of non-integer " + to_string(value));
    return value.get_num();
}

Rational pow_rational(const Rational& base, long exponent) {
    if (exponent == 0) return rat(1);
    if (base == 0) {
        if (exponent < 0) throw ValidationError("zero base with negative exponent");
        return rat(0);
    }
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    Rational q = exponent > 0 ? Rational(num, den) : Rational(den, num);
    q.canonicalize();
    return q;
}

} // namespace logsymp
