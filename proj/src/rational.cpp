#include "tgw/rational.hpp"

#include "tgw/error.hpp"

#include <cctype>

namespace tgw {

namespace {

bool is_int_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view s) {
    s = trim(s);
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_int_literal(num) || !is_int_literal(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorKind::ParseError, "not a rational literal: '" + std::string(s) + "'");
    Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
    Integer d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    return Rational(n, d);
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

long long to_ll(const Integer& z) { return z.convert_to<long long>(); }

}  // namespace tgw
