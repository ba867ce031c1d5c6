#include "hypersub/exponent.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "hypersub/error.hpp"

namespace hypersub {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw InputError("not a rational number: '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_int(text.substr(0, slash), text);
        auto den = parse_int(text.substr(slash + 1), text);
        if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        bool negative = !text.empty() && text.front() == '-';
        auto int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
        auto frac_part = text.substr(dot + 1);
        if (frac_part.size() > 15) throw InputError("too many decimals in '" + std::string(text) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, text);
        std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, text);
        if (ip < 0 || fp < 0) throw InputError("not a rational number: '" + std::string(text) + "'");
        Rational r(ip * scale + fp, scale);
        return negative ? -r : r;
    }
    return Rational(parse_int(text, text));
}

std::string format_rational(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Exponent operator*(std::int64_t k, const Exponent& a) {
    if (k == 0) return Exponent(0);
    if (a.neg_inf_) {
        if (k < 0) throw std::domain_error("negative multiple of -inf exponent");
        return a;
    }
    return Exponent(a.value_ * k);
}

std::string Exponent::to_string() const {
    return neg_inf_ ? std::string("-inf") : format_rational(value_);
}

double Exponent::to_double() const {
    if (neg_inf_) return -std::numeric_limits<double>::infinity();
    return boost::rational_cast<double>(value_);
}

}  // namespace hypersub
