#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hypersub {

using Rational = boost::rational<std::int64_t>;

// Exact rational parsed from "num/den", an integer, or a finite decimal
// ("0.6" -> 3/5). Throws InputError on anything else.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);  // always "num/den"

/**
 * Exponent of n in an asymptotic expression Θ(n^x): an exact rational or
 * -infinity (the expression is identically zero).
 */
class Exponent {
public:
    constexpr Exponent() = default;
    Exponent(Rational value) : value_(value) {}  // NOLINT(implicit)
    Exponent(std::int64_t value) : value_(value) {}  // NOLINT(implicit)

    static Exponent neg_infinity() {
        Exponent e;
        e.neg_inf_ = true;
        return e;
    }

    bool is_neg_infinity() const { return neg_inf_; }
    // Precondition: finite.
    const Rational& value() const { return value_; }

    int sign() const {
        if (neg_inf_) return -1;
        return value_.numerator() > 0 ? 1 : (value_.numerator() < 0 ? -1 : 0);
    }

    friend Exponent operator+(const Exponent& a, const Exponent& b) {
        if (a.neg_inf_ || b.neg_inf_) return neg_infinity();
        return Exponent(a.value_ + b.value_);
    }
    friend Exponent operator*(std::int64_t k, const Exponent& a);

    friend bool operator==(const Exponent& a, const Exponent& b) {
        if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
        if (a.neg_inf_ || b.neg_inf_) {
            if (a.neg_inf_ && b.neg_inf_) return std::strong_ordering::equal;
            return a.neg_inf_ ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const;  // "num/den" or "-inf"
    double to_double() const;

private:
    Rational value_{0};
    bool neg_inf_ = false;
};

}  // namespace hypersub
