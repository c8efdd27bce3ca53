#include "sival/exact_real.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sival {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();

// Literal exponents beyond this are rejected rather than expanded into
// enormous integers; every such value is far outside the binary64 range anyway.
constexpr long kMaxDecimalExponent = 20000;

const mpq_class& max_finite()
{
    static const mpq_class q{kMax};
    return q;
}

// Truncating conversion followed by an exact correction, so the result is
// exactly the greatest double <= q (q finite, |q| <= DBL_MAX).
double floor_to_double(const mpq_class& q)
{
    double d = q.get_d();
    while (mpq_class(d) > q) {
        d = std::nextafter(d, -kInf);
    }
    for (;;) {
        const double up = std::nextafter(d, kInf);
        if (mpq_class(up) > q) {
            break;
        }
        d = up;
    }
    return d;
}

} // namespace

ExactReal::ExactReal(mpq_class value) : value_(std::move(value))
{
    value_.canonicalize();
}

ExactReal::ExactReal(double value)
{
    if (std::isnan(value)) {
        throw std::invalid_argument("ExactReal: NaN is not a real number");
    }
    if (std::isinf(value)) {
        kind_ = value < 0 ? Kind::neg_inf : Kind::pos_inf;
        return;
    }
    value_ = mpq_class(value);
}

ExactReal::ExactReal(long num, unsigned long den)
{
    if (den == 0) {
        throw std::invalid_argument("ExactReal: zero denominator");
    }
    value_ = mpq_class(mpz_class(num), mpz_class(den));
    value_.canonicalize();
}

ExactReal ExactReal::infinity(bool negative)
{
    ExactReal r;
    r.kind_ = negative ? Kind::neg_inf : Kind::pos_inf;
    return r;
}

ExactReal ExactReal::parse_decimal(std::string_view text)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (text.substr(i) == "inf") {
        return infinity(negative);
    }

    std::string digits;
    long exponent = 0;
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits += text[i++];
        any_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
            --exponent;
            any_digit = true;
        }
    }
    if (!any_digit) {
        throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        long e = 0;
        bool any_exp_digit = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (e < kMaxDecimalExponent * 10) {
                e = e * 10 + (text[i] - '0');
            }
            ++i;
            any_exp_digit = true;
        }
        if (!any_exp_digit) {
            throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
        }
        exponent += exp_negative ? -e : e;
    }
    if (i != text.size()) {
        throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
    }
    if (exponent > kMaxDecimalExponent || exponent < -kMaxDecimalExponent) {
        throw std::invalid_argument("decimal exponent out of range in '" + std::string(text) + "'");
    }

    mpz_class mantissa(digits, 10);
    if (negative) {
        mantissa = -mantissa;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    mpq_class q = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
    return ExactReal(std::move(q));
}

bool operator==(const ExactReal& a, const ExactReal& b)
{
    if (a.kind_ != b.kind_) {
        return false;
    }
    return !a.is_finite() || a.value_ == b.value_;
}

bool operator<(const ExactReal& a, const ExactReal& b)
{
    if (a.kind_ != b.kind_) {
        return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    }
    return a.is_finite() && a.value_ < b.value_;
}

ExtendedFloat round_down(const ExactReal& x)
{
    switch (x.kind()) {
    case ExactReal::Kind::neg_inf:
        return -kInf;
    case ExactReal::Kind::pos_inf:
        return kInf;
    case ExactReal::Kind::finite:
        break;
    }
    const mpq_class& q = x.value();
    if (q > max_finite()) {
        return kMax;
    }
    if (q < -max_finite()) {
        return -kInf;
    }
    const double d = floor_to_double(q);
    return d == 0.0 ? 0.0 : d;
}

ExtendedFloat round_up(const ExactReal& x)
{
    switch (x.kind()) {
    case ExactReal::Kind::neg_inf:
        return -kInf;
    case ExactReal::Kind::pos_inf:
        return kInf;
    case ExactReal::Kind::finite:
        break;
    }
    // ceil(q) == -floor(-q)
    const mpq_class negated = -x.value();
    if (negated > max_finite()) {
        return -kMax;
    }
    if (negated < -max_finite()) {
        return kInf;
    }
    const double d = -floor_to_double(negated);
    return d == 0.0 ? 0.0 : d;
}

} // namespace sival
