#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tinpc {

/// Exact rational number. All channel strengths, GDoF values and power
/// exponents are carried in this type; floating point appears only when
/// finite-SNR rates are evaluated.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses a decimal literal ("2", "-0.35", "1.5e-2", "+.5") into an exact
/// rational. A "p/q" fraction is also accepted so that every string produced
/// by to_string() parses back.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    };
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return fail();

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) return fail();
        return num / den;
    }

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Integer digits = 0;
    long scale = 0;  // value = digits * 10^(-scale)
    bool any_digit = false;
    bool seen_point = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            any_digit = true;
            if (seen_point) ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return fail();

    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') return fail();
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_negative = s[i] == '-';
            ++i;
        }
        if (i == s.size()) return fail();
        long exponent = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return fail();
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 4000) return fail();
        }
        scale += exp_negative ? exponent : -exponent;
    }

    Rational value{digits};
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    value = scale >= 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
    return negative ? Rational(-value) : value;
}

/// Renders exactly: a terminating decimal when the reduced denominator has no
/// prime factors other than 2 and 5, "p/q" otherwise.
inline std::string to_string(const Rational& value) {
    Integer num = boost::multiprecision::numerator(value);
    Integer den = boost::multiprecision::denominator(value);

    Integer rest = den;
    unsigned twos = 0;
    unsigned fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.str() + "/" + den.str();

    unsigned places = std::max(twos, fives);
    Integer scaled = num * boost::multiprecision::pow(Integer(10), places) / den;
    bool negative = scaled < 0;
    std::string digits = (negative ? Integer(-scaled) : scaled).str();
    if (places > 0) {
        if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
        digits.insert(digits.size() - places, ".");
    }
    return negative ? "-" + digits : digits;
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

inline std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',') {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) end = text.size();
        out.push_back(parse_rational(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

inline std::string join(const std::vector<Rational>& values, std::string_view sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += to_string(values[i]);
    }
    return out;
}

}  // namespace tinpc
