#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace hgdecomp {

// Exact rational arithmetic everywhere; widths like 2 - 1/n must compare
// exactly, so no floating point is allowed anywhere near an optimum.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Canonical text form: lowest terms, "p" when the denominator is 1,
// otherwise "p/q".
inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "p" and "p/q". Returns nullopt on malformed input or q == 0.
inline std::optional<Rational> parse_rational(const std::string& text) {
    auto is_int = [](const std::string& s) {
        if (s.empty()) {
            return false;
        }
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) {
            return false;
        }
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return false;
            }
        }
        return true;
    };
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) {
                return std::nullopt;
            }
            return Rational(Integer(text));
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) {
            return std::nullopt;
        }
        Integer d(den);
        if (d == 0) {
            return std::nullopt;
        }
        return Rational(Integer(num), d);
    } catch (...) {
        return std::nullopt;
    }
}

}  // namespace hgdecomp
