#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "fns/errors.hpp"

namespace fns {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored reduced with positive denominator;
/// zero is canonically 0/1. Backed by boost::multiprecision.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw Error("rational with zero denominator");
    return Rational(std::move(num)) / Rational(std::move(den));
}

/// Prints "n" for integers and "n/d" otherwise.
inline std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "n" or "n/d" with optional leading sign.
inline Rational parse_rational(std::string_view text, std::size_t base_offset = 0) {
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
        BigInt num{std::string(text.substr(0, slash))};
        BigInt den{std::string(text.substr(slash + 1))};
        return make_rational(std::move(num), std::move(den));
    } catch (const std::runtime_error&) {
        throw ParseError("invalid rational '" + std::string(text) + "'", base_offset);
    }
}

} // namespace fns
