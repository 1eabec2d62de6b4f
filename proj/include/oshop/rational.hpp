#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace oshop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Wire format: "a" or "a/b" with b > 0, lowest terms on output.
inline std::string format_rational(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator must be positive: " + s);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

// Least integer multiple of `step` that is >= x, as a count of steps. step > 0.
inline BigInt ceil_div(const Rational& x, const Rational& step) {
    const Rational ratio = x / step;
    BigInt q = numerator(ratio) / denominator(ratio);
    if (q * denominator(ratio) < numerator(ratio)) ++q;
    return q;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace oshop
