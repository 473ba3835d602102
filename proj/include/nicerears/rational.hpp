#pragma once

// Exact rational arithmetic for all bound comparisons; values serialize as
// canonical "p/q" strings so reports are byte-stable.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace nicerears {

using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
    return Rational(num, den);
}

}  // namespace nicerears
