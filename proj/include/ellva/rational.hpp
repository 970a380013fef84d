#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace ellva {

// Exact arithmetic for characteristics, central charges and nome exponents.
// All locus bookkeeping stays rational; floating point enters only when a
// parameter point is instantiated.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace ellva
