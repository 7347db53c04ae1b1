#ifndef QDIST_RATIONAL_HPP
#define QDIST_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qdist {

using BigInt = boost::multiprecision::cpp_int;
// Always normalized with a positive denominator; comparisons are exact.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(std::int64_t base, unsigned e) {
  BigInt out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace qdist

#endif  // QDIST_RATIONAL_HPP
