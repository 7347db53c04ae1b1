#ifndef QDIST_CYCLOTOMIC_HPP
#define QDIST_CYCLOTOMIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qdist/error.hpp"

namespace qdist {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw InternalError("cyclotomic coefficient overflow");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw InternalError("cyclotomic coefficient overflow");
  return out;
}

}  // namespace detail

/// Exact element of Z[zeta_p] for an odd prime p.
///
/// Stored in the power basis 1, zeta, ..., zeta^{p-2}; zeta^{p-1} is eliminated through
/// 1 + zeta + ... + zeta^{p-1} = 0, so two elements are equal iff their coefficient vectors are.
/// Arithmetic is exact int64 with overflow detection (overflow throws InternalError).
///
/// A default-constructed value has p = 0 and may only be assigned to.
class Cyclotomic {
 public:
  Cyclotomic() = default;

  explicit Cyclotomic(unsigned p) : p_(p), c_(p - 1, 0) {
    if (p < 3) throw InvalidParameter("cyclotomic ring needs an odd prime p");
  }

  static Cyclotomic integer(unsigned p, std::int64_t v) {
    Cyclotomic out(p);
    out.c_[0] = v;
    return out;
  }

  static Cyclotomic zeta_power(unsigned p, std::uint64_t k) {
    std::vector<std::int64_t> counts(p, 0);
    counts[k % p] = 1;
    return from_exponent_counts(p, counts);
  }

  /// Sum of counts[k] * zeta^k for k in [0, p).
  static Cyclotomic from_exponent_counts(unsigned p, std::span<const std::int64_t> counts) {
    if (counts.size() != p) throw InvalidParameter("exponent count vector must have length p");
    Cyclotomic out(p);
    const std::int64_t top = counts[p - 1];
    for (unsigned k = 0; k + 1 < p; ++k) out.c_[k] = detail::checked_add(counts[k], -top);
    return out;
  }

  /// Inverse of to_string(): coefficients separated by ';'. p is inferred as length + 1.
  static Cyclotomic parse(std::string_view text) {
    std::vector<std::int64_t> coeffs;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ';')) {
      try {
        std::size_t used = 0;
        coeffs.push_back(std::stoll(item, &used));
        if (used != item.size()) throw InvalidParameter("");
      } catch (const std::exception&) {
        throw InvalidParameter("malformed cyclotomic coefficient '" + item + "'");
      }
    }
    const auto p = static_cast<unsigned>(coeffs.size() + 1);
    if (p < 3) throw InvalidParameter("cyclotomic needs at least two coefficients");
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) throw InvalidParameter("cyclotomic coefficient count + 1 must be prime");
    Cyclotomic out(p);
    out.c_ = std::move(coeffs);
    return out;
  }

  unsigned prime() const { return p_; }
  std::span<const std::int64_t> coeffs() const { return c_; }

  bool is_zero() const {
    for (auto v : c_)
      if (v != 0) return false;
    return true;
  }

  /// True iff the value lies in Z (all non-constant coordinates vanish).
  bool is_integer() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }

  std::int64_t to_integer() const {
    if (!is_integer()) throw InternalError("cyclotomic value " + to_string() + " is not a rational integer");
    return c_[0];
  }

  Cyclotomic conj() const {
    std::vector<std::int64_t> counts(p_, 0);
    for (unsigned k = 0; k + 1 < p_; ++k) counts[(p_ - k) % p_] = c_[k];
    return from_exponent_counts(p_, counts);
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    same_ring(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] = detail::checked_add(c_[k], o.c_[k]);
    return *this;
  }

  Cyclotomic& operator-=(const Cyclotomic& o) {
    same_ring(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] = detail::checked_add(c_[k], -o.c_[k]);
    return *this;
  }

  Cyclotomic& operator*=(std::int64_t s) {
    for (auto& v : c_) v = detail::checked_mul(v, s);
    return *this;
  }

  Cyclotomic& operator*=(const Cyclotomic& o) {
    *this = *this * o;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, std::int64_t s) { return a *= s; }
  friend Cyclotomic operator*(std::int64_t s, Cyclotomic a) { return a *= s; }

  friend Cyclotomic operator-(Cyclotomic a) {
    for (auto& v : a.c_) v = detail::checked_mul(v, -1);
    return a;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.same_ring(b);
    const unsigned p = a.p_;
    std::vector<std::int64_t> acc(p, 0);
    for (unsigned i = 0; i + 1 < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j + 1 < p; ++j) {
        if (b.c_[j] == 0) continue;
        auto& slot = acc[(i + j) % p];
        slot = detail::checked_add(slot, detail::checked_mul(a.c_[i], b.c_[j]));
      }
    }
    return from_exponent_counts(p, acc);
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  /// Display only; never used for equality decisions.
  std::complex<double> to_complex() const {
    std::complex<double> z{0.0, 0.0};
    for (unsigned k = 0; k + 1 < p_; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / p_;
      z += static_cast<double>(c_[k]) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k) out += ';';
      out += std::to_string(c_[k]);
    }
    return out;
  }

 private:
  void same_ring(const Cyclotomic& o) const {
    if (p_ != o.p_ || p_ == 0) throw InvalidParameter("cyclotomic operands live in different rings");
  }

  unsigned p_ = 0;
  std::vector<std::int64_t> c_;
};

}  // namespace qdist

#endif  // QDIST_CYCLOTOMIC_HPP
