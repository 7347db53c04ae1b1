#ifndef QDIST_POINT_HPP
#define QDIST_POINT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdist/error.hpp"
#include "qdist/field.hpp"

namespace qdist {

using Point = std::vector<Element>;

/// Bijection between F_q^n and [0, q^n): index = sum_i idx(x_i) q^i.
class PointCodec {
 public:
  PointCodec(std::uint32_t q, unsigned dim) : q_(q), dim_(dim) {
    if (dim == 0) throw InvalidParameter("ambient dimension must be at least 1");
    size_ = 1;
    for (unsigned i = 0; i < dim; ++i) {
      if (size_ > (std::uint64_t{1} << 40) / q) throw ResourceError("q^n exceeds the supported ambient size 2^40");
      size_ *= q;
    }
  }

  std::uint32_t q() const { return q_; }
  unsigned dim() const { return dim_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t encode(std::span<const Element> x) const {
    if (x.size() != dim_) throw InvalidParameter("point has dimension " + std::to_string(x.size()) + ", expected " + std::to_string(dim_));
    std::uint64_t idx = 0;
    for (std::size_t i = dim_; i-- > 0;) {
      if (x[i].index() >= q_) throw InvalidParameter("coordinate out of range");
      idx = idx * q_ + x[i].index();
    }
    return idx;
  }

  void decode(std::uint64_t idx, std::span<Element> out) const {
    for (unsigned i = 0; i < dim_; ++i) {
      out[i] = Element{static_cast<std::uint32_t>(idx % q_)};
      idx /= q_;
    }
  }

  Point decode(std::uint64_t idx) const {
    Point out(dim_);
    decode(idx, out);
    return out;
  }

 private:
  std::uint32_t q_;
  unsigned dim_;
  std::uint64_t size_ = 1;
};

inline std::int64_t dot_trace_negated(const Field& f, std::span<const Element> m, std::span<const Element> x) {
  Element s = f.zero();
  for (std::size_t i = 0; i < m.size(); ++i) s = f.add(s, f.mul(m[i], x[i]));
  return (f.p() - f.trace(s)) % f.p();
}

}  // namespace qdist

#endif  // QDIST_POINT_HPP
