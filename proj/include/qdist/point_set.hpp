#ifndef QDIST_POINT_SET_HPP
#define QDIST_POINT_SET_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qdist/error.hpp"
#include "qdist/field.hpp"
#include "qdist/point.hpp"

namespace qdist {

/// A subset of F_q^n: a membership table over all q^n point indices plus the sorted member list.
class PointSet {
 public:
  PointSet(FieldPtr field, unsigned dim) : field_(std::move(field)), codec_(field_->q(), dim), member_(codec_.size(), 0) {}

  static PointSet from_indices(FieldPtr field, unsigned dim, std::span<const std::uint64_t> indices) {
    PointSet s(std::move(field), dim);
    for (auto idx : indices) s.insert(idx);
    return s;
  }

  static PointSet from_points(FieldPtr field, unsigned dim, std::span<const Point> points) {
    PointSet s(std::move(field), dim);
    for (const auto& x : points) s.insert(s.codec_.encode(x));
    return s;
  }

  /// Exhaustive enumeration of {x in F_q^n : keep(x)}.
  template <class Predicate>
  static PointSet enumerate(FieldPtr field, unsigned dim, Predicate&& keep) {
    PointSet s(std::move(field), dim);
    Point x(dim);
    for (std::uint64_t idx = 0; idx < s.codec_.size(); ++idx) {
      s.codec_.decode(idx, x);
      if (keep(std::span<const Element>(x))) {
        s.member_[idx] = 1;
        s.points_.push_back(idx);
      }
    }
    return s;
  }

  static PointSet full(FieldPtr field, unsigned dim) {
    return enumerate(std::move(field), dim, [](std::span<const Element>) { return true; });
  }

  void insert(std::uint64_t idx) {
    if (idx >= codec_.size()) throw InvalidParameter("point index out of range");
    if (member_[idx]) return;
    member_[idx] = 1;
    points_.insert(std::lower_bound(points_.begin(), points_.end(), idx), idx);
  }

  void insert(std::span<const Element> x) { insert(codec_.encode(x)); }

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const PointCodec& codec() const { return codec_; }
  unsigned dim() const { return codec_.dim(); }
  std::uint64_t ambient_size() const { return codec_.size(); }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  bool contains(std::uint64_t idx) const { return idx < member_.size() && member_[idx]; }
  bool contains(std::span<const Element> x) const { return member_[codec_.encode(x)] != 0; }

  /// Member indices in increasing order.
  const std::vector<std::uint64_t>& indices() const { return points_; }

  /// Members decoded into a flat array of size() * dim() coordinates.
  std::vector<Element> coordinates() const {
    std::vector<Element> out(points_.size() * dim());
    for (std::size_t i = 0; i < points_.size(); ++i)
      codec_.decode(points_[i], std::span<Element>(out).subspan(i * dim(), dim()));
    return out;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.field_->spec() == b.field_->spec() && a.dim() == b.dim() && a.points_ == b.points_;
  }

 private:
  FieldPtr field_;
  PointCodec codec_;
  std::vector<std::uint8_t> member_;
  std::vector<std::uint64_t> points_;
};

/// Cartesian product A x B in F_q^{n_A + n_B}; coordinates of A come first.
inline PointSet cartesian_product(const PointSet& a, const PointSet& b) {
  PointSet out(a.field_ptr(), a.dim() + b.dim());
  const std::uint64_t shift = a.ambient_size();
  for (auto y : b.indices())
    for (auto x : a.indices()) out.insert(x + shift * y);
  return out;
}

}  // namespace qdist

#endif  // QDIST_POINT_SET_HPP
