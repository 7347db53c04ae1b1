#ifndef QDIST_QUAD_FORM_HPP
#define QDIST_QUAD_FORM_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdist/error.hpp"
#include "qdist/field.hpp"
#include "qdist/point.hpp"

namespace qdist {

/// Dense square matrix over F_q, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static SquareMatrix identity(const Field& f, std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  std::size_t size() const { return n_; }
  Element& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Element operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Element> a_;
};

/// Determinant by Gaussian elimination over F_q.
inline Element determinant(const Field& f, SquareMatrix m) {
  const std::size_t n = m.size();
  Element det = f.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k).is_zero()) ++pivot;
    if (pivot == n) return f.zero();
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(k, k));
    const Element inv = f.inv(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const Element factor = f.mul(m(i, k), inv);
      if (factor.is_zero()) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(k, j)));
    }
  }
  return det;
}

inline SquareMatrix inverse(const Field& f, const SquareMatrix& m) {
  const std::size_t n = m.size();
  SquareMatrix a = m, inv = SquareMatrix::identity(f, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k).is_zero()) ++pivot;
    if (pivot == n) throw DomainError("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(k, j), a(pivot, j));
      std::swap(inv(k, j), inv(pivot, j));
    }
    const Element s = f.inv(a(k, k));
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) = f.mul(a(k, j), s);
      inv(k, j) = f.mul(inv(k, j), s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const Element factor = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = f.sub(a(i, j), f.mul(factor, a(k, j)));
        inv(i, j) = f.sub(inv(i, j), f.mul(factor, inv(k, j)));
      }
    }
  }
  return inv;
}

inline Point apply(const Field& f, const SquareMatrix& m, std::span<const Element> x) {
  if (x.size() != m.size()) throw InvalidParameter("matrix/vector dimension mismatch");
  Point out(m.size(), f.zero());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i] = f.add(out[i], f.mul(m(i, j), x[j]));
  return out;
}

/// Q(x) = x^T A x with A symmetric and non-singular.
class QuadraticForm {
 public:
  QuadraticForm(FieldPtr field, SquareMatrix matrix) : field_(std::move(field)), a_(std::move(matrix)) {
    if (a_.size() == 0) throw InvalidParameter("quadratic form needs dimension >= 1");
    if (!a_.is_symmetric()) throw InvalidParameter("quadratic form matrix must be symmetric");
    if (determinant(*field_, a_).is_zero()) throw InvalidParameter("quadratic form is degenerate (det A = 0)");
  }

  static QuadraticForm euclidean(FieldPtr field, unsigned dim) {
    auto id = SquareMatrix::identity(*field, dim);
    return QuadraticForm(std::move(field), std::move(id));
  }

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  unsigned dim() const { return static_cast<unsigned>(a_.size()); }
  const SquareMatrix& matrix() const { return a_; }

  Element evaluate(std::span<const Element> x) const {
    if (x.size() != dim()) throw InvalidParameter("dimension mismatch in quadratic form evaluation");
    const Field& f = *field_;
    Element acc = f.zero();
    for (unsigned i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      Element row = f.zero();
      for (unsigned j = 0; j < dim(); ++j) row = f.add(row, f.mul(a_(i, j), x[j]));
      acc = f.add(acc, f.mul(x[i], row));
    }
    return acc;
  }

 private:
  FieldPtr field_;
  SquareMatrix a_;
};

/// Coefficients (1, -1, 1, ..., -eps) for even d, (1, -1, ..., 1, -1, eps) for odd d.
inline std::vector<Element> standard_coefficients(const Field& f, unsigned dim, Element eps) {
  std::vector<Element> a(dim);
  for (unsigned i = 0; i + 1 < dim; ++i) a[i] = (i % 2 == 0) ? f.one() : f.neg(f.one());
  a[dim - 1] = (dim % 2 == 0) ? f.neg(eps) : eps;
  return a;
}

inline std::vector<Element> inverse_coefficients(const Field& f, std::span<const Element> a) {
  std::vector<Element> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) throw DomainError("diagonal coefficient must be non-zero");
    out[i] = f.inv(a[i]);
  }
  return out;
}

inline Element evaluate_diagonal(const Field& f, std::span<const Element> a, std::span<const Element> x) {
  if (x.size() != a.size()) throw InvalidParameter("dimension mismatch in diagonal form evaluation");
  Element acc = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], f.square(x[i])));
  return acc;
}

/// The dual ||m||_{Q*}: the standard pattern with eps replaced by eps^{-1}.
class DualForm {
 public:
  DualForm(FieldPtr field, std::vector<Element> coeffs) : field_(std::move(field)), a_(std::move(coeffs)) {}

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned dim() const { return static_cast<unsigned>(a_.size()); }
  const std::vector<Element>& coefficients() const { return a_; }
  Element evaluate(std::span<const Element> m) const { return evaluate_diagonal(*field_, a_, m); }

 private:
  FieldPtr field_;
  std::vector<Element> a_;
};

/// A standard distance function ||x||_Q together with the basis change C that carries the
/// originating form onto it: Q(C y) = ||y||_Q.
class StandardForm {
 public:
  StandardForm(FieldPtr field, unsigned dim, Element eps)
      : StandardForm(field, dim, eps, SquareMatrix::identity(*field, dim)) {}

  StandardForm(FieldPtr field, unsigned dim, Element eps, SquareMatrix basis_change)
      : field_(std::move(field)), dim_(dim), eps_(eps), c_(std::move(basis_change)) {
    if (dim == 0) throw InvalidParameter("standard form needs dimension >= 1");
    if (eps.is_zero()) throw InvalidParameter("epsilon must be non-zero");
    if (c_.size() != dim) throw InvalidParameter("basis change has the wrong size");
    a_ = standard_coefficients(*field_, dim, eps);
  }

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  unsigned dim() const { return dim_; }
  bool is_even() const { return dim_ % 2 == 0; }
  Element epsilon() const { return eps_; }
  int eta_epsilon() const { return field_->eta(eps_); }
  const std::vector<Element>& coefficients() const { return a_; }
  const SquareMatrix& basis_change() const { return c_; }

  Element evaluate(std::span<const Element> x) const { return evaluate_diagonal(*field_, a_, x); }

  DualForm dual() const { return DualForm(field_, inverse_coefficients(*field_, a_)); }

  /// The standard form with eps^{-1}; its coefficient vector is that of dual().
  StandardForm dual_standard() const { return StandardForm(field_, dim_, field_->inv(eps_)); }

 private:
  FieldPtr field_;
  unsigned dim_;
  Element eps_;
  SquareMatrix c_;
  std::vector<Element> a_;
};

/// eta((-1)^{floor(d/2)} eps), the square class that must match eta(det A).
inline int discriminant_class(const Field& f, unsigned dim, Element eps) {
  const Element sign = (dim / 2) % 2 == 0 ? f.one() : f.neg(f.one());
  return f.eta(f.mul(sign, eps));
}

/// Congruence-diagonalizes A and folds the diagonal into the standard +-1 pattern.
///
/// Zero pivots with a non-zero off-diagonal entry are resolved by the substitution
/// x_k -> x_k + x_j (lowest j). Mismatched square classes are repaired pairwise: a binary
/// form D_i u^2 + D_{i+1} v^2 represents every non-zero target.
inline StandardForm standardize(const QuadraticForm& form) {
  const Field& f = form.field();
  const unsigned d = form.dim();
  SquareMatrix b = form.matrix();
  SquareMatrix c = SquareMatrix::identity(f, d);

  auto add_to = [&](unsigned dst, unsigned src, Element factor) {
    // column op then row op keep b symmetric; c tracks the column ops
    for (unsigned i = 0; i < d; ++i) b(i, dst) = f.add(b(i, dst), f.mul(factor, b(i, src)));
    for (unsigned j = 0; j < d; ++j) b(dst, j) = f.add(b(dst, j), f.mul(factor, b(src, j)));
    for (unsigned i = 0; i < d; ++i) c(i, dst) = f.add(c(i, dst), f.mul(factor, c(i, src)));
  };
  auto swap_coords = [&](unsigned x, unsigned y) {
    for (unsigned i = 0; i < d; ++i) std::swap(b(i, x), b(i, y));
    for (unsigned j = 0; j < d; ++j) std::swap(b(x, j), b(y, j));
    for (unsigned i = 0; i < d; ++i) std::swap(c(i, x), c(i, y));
  };

  for (unsigned k = 0; k < d; ++k) {
    if (b(k, k).is_zero()) {
      unsigned j = k + 1;
      while (j < d && b(j, j).is_zero()) ++j;
      if (j < d) {
        swap_coords(k, j);
      } else {
        j = k + 1;
        while (j < d && b(k, j).is_zero()) ++j;
        if (j == d) throw InvalidParameter("quadratic form is degenerate");
        add_to(k, j, f.one());  // new b(k,k) = 2 b(k,j) != 0
      }
    }
    const Element inv = f.inv(b(k, k));
    for (unsigned j = k + 1; j < d; ++j) {
      if (b(k, j).is_zero()) continue;
      add_to(j, k, f.neg(f.mul(b(k, j), inv)));
    }
  }

  std::vector<Element> diag(d);
  for (unsigned i = 0; i < d; ++i) diag[i] = b(i, i);

  auto scale_coord = [&](unsigned i, Element s) {
    for (unsigned r = 0; r < d; ++r) c(r, i) = f.mul(c(r, i), s);
    diag[i] = f.mul(diag[i], f.square(s));
  };
  // Makes diag[i] == target; requires eta(diag[i]) == eta(target).
  auto rescale_to = [&](unsigned i, Element target) {
    const auto s = f.sqrt(f.div(target, diag[i]));
    if (!s) throw InternalError("square-class mismatch during standardization");
    scale_coord(i, *s);
  };

  const Element minus_one = f.neg(f.one());
  for (unsigned i = 0; i + 1 < d; ++i) {
    const Element target = (i % 2 == 0) ? f.one() : minus_one;
    if (f.eta(diag[i]) != f.eta(target)) {
      // Find (u, v) with diag[i] u^2 + diag[i+1] v^2 = target, smallest u first.
      bool found = false;
      for (std::uint32_t ui = 0; ui < f.q() && !found; ++ui) {
        const Element u{ui};
        const Element rest = f.div(f.sub(target, f.mul(diag[i], f.square(u))), diag[i + 1]);
        const auto v = f.sqrt(rest);
        if (!v) continue;
        found = true;
        const Element di = diag[i], dn = diag[i + 1];
        for (unsigned r = 0; r < d; ++r) {
          const Element ci = c(r, i), cn = c(r, i + 1);
          c(r, i) = f.add(f.mul(u, ci), f.mul(*v, cn));
          c(r, i + 1) = f.add(f.mul(f.neg(f.mul(dn, *v)), ci), f.mul(f.mul(di, u), cn));
        }
        diag[i] = target;
        diag[i + 1] = f.mul(f.mul(di, dn), target);
      }
      if (!found) throw InternalError("binary form failed to represent target");
    }
    rescale_to(i, target);
  }

  // Last coefficient is -eps (even d) or eps (odd d); pick eps = 1 when possible.
  const Element raw_eps = (d % 2 == 0) ? f.neg(diag[d - 1]) : diag[d - 1];
  const Element eps = f.eta(raw_eps) == 1 ? f.one() : f.smallest_nonsquare();
  rescale_to(d - 1, (d % 2 == 0) ? f.neg(eps) : eps);

  return StandardForm(form.field_ptr(), d, eps, std::move(c));
}

}  // namespace qdist

#endif  // QDIST_QUAD_FORM_HPP
