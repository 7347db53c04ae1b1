#ifndef QDIST_FOURIER_HPP
#define QDIST_FOURIER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "qdist/cyclotomic.hpp"
#include "qdist/error.hpp"
#include "qdist/field.hpp"
#include "qdist/parallel.hpp"
#include "qdist/point_set.hpp"
#include "qdist/quad_form.hpp"

namespace qdist {

/// q^n * f^(m) as an exact cyclotomic integer; the true transform is value / q^scale.
struct ScaledFourierValue {
  Cyclotomic value;
  unsigned scale = 0;

  friend bool operator==(const ScaledFourierValue&, const ScaledFourierValue&) = default;
};

struct FourierOptions {
  unsigned threads = 1;
  std::uint64_t budget = 1'000'000'000;  // max character evaluations, measured as q^{2n}
};

namespace detail {

inline std::int64_t ipow(std::int64_t base, unsigned e) {
  std::int64_t out = 1;
  for (unsigned i = 0; i < e; ++i) out = checked_mul(out, base);
  return out;
}

inline void check_budget(std::uint64_t ambient, std::uint64_t budget, const char* what) {
  const bool overflow = ambient != 0 && ambient > UINT64_MAX / ambient;
  const std::uint64_t need = overflow ? UINT64_MAX : ambient * ambient;
  if (need > budget)
    throw ResourceError(std::string(what) + " needs " + (overflow ? std::string("> 2^64") : std::to_string(need)) +
                        " character evaluations, budget is " + std::to_string(budget));
}

inline Element product_of(const Field& f, std::span<const Element> a) {
  Element prod = f.one();
  for (auto x : a) prod = f.mul(prod, x);
  return prod;
}

inline Element minus_one_power(const Field& f, unsigned e) { return e % 2 == 0 ? f.one() : f.neg(f.one()); }

}  // namespace detail

/// Level set (S_Q)_t = {x : Q(x) = t} of any form exposing field_ptr(), dim(), evaluate().
template <class Form>
PointSet level_set(const Form& form, Element t) {
  return PointSet::enumerate(form.field_ptr(), form.dim(), [&](std::span<const Element> x) { return form.evaluate(x) == t; });
}

inline PointSet sphere(const StandardForm& form, Element t) { return level_set(form, t); }

/// H_a = {x : sum_j a_j x_j^2 = 0} with all a_j != 0.
inline PointSet diagonal_variety(const FieldPtr& field, std::span<const Element> a) {
  for (auto x : a)
    if (x.is_zero()) throw DomainError("diagonal variety coefficients must be non-zero");
  if (a.empty()) throw InvalidParameter("diagonal variety needs at least one coefficient");
  const Field& f = *field;
  return PointSet::enumerate(field, static_cast<unsigned>(a.size()),
                             [&](std::span<const Element> x) { return evaluate_diagonal(f, a, x).is_zero(); });
}

/// H_{a*}: the variety of the entrywise-inverse coefficient vector.
inline PointSet dual_diagonal_variety(const FieldPtr& field, std::span<const Element> a) {
  const auto inv = inverse_coefficients(*field, a);
  return diagonal_variety(field, inv);
}

/// The form Q(x) - r Q(x') on F_q^{2d} for a standard Q.
struct RatioSpec {
  RatioSpec(Element ratio, StandardForm base) : r(ratio), form(std::move(base)) {
    if (r.is_zero()) throw DomainError("ratio r must be non-zero");
  }

  /// (a', -r a'): the diagonal coefficients of Q(x) - r Q(x').
  std::vector<Element> coefficients() const {
    const Field& f = form.field();
    std::vector<Element> a = form.coefficients();
    const Element minus_r = f.neg(r);
    for (unsigned i = 0; i < form.dim(); ++i) a.push_back(f.mul(minus_r, form.coefficients()[i]));
    return a;
  }

  Element r;
  StandardForm form;
};

inline PointSet product_variety(const RatioSpec& spec) { return diagonal_variety(spec.form.field_ptr(), spec.coefficients()); }

/// V_{Q_r*} = {(m, m') : Q*(m) - r^{-1} Q*(m') = 0}.
inline PointSet dual_product_variety(const RatioSpec& spec) {
  return dual_diagonal_variety(spec.form.field_ptr(), spec.coefficients());
}

/// sum_{x in S} chi(-m . x), by direct summation.
inline ScaledFourierValue fourier_bruteforce(const PointSet& s, std::span<const Element> m) {
  const Field& f = s.field();
  if (m.size() != s.dim()) throw InvalidParameter("frequency dimension mismatch");
  std::vector<std::int64_t> counts(f.p(), 0);
  Point x(s.dim());
  for (auto idx : s.indices()) {
    s.codec().decode(idx, x);
    ++counts[dot_trace_negated(f, m, x)];
  }
  return {Cyclotomic::from_exponent_counts(f.p(), counts), s.dim()};
}

/// The full table m -> q^n E^(m), indexed by point index. Parallel over m; each entry is
/// computed independently so the table does not depend on the thread count.
inline std::vector<Cyclotomic> fourier_set_table(const PointSet& e, const FourierOptions& opts = {}) {
  const Field& f = e.field();
  const unsigned n = e.dim();
  const std::uint64_t size = e.ambient_size();
  detail::check_budget(size, opts.budget, "fourier_set_table");

  const auto coords = e.coordinates();
  const std::size_t members = e.size();
  std::vector<Cyclotomic> table(size);
  parallel_chunks(size, opts.threads, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    Point m(n);
    std::vector<std::int64_t> counts(f.p());
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      e.codec().decode(idx, m);
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t i = 0; i < members; ++i) {
        Element dot = f.zero();
        const Element* x = coords.data() + i * n;
        for (unsigned j = 0; j < n; ++j) dot = f.add(dot, f.mul(m[j], x[j]));
        ++counts[(f.p() - f.trace(dot)) % f.p()];
      }
      table[idx] = Cyclotomic::from_exponent_counts(f.p(), counts);
    }
  });
  return table;
}

/// |F(m)|^2 = F(m) conj(F(m)) for each table entry.
inline std::vector<Cyclotomic> power_spectrum(std::span<const Cyclotomic> table) {
  std::vector<Cyclotomic> out;
  out.reserve(table.size());
  for (const auto& v : table) out.push_back(v * v.conj());
  return out;
}

/// q^n H_a^(m) in closed form.
///   n even: q^{n-1} delta_0(m) + q^{n/2} s H_{a*}(m) - q^{(n-2)/2} s,  s = eta((-1)^{n/2} prod a)
///   n odd:  q^{n-1} delta_0(m) on H_{a*}; otherwise q^{(n-1)/2} eta((-1)^{(n+3)/2} prod a) eta(sum a_j^{-1} m_j^2)
inline ScaledFourierValue fourier_closed_H(const Field& f, std::span<const Element> a, std::span<const Element> m) {
  const auto n = static_cast<unsigned>(a.size());
  if (m.size() != n) throw InvalidParameter("frequency dimension mismatch");
  const auto a_inv = inverse_coefficients(f, a);
  const Element dual_value = evaluate_diagonal(f, a_inv, m);
  bool is_zero = true;
  for (auto x : m) is_zero = is_zero && x.is_zero();
  const std::int64_t q = f.q();
  const Element prod = detail::product_of(f, a);

  std::int64_t v = 0;
  if (n % 2 == 0) {
    const int s = f.eta(f.mul(detail::minus_one_power(f, n / 2), prod));
    if (is_zero) v += detail::ipow(q, n - 1);
    if (dual_value.is_zero()) v += s * detail::ipow(q, n / 2);
    v -= s * detail::ipow(q, (n - 2) / 2);
  } else if (dual_value.is_zero()) {
    if (is_zero) v = detail::ipow(q, n - 1);
  } else {
    const int s = f.eta(f.mul(detail::minus_one_power(f, (n + 3) / 2), prod));
    v = s * f.eta(dual_value) * detail::ipow(q, (n - 1) / 2);
  }
  return {Cyclotomic::integer(f.p(), v), n};
}

/// q^{2d} V_{Q_r}^(M) in closed form:
///   d even: q^{2d-1} delta_0(M) + q^d V*(M) - q^{d-1}
///   d odd:  q^{2d-1} delta_0(M) + eta(r) q^d V*(M) - eta(r) q^{d-1}
inline ScaledFourierValue fourier_closed_VQr(const RatioSpec& spec, std::span<const Element> big_m) {
  const Field& f = spec.form.field();
  const unsigned d = spec.form.dim();
  if (big_m.size() != 2 * d) throw InvalidParameter("frequency must lie in F_q^{2d}");
  const auto a_inv = inverse_coefficients(f, spec.coefficients());
  const bool on_dual = evaluate_diagonal(f, a_inv, big_m).is_zero();
  bool is_zero = true;
  for (auto x : big_m) is_zero = is_zero && x.is_zero();
  const std::int64_t q = f.q();
  const int s = (d % 2 == 0) ? 1 : f.eta(spec.r);

  std::int64_t v = 0;
  if (is_zero) v += detail::ipow(q, 2 * d - 1);
  if (on_dual) v += s * detail::ipow(q, d);
  v -= s * detail::ipow(q, d - 1);
  return {Cyclotomic::integer(f.p(), v), 2 * d};
}

/// q^d (S_Q)_0^(m) in closed form:
///   d even: q^{d-1} delta_0(m) + q^{d/2} eta(eps) (S_{Q*})_0(m) - q^{(d-2)/2} eta(eps)
///   d odd:  q^{d-1} delta_0(m) on (S_{Q*})_0; otherwise q^{(d-1)/2} eta(eps) eta(||m||_{Q*})
inline ScaledFourierValue fourier_closed_sphere0(const StandardForm& form, std::span<const Element> m) {
  const Field& f = form.field();
  const unsigned d = form.dim();
  if (m.size() != d) throw InvalidParameter("frequency dimension mismatch");
  const Element dual_value = form.dual().evaluate(m);
  bool is_zero = true;
  for (auto x : m) is_zero = is_zero && x.is_zero();
  const std::int64_t q = f.q();
  const int s = form.eta_epsilon();

  std::int64_t v = 0;
  if (d % 2 == 0) {
    if (is_zero) v += detail::ipow(q, d - 1);
    if (dual_value.is_zero()) v += s * detail::ipow(q, d / 2);
    v -= s * detail::ipow(q, (d - 2) / 2);
  } else if (dual_value.is_zero()) {
    if (is_zero) v = detail::ipow(q, d - 1);
  } else {
    v = s * f.eta(dual_value) * detail::ipow(q, (d - 1) / 2);
  }
  return {Cyclotomic::integer(f.p(), v), d};
}

/// Enumerated varieties keyed by (field, coefficient vector, level). Thread-safe.
class VarietyCache {
 public:
  std::shared_ptr<const PointSet> diagonal(const FieldPtr& field, std::span<const Element> a, Element level = Element{0}) {
    std::string key = field->spec().to_string() + "|" + std::to_string(level.index()) + "|";
    for (auto x : a) key += std::to_string(x.index()) + ",";
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const Field& f = *field;
    auto built = std::make_shared<const PointSet>(PointSet::enumerate(
        field, static_cast<unsigned>(a.size()), [&](std::span<const Element> x) { return evaluate_diagonal(f, a, x) == level; }));
    std::lock_guard lock(mutex_);
    return cache_.emplace(key, std::move(built)).first->second;
  }

  std::shared_ptr<const PointSet> sphere(const StandardForm& form, Element t) {
    return diagonal(form.field_ptr(), form.coefficients(), t);
  }

  std::shared_ptr<const PointSet> dual_product(const RatioSpec& spec) {
    return diagonal(spec.form.field_ptr(), inverse_coefficients(spec.form.field(), spec.coefficients()));
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const PointSet>> cache_;
};

}  // namespace qdist

#endif  // QDIST_FOURIER_HPP
