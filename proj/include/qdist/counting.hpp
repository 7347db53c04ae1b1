#ifndef QDIST_COUNTING_HPP
#define QDIST_COUNTING_HPP

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "qdist/cyclotomic.hpp"
#include "qdist/error.hpp"
#include "qdist/field.hpp"
#include "qdist/fourier.hpp"
#include "qdist/parallel.hpp"
#include "qdist/point_set.hpp"

namespace qdist {

/// counts[t] = #{(x, y) in E^2 : Q(x - y) = t}, indexed by the canonical index of t.
struct DistanceHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t operator[](Element t) const { return counts[t.index()]; }
};

/// W(r) = M(r) - w(0)^2.
struct CountReport {
  Element r;
  std::uint64_t W = 0;
  std::uint64_t M = 0;
  std::uint64_t w0 = 0;
};

namespace detail {

template <class Form>
void check_dims(const PointSet& e, const Form& form) {
  if (e.dim() != form.dim()) throw InvalidParameter("point set dimension does not match the form");
}

inline void check_ratio(Element r) {
  if (r.is_zero())
    throw DomainError("r must be non-zero: W(r) counts ratios Q(x-y)/Q(z-w) whose denominator is non-zero");
}

}  // namespace detail

/// O(|E|^2) pair loop; per-chunk partial histograms are summed, so the result is thread-count independent.
template <class Form>
DistanceHistogram distance_histogram(const PointSet& e, const Form& form, unsigned threads = 1) {
  detail::check_dims(e, form);
  const Field& f = e.field();
  const unsigned d = e.dim();
  const auto coords = e.coordinates();
  const std::size_t n = e.size();

  std::vector<std::vector<std::uint64_t>> partial(chunk_count(n, threads), std::vector<std::uint64_t>(f.q(), 0));
  parallel_chunks(n, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
    auto& local = partial[chunk];
    Point diff(d);
    for (std::uint64_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (unsigned k = 0; k < d; ++k) diff[k] = f.sub(coords[i * d + k], coords[j * d + k]);
        ++local[form.evaluate(diff).index()];
      }
  });

  DistanceHistogram h{std::vector<std::uint64_t>(f.q(), 0), 0};
  for (const auto& local : partial)
    for (std::size_t t = 0; t < local.size(); ++t) h.counts[t] += local[t];
  for (auto c : h.counts) h.total += c;
  return h;
}

template <class Form>
std::uint64_t w_zero(const PointSet& e, const Form& form) {
  return distance_histogram(e, form).counts[0];
}

/// M(r) = sum_t w(r t) w(t).
inline std::uint64_t M_from_histogram(const Field& f, const DistanceHistogram& h, Element r) {
  detail::check_ratio(r);
  std::uint64_t m = 0;
  for (std::uint32_t t = 0; t < f.q(); ++t) m += h.counts[f.mul(r, Element{t}).index()] * h.counts[t];
  return m;
}

inline CountReport W_from_histogram(const Field& f, const DistanceHistogram& h, Element r) {
  CountReport rep;
  rep.r = r;
  rep.M = M_from_histogram(f, h, r);
  rep.w0 = h.counts[0];
  rep.W = rep.M - rep.w0 * rep.w0;
  if (rep.M < rep.w0 * rep.w0) throw InternalError("M(r) < w(0)^2");
  return rep;
}

template <class Form>
std::uint64_t M_of_r(const PointSet& e, const Form& form, Element r) {
  detail::check_ratio(r);
  return M_from_histogram(e.field(), distance_histogram(e, form), r);
}

template <class Form>
CountReport W_of_r(const PointSet& e, const Form& form, Element r) {
  detail::check_ratio(r);
  return W_from_histogram(e.field(), distance_histogram(e, form), r);
}

/// Delta_Q(E) = {Q(x - y) : x, y in E}.
template <class Form>
std::set<Element> distance_set(const PointSet& e, const Form& form) {
  const auto h = distance_histogram(e, form);
  std::set<Element> out;
  for (std::uint32_t t = 0; t < h.counts.size(); ++t)
    if (h.counts[t]) out.insert(Element{t});
  return out;
}

/// Delta_Q(E) / Delta_Q(E) over non-zero denominators: r != 0 belongs iff W(r) > 0,
/// and 0 belongs as soon as any non-zero distance exists.
inline std::set<Element> quotient_set_from_histogram(const Field& f, const DistanceHistogram& h) {
  std::set<Element> out;
  for (std::uint32_t r = 1; r < f.q(); ++r)
    if (W_from_histogram(f, h, Element{r}).W > 0) out.insert(Element{r});
  if (!out.empty()) out.insert(f.zero());
  return out;
}

template <class Form>
std::set<Element> quotient_set(const PointSet& e, const Form& form) {
  return quotient_set_from_histogram(e.field(), distance_histogram(e, form));
}

/// The non-zero squares of F_q together with 0.
inline std::set<Element> squares(const Field& f) {
  std::set<Element> out;
  for (std::uint32_t x = 0; x < f.q(); ++x) out.insert(f.square(Element{x}));
  return out;
}

struct CountingLemmaReport {
  std::uint64_t pair_count = 0;  // #{(x, y) in S^2 : x - y in V}
  Cyclotomic fourier_sum;        // sum_M (q^n V^)(M) |(q^n S^)(M)|^2 = q^n * pair_count
  std::int64_t fourier_side = 0; // fourier_sum / q^n
  bool holds = false;
};

/// Checks #{(x, y) in S^2 : x - y in V} = q^{2n} sum_m V^(m) |S^(m)|^2 in exact arithmetic.
inline CountingLemmaReport verify_counting_lemma(const PointSet& s, const PointSet& v, const FourierOptions& opts = {}) {
  if (s.dim() != v.dim() || s.field().spec() != v.field().spec())
    throw InvalidParameter("counting lemma needs S and V in the same ambient space");
  const Field& f = s.field();
  const unsigned n = s.dim();

  CountingLemmaReport rep;
  const auto coords = s.coordinates();
  Point diff(n);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (unsigned k = 0; k < n; ++k) diff[k] = f.sub(coords[i * n + k], coords[j * n + k]);
      if (v.contains(diff)) ++rep.pair_count;
    }

  const auto v_hat = fourier_set_table(v, opts);
  const auto s_hat = fourier_set_table(s, opts);
  Cyclotomic sum(f.p());
  for (std::size_t m = 0; m < v_hat.size(); ++m) sum += v_hat[m] * (s_hat[m] * s_hat[m].conj());
  rep.fourier_sum = sum;

  const std::int64_t scale = detail::ipow(f.q(), n);
  if (!sum.is_integer() || sum.coeffs()[0] % scale != 0)
    throw InternalError("Fourier side " + sum.to_string() + " is not divisible by q^n");
  rep.fourier_side = sum.coeffs()[0] / scale;
  rep.holds = rep.fourier_side >= 0 && static_cast<std::uint64_t>(rep.fourier_side) == rep.pair_count;
  return rep;
}

}  // namespace qdist

#endif  // QDIST_COUNTING_HPP
