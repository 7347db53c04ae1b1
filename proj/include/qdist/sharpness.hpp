#ifndef QDIST_SHARPNESS_HPP
#define QDIST_SHARPNESS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdist/counting.hpp"
#include "qdist/error.hpp"
#include "qdist/fourier.hpp"
#include "qdist/point_set.hpp"
#include "qdist/quad_form.hpp"

namespace qdist {

enum class SharpnessKind { Even, OddIII, OddII };

inline const char* to_string(SharpnessKind k) {
  switch (k) {
    case SharpnessKind::Even: return "even";
    case SharpnessKind::OddIII: return "odd-iii";
    case SharpnessKind::OddII: return "odd-ii-delta";
  }
  return "?";
}

struct SharpnessSpec {
  SharpnessKind kind;
  unsigned dim = 0;
  std::optional<double> delta;
  StandardForm form;
  PointSet set;
  std::uint64_t expected_size = 0;
  std::string relation;                   // "= squares" or "subset of squares"
  std::uint32_t progression_length = 0;   // |B_delta|, odd-ii only
};

namespace detail {

/// True when x[0..2k) is made of equal consecutive pairs (t1, t1, t2, t2, ...).
inline bool paired_prefix(std::span<const Element> x, unsigned len) {
  for (unsigned i = 0; i + 1 < len; i += 2)
    if (x[i] != x[i + 1]) return false;
  return true;
}

inline void check_odd(unsigned d) {
  if (d % 2 == 0 || d < 3) throw DomainError("construction needs odd d >= 3 (got d = " + std::to_string(d) + ")");
}

}  // namespace detail

/// E = E1 x F_q x {0} (d >= 4) or F_q x {0} (d = 2); |E| = q^{d/2}.
inline SharpnessSpec build_sharpness_even(const FieldPtr& field, unsigned d, std::optional<Element> eps = {}) {
  if (d % 2 != 0 || d < 2) throw DomainError("even construction needs even d >= 2 (got d = " + std::to_string(d) + ")");
  auto set = PointSet::enumerate(field, d, [d](std::span<const Element> x) {
    return x[d - 1].is_zero() && detail::paired_prefix(x, d - 2);
  });
  return {SharpnessKind::Even, d, std::nullopt, StandardForm(field, d, eps.value_or(field->one())), std::move(set),
          static_cast<std::uint64_t>(detail::ipow(field->q(), d / 2)), "= squares", 0};
}

/// E = H x F_q with H the paired set in F_q^{d-1}; |E| = q^{(d+1)/2}.
inline SharpnessSpec build_sharpness_odd_iii(const FieldPtr& field, unsigned d, std::optional<Element> eps = {}) {
  detail::check_odd(d);
  auto set = PointSet::enumerate(field, d, [d](std::span<const Element> x) { return detail::paired_prefix(x, d - 1); });
  return {SharpnessKind::OddIII, d, std::nullopt, StandardForm(field, d, eps.value_or(field->one())), std::move(set),
          static_cast<std::uint64_t>(detail::ipow(field->q(), (d + 1) / 2)), "= squares", 0};
}

/// ceil(p^{1/2 - delta}).
inline std::uint32_t progression_length(std::uint32_t p, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidParameter("delta must lie in (0, 1/2)");
  return static_cast<std::uint32_t>(std::ceil(std::pow(static_cast<double>(p), 0.5 - delta)));
}

/// E = H x A_delta, A_delta = {sum b_i theta^i : b_i in B_delta}, B_delta = {0, .., L-1}.
inline SharpnessSpec build_sharpness_odd_ii(const FieldPtr& field, unsigned d, double delta,
                                            std::optional<Element> eps = {}) {
  const std::uint32_t len = progression_length(field->p(), delta);
  detail::check_odd(d);
  const Field& f = *field;
  auto set = PointSet::enumerate(field, d, [&](std::span<const Element> x) {
    if (!detail::paired_prefix(x, d - 1)) return false;
    for (auto c : f.coeffs(x[d - 1]))
      if (c >= len) return false;
    return true;
  });
  return {SharpnessKind::OddII, d, delta, StandardForm(field, d, eps.value_or(field->one())), std::move(set),
          static_cast<std::uint64_t>(detail::ipow(field->q(), (d - 1) / 2) * detail::ipow(len, f.ell())), "subset of squares", len};
}

struct SharpnessReport {
  std::uint64_t size = 0;
  bool size_matches = false;
  std::set<Element> distances;
  std::set<Element> quotient;
  std::uint64_t square_count = 0;            // |(F_q)^2| including 0
  bool square_count_formula = false;         // square_count == (q+1)/2
  bool quotient_equals_squares = false;
  bool quotient_within_squares = false;
  bool quotient_strictly_within_squares = false;
  std::vector<Element> vanishing_ratios;     // r != 0 with W(r) = 0
  bool nonsquares_vanish = false;            // every non-square r has W(r) = 0
  std::uint32_t difference_size = 0;         // |B_delta - B_delta|, odd-ii only

  /// Even and odd-iii assert the exact relations; odd-ii asserts only the inclusion, which holds
  /// at every q, and leaves the strict inclusion to the report.
  bool pass(SharpnessKind kind) const {
    if (!size_matches || !square_count_formula || !quotient_within_squares || !nonsquares_vanish) return false;
    if (kind == SharpnessKind::OddII) return true;
    return quotient_equals_squares && !vanishing_ratios.empty();
  }
};

inline SharpnessReport evaluate_sharpness(const SharpnessSpec& spec, unsigned threads = 1) {
  const Field& f = spec.form.field();
  const auto hist = distance_histogram(spec.set, spec.form, threads);
  SharpnessReport rep;
  rep.size = spec.set.size();
  rep.size_matches = rep.size == spec.expected_size;
  for (std::uint32_t t = 0; t < f.q(); ++t)
    if (hist.counts[t]) rep.distances.insert(Element{t});
  rep.quotient = quotient_set_from_histogram(f, hist);
  const auto sq = squares(f);
  rep.square_count = sq.size();
  rep.square_count_formula = rep.square_count == (f.q() + 1) / 2;
  rep.quotient_equals_squares = rep.quotient == sq;
  rep.quotient_within_squares = true;
  for (auto r : rep.quotient) rep.quotient_within_squares = rep.quotient_within_squares && sq.count(r);
  rep.quotient_strictly_within_squares = rep.quotient_within_squares && rep.quotient.size() < sq.size();
  rep.nonsquares_vanish = true;
  for (std::uint32_t r = 1; r < f.q(); ++r) {
    const Element re{r};
    const bool zero = W_from_histogram(f, hist, re).W == 0;
    if (zero) rep.vanishing_ratios.push_back(re);
    if (f.eta(re) == -1 && !zero) rep.nonsquares_vanish = false;
  }
  if (spec.kind == SharpnessKind::OddII) {
    std::set<std::int64_t> diffs;
    for (std::int64_t a = 0; a < spec.progression_length; ++a)
      for (std::int64_t b = 0; b < spec.progression_length; ++b) diffs.insert(((a - b) % f.p() + f.p()) % f.p());
    rep.difference_size = static_cast<std::uint32_t>(diffs.size());
  }
  return rep;
}

}  // namespace qdist

#endif  // QDIST_SHARPNESS_HPP
