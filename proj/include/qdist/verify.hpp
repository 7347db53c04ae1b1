#ifndef QDIST_VERIFY_HPP
#define QDIST_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qdist/characters.hpp"
#include "qdist/counting.hpp"
#include "qdist/fourier.hpp"
#include "qdist/random.hpp"

namespace qdist {

struct VerifyGrid {
  std::vector<FieldPtr> fields;
  unsigned max_n = 4;
  unsigned samples = 20;       // coefficient vectors per (q, n) when not exhaustive
  unsigned gcl_sets = 10;      // random sets per (q, n) for the counting lemma
  std::uint64_t seed = 0;
  FourierOptions fourier;
  bool inject_sign_error = false;  // negates every closed form; the suites must then fail
  std::size_t max_witnesses = 10;

  static VerifyGrid defaults() {
    VerifyGrid g;
    for (auto [p, ell] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) g.fields.push_back(Field::make(p, ell));
    return g;
  }
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> witnesses;

  bool pass() const { return failures == 0; }
};

namespace detail {

inline std::string format_elements(std::span<const Element> xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i].index());
  return s + "]";
}

class SuiteRecorder {
 public:
  SuiteRecorder(std::string name, std::size_t max_witnesses) : max_(max_witnesses) { res_.name = std::move(name); }

  template <class WitnessFn>
  void check(bool ok, WitnessFn&& witness) {
    ++res_.checks;
    if (ok) return;
    ++res_.failures;
    if (res_.witnesses.size() < max_) res_.witnesses.push_back(witness());
  }

  SuiteResult take() { return std::move(res_); }

 private:
  SuiteResult res_;
  std::size_t max_;
};

/// All vectors in (F_q^*)^n when there are few enough, otherwise `samples` seeded draws.
inline std::vector<std::vector<Element>> coefficient_vectors(const Field& f, unsigned n, unsigned samples, Rng& rng) {
  std::vector<std::vector<Element>> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= f.q() - 1;
  if (f.q() == 3 || total <= samples) {
    for (std::uint64_t k = 0; k < total; ++k) {
      std::vector<Element> a(n);
      std::uint64_t rest = k;
      for (unsigned i = 0; i < n; ++i, rest /= f.q() - 1) a[i] = Element{static_cast<std::uint32_t>(1 + rest % (f.q() - 1))};
      out.push_back(std::move(a));
    }
    return out;
  }
  for (unsigned s = 0; s < samples; ++s) {
    std::vector<Element> a(n);
    for (auto& x : a) x = Element{static_cast<std::uint32_t>(1 + rng.below(f.q() - 1))};
    out.push_back(std::move(a));
  }
  return out;
}

inline std::string field_tag(const Field& f) { return "q=" + std::to_string(f.q()); }

inline Cyclotomic maybe_negate(const Cyclotomic& c, bool flip) { return flip ? -c : c; }

/// Compares a brute-force table of `s` against closed(m) at every frequency.
template <class Closed, class Witness>
void compare_table(SuiteRecorder& rec, const PointSet& s, const FourierOptions& opts, bool flip, Closed&& closed,
                   Witness&& witness) {
  const auto table = fourier_set_table(s, opts);
  Point m(s.dim());
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    s.codec().decode(idx, m);
    const auto c = closed(std::span<const Element>(m));
    rec.check(table[idx] == maybe_negate(c.value, flip), [&] { return witness(m) + " brute=" + table[idx].to_string() + " closed=" + maybe_negate(c.value, flip).to_string(); });
  }
}

inline std::vector<Element> epsilon_classes(const Field& f) { return {f.one(), f.smallest_nonsquare()}; }

}  // namespace detail

/// Additive orthogonality sum_x chi(m.x) = q^n delta_0(m) for n <= 3, and sum_{t != 0} eta(a t) = 0.
inline SuiteResult verify_orthogonality(const VerifyGrid& g) {
  detail::SuiteRecorder rec("orthogonality", g.max_witnesses);
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    for (unsigned n = 1; n <= std::min(3u, g.max_n); ++n) {
      const auto full = PointSet::full(fp, n);
      const auto table = fourier_set_table(full, g.fourier);
      const auto qn = detail::ipow(f.q(), n);
      Point m(n);
      for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
        full.codec().decode(idx, m);
        rec.check(table[idx] == Cyclotomic::integer(f.p(), idx == 0 ? qn : 0),
                  [&] { return detail::field_tag(f) + " n=" + std::to_string(n) + " m=" + detail::format_elements(m); });
      }
    }
    for (std::uint32_t a = 1; a < f.q(); ++a) {
      std::int64_t s = 0;
      for (std::uint32_t t = 1; t < f.q(); ++t) s += f.eta(f.mul(Element{a}, Element{t}));
      rec.check(s == 0, [&] { return detail::field_tag(f) + " multiplicative a=" + std::to_string(a); });
    }
  }
  return rec.take();
}

/// G^2 = eta(-1) q and G conj(G) = q.
inline SuiteResult verify_gauss(const VerifyGrid& g) {
  detail::SuiteRecorder rec("gauss", g.max_witnesses);
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    const auto gs = gauss_sum(f);
    const std::int64_t q = f.q();
    rec.check(gs * gs == Cyclotomic::integer(f.p(), f.eta(f.neg(f.one())) * q),
              [&] { return detail::field_tag(f) + " G^2=" + (gs * gs).to_string(); });
    rec.check(gs * gs.conj() == Cyclotomic::integer(f.p(), q),
              [&] { return detail::field_tag(f) + " |G|^2=" + (gs * gs.conj()).to_string(); });
  }
  return rec.take();
}

/// Completed-square and eta-weighted closed forms against direct sums, every admissible (a, b).
inline SuiteResult verify_completed_square(const VerifyGrid& g) {
  detail::SuiteRecorder rec("completed-square", g.max_witnesses);
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    for (std::uint32_t a = 1; a < f.q(); ++a)
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        const Element ea{a}, eb{b};
        const auto closed = detail::maybe_negate(completed_square_sum(f, ea, eb), g.inject_sign_error);
        rec.check(closed == completed_square_sum_direct(f, ea, eb), [&] {
          return detail::field_tag(f) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
        });
      }
    for (std::uint32_t b = 1; b < f.q(); ++b) {
      const auto closed = detail::maybe_negate(eta_weighted_inverse_sum(f, Element{b}), g.inject_sign_error);
      rec.check(closed == eta_weighted_inverse_sum_direct(f, Element{b}),
                [&] { return detail::field_tag(f) + " eta-weighted b=" + std::to_string(b); });
    }
  }
  return rec.take();
}

/// Closed-form transform of H_a at every frequency, n = 2..max_n.
inline SuiteResult verify_diagonal_variety(const VerifyGrid& g) {
  detail::SuiteRecorder rec("diagonal-variety", g.max_witnesses);
  Rng rng(derive_seed(g.seed, 1));
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    for (unsigned n = 2; n <= g.max_n; ++n) {
      detail::check_budget(detail::ipow(f.q(), n), g.fourier.budget, "diagonal-variety suite");
      for (const auto& a : detail::coefficient_vectors(f, n, g.samples, rng)) {
        const auto h = diagonal_variety(fp, a);
        detail::compare_table(
            rec, h, g.fourier, g.inject_sign_error, [&](auto m) { return fourier_closed_H(f, a, m); },
            [&](const Point& m) {
              return detail::field_tag(f) + " n=" + std::to_string(n) + " a=" + detail::format_elements(a) +
                     " m=" + detail::format_elements(m);
            });
      }
    }
  }
  return rec.take();
}

/// Closed-form transform of V_{Q_r} at every M in F_q^{2d}, for 2d <= max_n, every r != 0, both eps classes.
inline SuiteResult verify_product_variety(const VerifyGrid& g) {
  detail::SuiteRecorder rec("product-variety", g.max_witnesses);
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    for (unsigned d = 1; 2 * d <= g.max_n; ++d)
      for (auto eps : detail::epsilon_classes(f))
        for (std::uint32_t r = 1; r < f.q(); ++r) {
          const RatioSpec spec(Element{r}, StandardForm(fp, d, eps));
          detail::check_budget(detail::ipow(f.q(), 2 * d), g.fourier.budget, "product-variety suite");
          detail::compare_table(
              rec, product_variety(spec), g.fourier, g.inject_sign_error,
              [&](auto m) { return fourier_closed_VQr(spec, m); },
              [&](const Point& m) {
                return detail::field_tag(f) + " n=" + std::to_string(2 * d) + " r=" + std::to_string(r) +
                       " a=" + detail::format_elements(spec.coefficients()) + " m=" + detail::format_elements(m);
              });
        }
  }
  return rec.take();
}

/// Closed-form transform of (S_Q)_0 at every frequency, d = 2..max_n, both eps classes.
inline SuiteResult verify_sphere(const VerifyGrid& g) {
  detail::SuiteRecorder rec("sphere", g.max_witnesses);
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    for (unsigned d = 2; d <= g.max_n; ++d)
      for (auto eps : detail::epsilon_classes(f)) {
        const StandardForm form(fp, d, eps);
        detail::check_budget(detail::ipow(f.q(), d), g.fourier.budget, "sphere suite");
        detail::compare_table(
            rec, sphere(form, f.zero()), g.fourier, g.inject_sign_error,
            [&](auto m) { return fourier_closed_sphere0(form, m); },
            [&](const Point& m) {
              return detail::field_tag(f) + " n=" + std::to_string(d) + " a=" +
                     detail::format_elements(form.coefficients()) + " m=" + detail::format_elements(m);
            });
      }
  }
  return rec.take();
}

/// Counting lemma on seeded random sets against spheres and diagonal varieties, n in {2, 3};
/// with V = (S_Q)_0 the pair count is w(0).
inline SuiteResult verify_counting_lemma_suite(const VerifyGrid& g) {
  detail::SuiteRecorder rec("counting-lemma", g.max_witnesses);
  std::uint64_t stream = 0;
  for (const auto& fp : g.fields) {
    const Field& f = *fp;
    for (unsigned n = 2; n <= std::min(3u, g.max_n); ++n) {
      detail::check_budget(detail::ipow(f.q(), n), g.fourier.budget, "counting-lemma suite");
      for (unsigned k = 0; k < g.gcl_sets; ++k) {
        Rng rng(derive_seed(g.seed, 1000 + stream++));
        const PointSet full(fp, n);
        const auto set = random_subset(fp, n, 1 + rng.below(full.ambient_size()), rng);
        const StandardForm form(fp, n, rng.below(2) ? f.one() : f.smallest_nonsquare());
        const Element t{static_cast<std::uint32_t>(rng.below(f.q()))};
        std::vector<Element> a(n);
        for (auto& x : a) x = Element{static_cast<std::uint32_t>(1 + rng.below(f.q() - 1))};

        auto tag = [&](const std::string& what) {
          return detail::field_tag(f) + " n=" + std::to_string(n) + " set=" + std::to_string(k) + " " + what;
        };
        const auto s0 = verify_counting_lemma(set, sphere(form, f.zero()), g.fourier);
        rec.check(s0.holds, [&] { return tag("V=(S_Q)_0"); });
        rec.check(s0.pair_count == distance_histogram(set, form).counts[0], [&] { return tag("w(0) specialization"); });
        rec.check(verify_counting_lemma(set, sphere(form, t), g.fourier).holds,
                  [&] { return tag("V=(S_Q)_" + std::to_string(t.index())); });
        rec.check(verify_counting_lemma(set, diagonal_variety(fp, a), g.fourier).holds,
                  [&] { return tag("V=H_a a=" + detail::format_elements(a)); });
      }
    }
  }
  return rec.take();
}

inline std::vector<SuiteResult> run_verification(const VerifyGrid& g) {
  using Suite = std::function<SuiteResult(const VerifyGrid&)>;
  const std::vector<Suite> suites = {verify_orthogonality,    verify_gauss,           verify_completed_square,
                                     verify_diagonal_variety, verify_product_variety, verify_sphere,
                                     verify_counting_lemma_suite};
  std::vector<SuiteResult> out;
  for (const auto& s : suites) out.push_back(s(g));
  return out;
}

}  // namespace qdist

#endif  // QDIST_VERIFY_HPP
