#ifndef QDIST_THEOREM_HPP
#define QDIST_THEOREM_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qdist/counting.hpp"
#include "qdist/cyclotomic.hpp"
#include "qdist/error.hpp"
#include "qdist/fourier.hpp"
#include "qdist/point_set.hpp"
#include "qdist/quad_form.hpp"
#include "qdist/rational.hpp"

namespace qdist {

/// A: d even, eta(eps) = 1.  B: d even, eta(eps) = -1.  C: d odd.
enum class BoundCase { A, B, C };

inline const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::A: return "A";
    case BoundCase::B: return "B";
    case BoundCase::C: return "C";
  }
  return "?";
}

inline BoundCase bound_case(const StandardForm& form) {
  if (!form.is_even()) return BoundCase::C;
  return form.eta_epsilon() == 1 ? BoundCase::A : BoundCase::B;
}

// Size thresholds, compared in integers so that q^{d/2} never has to be formed for odd d.

/// |E| >= 4 q^{d/2}, d even.
inline bool meets_threshold_even(std::uint32_t q, unsigned d, std::uint64_t size) {
  return BigInt(size) >= 4 * big_pow(q, d / 2);
}

/// |E| >= 3 q^{d/2}, d odd, i.e. |E|^2 >= 9 q^d.
inline bool meets_threshold_odd_square(std::uint32_t q, unsigned d, std::uint64_t size) {
  return BigInt(size) * size >= 9 * big_pow(q, d);
}

/// |E| >= (11/6) q^{(d+1)/2}, d odd.
inline bool meets_threshold_odd_all(std::uint32_t q, unsigned d, std::uint64_t size) {
  return 6 * BigInt(size) >= 11 * big_pow(q, (d + 1) / 2);
}

/// Power spectrum of E, grouped by the dual form's value.
///
/// level_energy(t) = sum_{Q*(m) = t} |q^d E^(m)|^2. Sums over sets that are stable under
/// m -> lambda m (lambda in F_p^*) are fixed by every Galois automorphism and hence integers.
class SpectralProfile {
 public:
  SpectralProfile(const PointSet& e, const StandardForm& form, const FourierOptions& opts = {})
      : field_(e.field_ptr()) {
    if (e.dim() != form.dim()) throw InvalidParameter("point set dimension does not match the form");
    const Field& f = *field_;
    const auto table = fourier_set_table(e, opts);
    const auto dual = form.dual();
    level_.assign(f.q(), Cyclotomic(f.p()));
    Point m(e.dim());
    for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
      e.codec().decode(idx, m);
      level_[dual.evaluate(m).index()] += table[idx] * table[idx].conj();
    }
  }

  const Cyclotomic& level_energy(Element t) const { return level_[t.index()]; }

  /// sum_{m in (S_{Q*})_0} |q^d E^(m)|^2.
  BigInt dual_sphere_energy() const { return reduce(level_[0], "dual sphere energy"); }

  /// sum_{(m, m') in V_{Q_r*}} |q^d E^(m)|^2 |q^d E^(m')|^2, using Q*(m') = r Q*(m) on V_{Q_r*}.
  BigInt dual_variety_energy(Element r) const {
    const Field& f = *field_;
    Cyclotomic sum(f.p());
    for (std::uint32_t t = 0; t < f.q(); ++t) sum += level_[t] * level_[f.mul(r, Element{t}).index()];
    return reduce(sum, "dual variety energy");
  }

 private:
  static BigInt reduce(const Cyclotomic& c, const char* what) {
    if (!c.is_integer()) throw InternalError(std::string(what) + " is not a rational integer: " + c.to_string());
    return BigInt(c.coeffs()[0]);
  }

  FieldPtr field_;
  std::vector<Cyclotomic> level_;
};

struct W0BoundReport {
  std::string part;  // "i", "ii" or "iii"
  std::uint64_t w0 = 0;
  Rational bound;
  bool holds = false;
};

struct TheoremClaim {
  std::string part;  // "i", "ii" or "iii"
  bool size_condition_met = false;
  bool hypotheses_met = false;  // parity, and r a non-zero square for (ii)
  Rational bound;
  bool holds = false;  // W >= bound, evaluated regardless of applicability

  bool applicable() const { return size_condition_met && hypotheses_met; }
  bool pass() const { return !applicable() || holds; }
};

struct BoundReport {
  BoundCase case_label = BoundCase::A;
  Element r;
  std::uint64_t W = 0;
  std::uint64_t M = 0;
  std::uint64_t w0 = 0;
  Rational case_rhs;
  bool case_holds = false;
  std::vector<TheoremClaim> claims;

  bool size_condition_met() const {
    for (const auto& c : claims)
      if (c.applicable()) return true;
    return false;
  }

  bool pass() const {
    if (!case_holds) return false;
    for (const auto& c : claims)
      if (!c.pass()) return false;
    return true;
  }
};

/// Evaluates every bound for one (E, standard form) pair. The histogram and the spectral
/// profile are computed once and shared by all r.
class BoundEvaluator {
 public:
  BoundEvaluator(const PointSet& e, const StandardForm& form, const FourierOptions& opts = {})
      : form_(form),
        size_(e.size()),
        hist_(distance_histogram(e, form, opts.threads)),
        spectrum_(e, form, opts) {}

  const StandardForm& form() const { return form_; }
  const DistanceHistogram& histogram() const { return hist_; }
  const SpectralProfile& spectrum() const { return spectrum_; }
  std::uint64_t size() const { return size_; }

  CountReport count(Element r) const { return W_from_histogram(form_.field(), hist_, r); }

  /// M(r) = |E|^4/q + s q^{-d} S_V(r) - s q^{d-1} |E|^2 with s = 1 (d even) or eta(r) (d odd).
  Rational M_fourier(Element r) const {
    detail::check_ratio(r);
    const auto [q, d] = qd();
    const int s = form_.is_even() ? 1 : form_.field().eta(r);
    const BigInt e = size_;
    return Rational(e * e * e * e, q) + s * Rational(spectrum_.dual_variety_energy(r), big_pow(q, d)) -
           s * Rational(big_pow(q, d - 1) * e * e);
  }

  /// w(0) for even d: |E|^2/q + eta(eps) q^{-d/2} S_0 - eta(eps) q^{(d-2)/2} |E|.
  Rational w0_fourier_even() const {
    const auto [q, d] = qd();
    if (d % 2 != 0) throw DomainError("w0_fourier_even needs even d");
    const int s = form_.eta_epsilon();
    const BigInt e = size_;
    return Rational(e * e, q) + s * Rational(spectrum_.dual_sphere_energy(), big_pow(q, d / 2)) -
           s * Rational(big_pow(q, (d - 2) / 2) * e);
  }

  W0BoundReport w0_bound() const {
    const auto [q, d] = qd();
    const BigInt e = size_;
    W0BoundReport rep;
    rep.w0 = hist_.counts[0];
    Rational lead(e * e, q);
    if (d % 2 == 0 && form_.eta_epsilon() == 1) {
      rep.part = "i";
      rep.bound = lead + Rational(spectrum_.dual_sphere_energy(), big_pow(q, d / 2));
    } else if (d % 2 == 0) {
      rep.part = "ii";
      rep.bound = lead + Rational(big_pow(q, (d - 2) / 2) * e);
    } else {
      rep.part = "iii";
      rep.bound = lead + Rational(big_pow(q, (d - 1) / 2) * e);
    }
    rep.holds = Rational(rep.w0) <= rep.bound;
    return rep;
  }

  /// Right-hand side of the case inequality for the form's case.
  Rational case_rhs(Element r) const {
    detail::check_ratio(r);
    const auto [q, d] = qd();
    if (d < 2) throw DomainError("case inequalities need d >= 2");
    const BigInt e = size_;
    const Rational lead(e * e, q);
    Rational w0_term;
    switch (bound_case(form_)) {
      case BoundCase::A:
        w0_term = lead + Rational(spectrum_.dual_sphere_energy(), big_pow(q, d / 2));
        break;
      case BoundCase::B:
        w0_term = lead + Rational(big_pow(q, (d - 2) / 2) * e);
        break;
      case BoundCase::C:
        w0_term = lead + Rational(big_pow(q, (d - 1) / 2) * e);
        break;
    }
    return M_fourier(r) - w0_term * w0_term;
  }

  BoundReport check(Element r) const {
    detail::check_ratio(r);
    const auto [q, d] = qd();
    if (d < 2) throw DomainError("theorem bounds need d >= 2");
    const Field& f = form_.field();
    const auto counts = count(r);

    BoundReport rep;
    rep.case_label = bound_case(form_);
    rep.r = r;
    rep.W = counts.W;
    rep.M = counts.M;
    rep.w0 = counts.w0;
    rep.case_rhs = case_rhs(r);
    rep.case_holds = Rational(rep.W) >= rep.case_rhs;

    const BigInt e = size_;
    const BigInt e4 = e * e * e * e;
    auto claim = [&](const char* part, bool size_ok, bool hyp, Rational bound) {
      TheoremClaim c{part, size_ok, hyp, std::move(bound), false};
      c.holds = Rational(rep.W) >= c.bound;
      rep.claims.push_back(std::move(c));
    };
    if (d % 2 == 0) {
      claim("i", meets_threshold_even(q, d, size_), true, Rational(5 * e4, 48 * BigInt(q)));
    } else {
      claim("ii", meets_threshold_odd_square(q, d, size_), f.eta(r) == 1, Rational(2 * e4, 45 * BigInt(q)));
      claim("iii", meets_threshold_odd_all(q, d, size_), true, Rational(2 * e4, 363 * BigInt(q)));
    }
    return rep;
  }

  std::vector<BoundReport> check_all() const {
    std::vector<BoundReport> out;
    for (std::uint32_t r = 1; r < form_.field().q(); ++r) out.push_back(check(Element{r}));
    return out;
  }

 private:
  std::pair<std::uint32_t, unsigned> qd() const { return {form_.field().q(), form_.dim()}; }

  StandardForm form_;
  std::uint64_t size_;
  DistanceHistogram hist_;
  SpectralProfile spectrum_;
};

inline W0BoundReport w0_bound_check(const PointSet& e, const StandardForm& form) {
  return BoundEvaluator(e, form).w0_bound();
}

inline Rational case_rhs(const PointSet& e, const StandardForm& form, Element r) {
  detail::check_ratio(r);
  return BoundEvaluator(e, form).case_rhs(r);
}

inline BoundReport theorem_check(const PointSet& e, const StandardForm& form, Element r) {
  detail::check_ratio(r);
  if (form.dim() < 2) throw DomainError("theorem bounds need d >= 2");
  return BoundEvaluator(e, form).check(r);
}

struct CorollaryClaim {
  std::string part;
  std::string relation;  // "= F_q" or "contains squares"
  bool condition_met = false;
  bool relation_holds = false;

  bool pass() const { return !condition_met || relation_holds; }
};

struct CorollaryReport {
  std::set<Element> quotient;
  std::vector<CorollaryClaim> claims;

  bool pass() const {
    for (const auto& c : claims)
      if (!c.pass()) return false;
    return true;
  }
};

/// Computes Delta_Q(E)/Delta_Q(E) and checks it against every corollary part whose size
/// condition holds. Parts whose condition fails are reported, not asserted.
template <class Form>
CorollaryReport quotient_corollary_check(const PointSet& e, const Form& form) {
  const unsigned d = form.dim();
  if (d < 2) throw DomainError("corollary needs d >= 2");
  const Field& f = e.field();
  CorollaryReport rep;
  rep.quotient = quotient_set(e, form);
  const bool is_everything = rep.quotient.size() == f.q();
  bool has_squares = true;
  for (auto s : squares(f)) has_squares = has_squares && rep.quotient.count(s);
  if (d % 2 == 0) {
    rep.claims.push_back({"i", "= F_q", meets_threshold_even(f.q(), d, e.size()), is_everything});
  } else {
    rep.claims.push_back({"ii", "contains squares", meets_threshold_odd_square(f.q(), d, e.size()), has_squares});
    rep.claims.push_back({"iii", "= F_q", meets_threshold_odd_all(f.q(), d, e.size()), is_everything});
  }
  return rep;
}

}  // namespace qdist

#endif  // QDIST_THEOREM_HPP
