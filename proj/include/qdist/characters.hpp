#ifndef QDIST_CHARACTERS_HPP
#define QDIST_CHARACTERS_HPP

#include <cstdint>
#include <vector>

#include "qdist/cyclotomic.hpp"
#include "qdist/field.hpp"

namespace qdist {

/// Accumulates sums of chi(x) as exponent counts over F_p, then folds them into Z[zeta_p].
class CharacterSum {
 public:
  explicit CharacterSum(const Field& field) : field_(&field), counts_(field.p(), 0) {}

  void add(Element x, std::int64_t weight = 1) { counts_[field_->trace(x)] += weight; }

  Cyclotomic value() const { return Cyclotomic::from_exponent_counts(field_->p(), counts_); }

 private:
  const Field* field_;
  std::vector<std::int64_t> counts_;
};

/// G = sum_{t != 0} eta(t) chi(t).
inline Cyclotomic gauss_sum(const Field& f) {
  CharacterSum sum(f);
  for (std::uint32_t t = 1; t < f.q(); ++t) sum.add(Element{t}, f.eta(Element{t}));
  return sum.value();
}

/// sum_{t in F_q} chi(a t^2 + b t) in closed form: eta(a) chi(b^2 / (-4a)) G.
inline Cyclotomic completed_square_sum(const Field& f, Element a, Element b) {
  if (a.is_zero()) throw DomainError("completed_square_sum requires a != 0");
  const Element minus_four_a = f.neg(f.mul(f.from_int(4), a));
  const Element shift = f.div(f.square(b), minus_four_a);
  return f.chi(shift) * gauss_sum(f) * f.eta(a);
}

/// Direct evaluation of sum_{t in F_q} chi(a t^2 + b t).
inline Cyclotomic completed_square_sum_direct(const Field& f, Element a, Element b) {
  CharacterSum sum(f);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    const Element t{i};
    sum.add(f.add(f.mul(a, f.square(t)), f.mul(b, t)));
  }
  return sum.value();
}

/// sum_{s != 0} eta(s) chi(b / s) in closed form: eta(b) G.
inline Cyclotomic eta_weighted_inverse_sum(const Field& f, Element b) {
  if (b.is_zero()) throw DomainError("eta_weighted_inverse_sum requires b != 0");
  return gauss_sum(f) * f.eta(b);
}

inline Cyclotomic eta_weighted_inverse_sum_direct(const Field& f, Element b) {
  if (b.is_zero()) throw DomainError("eta_weighted_inverse_sum requires b != 0");
  CharacterSum sum(f);
  for (std::uint32_t i = 1; i < f.q(); ++i) {
    const Element s{i};
    sum.add(f.div(b, s), f.eta(s));
  }
  return sum.value();
}

}  // namespace qdist

#endif  // QDIST_CHARACTERS_HPP
