#include <gtest/gtest.h>

#include "qdist/fourier.hpp"
#include "qdist/random.hpp"
#include "qdist/theorem.hpp"

using namespace qdist;

namespace {

struct Config {
  unsigned p, d;
};

std::vector<StandardForm> both_classes(const FieldPtr& f, unsigned d) {
  return {StandardForm(f, d, f->one()), StandardForm(f, d, f->smallest_nonsquare())};
}

}  // namespace

TEST(BoundCase, Classification) {
  auto f = Field::make(5);
  EXPECT_EQ(bound_case(StandardForm(f, 2, f->one())), BoundCase::A);
  EXPECT_EQ(bound_case(StandardForm(f, 4, f->smallest_nonsquare())), BoundCase::B);
  EXPECT_EQ(bound_case(StandardForm(f, 3, f->one())), BoundCase::C);
  EXPECT_EQ(bound_case(StandardForm(f, 3, f->smallest_nonsquare())), BoundCase::C);
}

TEST(Thresholds, IntegerBoundaries) {
  EXPECT_TRUE(meets_threshold_even(5, 2, 20));
  EXPECT_FALSE(meets_threshold_even(5, 2, 19));
  EXPECT_TRUE(meets_threshold_even(3, 4, 36));
  EXPECT_FALSE(meets_threshold_even(3, 4, 35));
  EXPECT_TRUE(meets_threshold_odd_square(5, 3, 34));  // 3 * 5^{3/2} = 33.54...
  EXPECT_FALSE(meets_threshold_odd_square(5, 3, 33));
  EXPECT_TRUE(meets_threshold_odd_all(3, 3, 17));  // (11/6) * 9 = 16.5
  EXPECT_FALSE(meets_threshold_odd_all(3, 3, 16));
}

TEST(Spectrum, GroupedVarietyEnergyMatchesDirectSum) {
  for (auto c : {Config{3, 2}, Config{3, 3}, Config{5, 2}}) {
    auto f = Field::make(c.p);
    Rng rng(c.p * 31 + c.d);
    for (const auto& form : both_classes(f, c.d)) {
      const auto e = random_subset(f, c.d, 1 + rng.below(PointSet::full(f, c.d).size()), rng);
      const SpectralProfile profile(e, form);
      const auto table = fourier_set_table(e);
      for (std::uint32_t r = 1; r < c.p; ++r) {
        const auto v = dual_product_variety(RatioSpec(Element{r}, form));
        Cyclotomic direct(c.p);
        const std::uint64_t half = PointSet::full(f, c.d).size();
        for (auto idx : v.indices()) {
          const auto& a = table[idx % half];
          const auto& b = table[idx / half];
          direct += (a * a.conj()) * (b * b.conj());
        }
        ASSERT_TRUE(direct.is_integer());
        EXPECT_EQ(profile.dual_variety_energy(Element{r}), BigInt(direct.to_integer())) << "r=" << r;
      }
      Cyclotomic sphere_direct(c.p);
      const auto dual_sphere = sphere(form.dual_standard(), f->zero());
      for (auto idx : dual_sphere.indices()) sphere_direct += table[idx] * table[idx].conj();
      EXPECT_EQ(profile.dual_sphere_energy(), BigInt(sphere_direct.to_integer()));
    }
  }
}

TEST(Spectrum, FourierSideReproducesCounts) {
  for (auto c : {Config{3, 2}, Config{3, 3}, Config{5, 2}, Config{3, 4}, Config{7, 2}}) {
    auto f = Field::make(c.p);
    Rng rng(derive_seed(c.p, c.d));
    for (const auto& form : both_classes(f, c.d))
      for (int k = 0; k < 3; ++k) {
        const auto e = random_subset(f, c.d, rng.below(PointSet::full(f, c.d).size() + 1), rng);
        const BoundEvaluator ev(e, form);
        for (std::uint32_t r = 1; r < c.p; ++r)
          EXPECT_EQ(ev.M_fourier(Element{r}), Rational(ev.count(Element{r}).M));
        if (c.d % 2 == 0) {
          EXPECT_EQ(ev.w0_fourier_even(), Rational(ev.histogram().counts[0]));
        }
      }
  }
}

TEST(W0Bound, Examples) {
  auto f = Field::make(3);
  const auto full = PointSet::full(f, 3);
  const auto rep = w0_bound_check(full, StandardForm(f, 3, f->one()));
  EXPECT_EQ(rep.part, "iii");
  EXPECT_EQ(rep.w0, 243u);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.bound - Rational(rep.w0), Rational(3 * 27));

  PointSet one(f, 2);
  one.insert(std::uint64_t{4});
  for (const auto& form : both_classes(f, 2)) {
    const auto r = w0_bound_check(one, form);
    EXPECT_EQ(r.w0, 1u);
    EXPECT_TRUE(r.holds);
  }
}

TEST(W0Bound, RandomSetsAllCases) {
  std::set<std::string> parts;
  for (unsigned p : {3u, 5u})
    for (unsigned d = 2; d <= 4; ++d) {
      if (p == 5 && d == 4) continue;  // covered by the acceptance run
      auto f = Field::make(p);
      Rng rng(derive_seed(p, d));
      for (const auto& form : both_classes(f, d))
        for (int k = 0; k < 20; ++k) {
          const auto e = random_subset(f, d, rng.below(PointSet::full(f, d).size() + 1), rng);
          const auto rep = w0_bound_check(e, form);
          parts.insert(rep.part);
          EXPECT_TRUE(rep.holds) << "q=" << p << " d=" << d << " |E|=" << e.size();
        }
    }
  EXPECT_EQ(parts, (std::set<std::string>{"i", "ii", "iii"}));
}

TEST(CaseRhs, HoldsOnRandomSets) {
  for (auto c : {Config{3, 2}, Config{5, 2}, Config{3, 3}, Config{3, 4}, Config{7, 2}}) {
    auto f = Field::make(c.p);
    Rng rng(derive_seed(99, c.p * 10 + c.d));
    for (const auto& form : both_classes(f, c.d))
      for (int k = 0; k < 8; ++k) {
        const auto e = random_subset(f, c.d, rng.below(PointSet::full(f, c.d).size() + 1), rng);
        const BoundEvaluator ev(e, form);
        for (std::uint32_t r = 1; r < c.p; ++r) {
          const auto rep = ev.check(Element{r});
          EXPECT_TRUE(rep.case_holds) << "q=" << c.p << " d=" << c.d << " r=" << r;
          EXPECT_EQ(rep.case_label, bound_case(form));
        }
      }
  }
}

TEST(CaseRhs, EmptySetIsNonPositive) {
  auto f = Field::make(5);
  for (unsigned d = 2; d <= 3; ++d)
    for (const auto& form : both_classes(f, d))
      for (std::uint32_t r = 1; r < 5; ++r) EXPECT_LE(case_rhs(PointSet(f, d), form, Element{r}), Rational(0));
}

TEST(CaseRhs, CaseCNegativeSignIsWeaker) {
  // Same data, sign of the variety term flipped: the eta(r) = -1 shape never exceeds the
  // eta(r) = +1 shape at r = 1, because M(1) = sum_t w(t)^2 >= |E|^4 / q.
  for (auto c : {Config{3, 3}, Config{5, 3}}) {
    auto f = Field::make(c.p);
    Rng rng(c.p);
    for (int k = 0; k < 5; ++k) {
      const auto e = random_subset(f, 3, 1 + rng.below(PointSet::full(f, 3).size()), rng);
      const BoundEvaluator ev(e, StandardForm(f, 3, f->one()));
      const unsigned d = 3;
      const BigInt size = e.size();
      const Rational gap = Rational(ev.spectrum().dual_variety_energy(f->one()), big_pow(c.p, d)) -
                           Rational(big_pow(c.p, d - 1) * size * size);
      const Rational plus = ev.case_rhs(f->one());
      const Rational minus = plus - 2 * gap;
      EXPECT_LE(minus, plus);
    }
  }
}

TEST(Theorem, PartIEvenDimension) {
  auto f = Field::make(5);
  Rng rng(2024);
  for (int k = 0; k < 10; ++k) {
    const auto e = random_subset(f, 2, 20 + rng.below(6), rng);
    const BoundEvaluator ev(e, StandardForm(f, 2, f->one()));
    for (const auto& rep : ev.check_all()) {
      ASSERT_EQ(rep.claims.size(), 1u);
      EXPECT_TRUE(rep.claims[0].applicable());
      EXPECT_EQ(rep.claims[0].bound, Rational(5 * BigInt(e.size()) * e.size() * e.size() * e.size(), 48 * 5));
      EXPECT_TRUE(rep.pass());
    }
  }
}

TEST(Theorem, PartIIOnlySquares) {
  auto f = Field::make(5);
  Rng rng(7);
  const auto e = random_subset(f, 3, 34 + rng.below(10), rng);
  for (const auto& rep : BoundEvaluator(e, StandardForm(f, 3, f->one())).check_all()) {
    ASSERT_EQ(rep.claims.size(), 2u);
    EXPECT_EQ(rep.claims[0].part, "ii");
    EXPECT_EQ(rep.claims[0].applicable(), f->eta(rep.r) == 1);
    if (rep.claims[0].applicable()) {
      EXPECT_TRUE(rep.claims[0].holds);
    }
    EXPECT_TRUE(rep.pass());
  }
}

TEST(Theorem, PartIIIAndCorollary) {
  auto f = Field::make(3);
  Rng rng(17);
  for (int k = 0; k < 10; ++k) {
    const auto e = random_subset(f, 3, 17 + rng.below(11), rng);
    const StandardForm form(f, 3, f->one());
    for (const auto& rep : BoundEvaluator(e, form).check_all()) {
      EXPECT_TRUE(rep.claims[1].applicable());
      EXPECT_TRUE(rep.claims[1].holds);
    }
    const auto cor = quotient_corollary_check(e, form);
    EXPECT_EQ(cor.quotient.size(), 3u);
    EXPECT_TRUE(cor.pass());
  }
}

TEST(Theorem, Errors) {
  auto f = Field::make(5);
  PointSet e(f, 1);
  e.insert(std::uint64_t{1});
  EXPECT_THROW(theorem_check(e, StandardForm(f, 1, f->one()), f->one()), DomainError);
  PointSet e2(f, 2);
  EXPECT_THROW(theorem_check(e2, StandardForm(f, 2, f->one()), f->zero()), DomainError);
  EXPECT_THROW(case_rhs(e2, StandardForm(f, 2, f->one()), f->zero()), DomainError);
}

TEST(Corollary, Examples) {
  auto f = Field::make(5);
  Rng rng(20);
  const auto e = random_subset(f, 2, 20, rng);
  const auto rep = quotient_corollary_check(e, StandardForm(f, 2, f->one()));
  EXPECT_TRUE(rep.claims[0].condition_met);
  EXPECT_EQ(rep.quotient.size(), 5u);
  EXPECT_TRUE(rep.pass());

  const auto small = random_subset(f, 2, 3, rng);
  const auto rep_small = quotient_corollary_check(small, StandardForm(f, 2, f->one()));
  EXPECT_FALSE(rep_small.claims[0].condition_met);
  EXPECT_TRUE(rep_small.pass());
}
