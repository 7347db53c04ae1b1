#include <gtest/gtest.h>

#include <complex>

#include "qdist/characters.hpp"
#include "qdist/cyclotomic.hpp"
#include "qdist/field.hpp"
#include "qdist/random.hpp"
#include "support/oracles.hpp"

using namespace qdist;

namespace {

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-7; }

}  // namespace

TEST(FieldSpec, PrimeFieldHasLinearModulus) {
  const auto s = make_field_spec(3, 1);
  EXPECT_EQ(s.q, 3u);
  EXPECT_EQ(s.modulus, (std::vector<unsigned>{0, 1}));
  EXPECT_EQ(s.to_string(), "3^1:0,1");
}

TEST(FieldSpec, F9ModulusIsThetaSquaredPlusOne) {
  const auto s = make_field_spec(3, 2);
  EXPECT_EQ(s.modulus, (std::vector<unsigned>{1, 0, 1}));
}

TEST(FieldSpec, ModulusMatchesOracleSearch) {
  for (auto [p, ell] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {5u, 3u}, {7u, 2u}, {7u, 3u}, {11u, 2u}}) {
    const auto spec = make_field_spec(p, ell);
    const auto expect = oracle::smallest_irreducible(p, ell);
    ASSERT_EQ(spec.modulus.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(static_cast<long>(spec.modulus[i]), expect[i]) << p << "^" << ell;
  }
}

TEST(FieldSpec, RejectsEvenOrComposite) {
  EXPECT_THROW(make_field_spec(2, 1), InvalidParameter);
  EXPECT_THROW(make_field_spec(9, 1), InvalidParameter);
  EXPECT_THROW(make_field_spec(15, 2), InvalidParameter);
  EXPECT_THROW(make_field_spec(3, 0), InvalidParameter);
  try {
    make_field_spec(4, 1);
    FAIL();
  } catch (const InvalidParameter& e) {
    EXPECT_NE(std::string(e.what()).find("odd prime power required"), std::string::npos);
  }
}

TEST(FieldSpec, ParseVariants) {
  EXPECT_EQ(parse_field("7")->q(), 7u);
  EXPECT_EQ(parse_field("3^2")->spec().modulus, (std::vector<unsigned>{1, 0, 1}));
  EXPECT_EQ(parse_field("3^2:2,2,1")->spec().modulus, (std::vector<unsigned>{2, 2, 1}));
  EXPECT_THROW(parse_field("3^2:0,0,1"), InvalidParameter);  // x^2 is reducible
  EXPECT_THROW(parse_field("abc"), InvalidParameter);
  EXPECT_THROW(parse_field("4"), InvalidParameter);
}

TEST(FieldArithmetic, ThetaSquaredIsMinusOneInF9) {
  auto f = Field::make(3, 2);
  const Element theta = f->theta();
  EXPECT_EQ(theta.index(), 3u);
  EXPECT_EQ(f->mul(theta, theta), f->neg(f->one()));
  EXPECT_EQ(f->mul(theta, theta).index(), 2u);
}

TEST(FieldArithmetic, InverseOfOne) {
  auto f = Field::make(7);
  EXPECT_EQ(f->inv(f->one()), f->one());
  EXPECT_THROW(f->inv(f->zero()), DivisionByZero);
}

TEST(FieldArithmetic, InverseSweepF243) {
  auto f = Field::make(3, 5);
  for (std::uint32_t x = 1; x < f->q(); ++x) EXPECT_EQ(f->mul(Element{x}, f->inv(Element{x})), f->one());
}

TEST(FieldArithmetic, AgreesWithNaivePolynomialArithmetic) {
  for (auto [p, ell] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}, {5u, 2u}, {3u, 3u}, {7u, 2u}}) {
    auto f = Field::make(p, ell);
    const auto nf = oracle::naive_field(p, ell);
    for (std::uint32_t x = 0; x < f->q(); ++x)
      for (std::uint32_t y = 0; y < f->q(); ++y) {
        ASSERT_EQ(f->add(Element{x}, Element{y}).index(), nf.add(x, y));
        ASSERT_EQ(f->mul(Element{x}, Element{y}).index(), nf.mul(x, y));
      }
  }
}

TEST(FieldArithmetic, LargeFieldUsesLogTables) {
  // q = 2187 > 1024, so multiplication goes through log/exp
  auto f = Field::make(3, 7);
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const Element a{static_cast<std::uint32_t>(rng.below(f->q()))}, b{static_cast<std::uint32_t>(rng.below(f->q()))},
        c{static_cast<std::uint32_t>(rng.below(f->q()))};
    ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
  }
}

TEST(FieldArithmetic, PowAndSqrt) {
  auto f = Field::make(5, 2);
  for (std::uint32_t x = 1; x < f->q(); ++x) {
    EXPECT_EQ(f->pow(Element{x}, f->q() - 1), f->one());
    const auto r = f->sqrt(Element{x});
    EXPECT_EQ(r.has_value(), f->eta(Element{x}) == 1);
    if (r) {
      EXPECT_EQ(f->square(*r), Element{x});
    }
  }
}

TEST(Trace, Examples) {
  auto f9 = Field::make(3, 2);
  EXPECT_EQ(f9->trace(f9->zero()), 0u);
  EXPECT_EQ(f9->trace(f9->one()), 2u);
  EXPECT_EQ(f9->trace(f9->theta()), 0u);
}

TEST(Trace, AdditiveAndMatchesFrobeniusSum) {
  for (auto [p, ell] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}}) {
    auto f = Field::make(p, ell);
    const auto nf = oracle::naive_field(p, ell);
    for (std::uint32_t x = 0; x < f->q(); ++x) {
      ASSERT_EQ(static_cast<long>(f->trace(Element{x})), nf.trace(x));
      for (std::uint32_t y = 0; y < f->q(); y += 3)
        ASSERT_EQ(f->trace(f->add(Element{x}, Element{y})), (f->trace(Element{x}) + f->trace(Element{y})) % p);
    }
  }
}

TEST(Chi, Examples) {
  auto f3 = Field::make(3);
  EXPECT_EQ(f3->chi(f3->zero()), Cyclotomic::integer(3, 1));
  const auto c = f3->chi(f3->one()).coeffs();
  EXPECT_EQ(std::vector<std::int64_t>(c.begin(), c.end()), (std::vector<std::int64_t>{0, 1}));
}

TEST(Chi, CharacterSumVanishes) {
  for (auto [p, ell] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {3u, 3u}}) {
    auto f = Field::make(p, ell);
    CharacterSum s(*f);
    for (std::uint32_t x = 0; x < f->q(); ++x) s.add(Element{x});
    EXPECT_TRUE(s.value().is_zero()) << f->q();
  }
}

TEST(Chi, Homomorphism) {
  auto f = Field::make(5, 2);
  for (std::uint32_t x = 0; x < f->q(); x += 2)
    for (std::uint32_t y = 0; y < f->q(); y += 3)
      EXPECT_EQ(f->chi(f->add(Element{x}, Element{y})), f->chi(Element{x}) * f->chi(Element{y}));
}

TEST(Eta, Examples) {
  for (unsigned q : {3u, 7u}) {
    auto f = Field::make(q);
    EXPECT_EQ(f->eta(f->neg(f->one())), -1) << q;
  }
  for (auto [p, ell] : {std::pair{5u, 1u}, {3u, 2u}, {13u, 1u}}) {
    auto f = Field::make(p, ell);
    EXPECT_EQ(f->eta(f->neg(f->one())), 1) << f->q();
  }
  auto f7 = Field::make(7);
  EXPECT_EQ(f7->eta(f7->one()), 1);
  EXPECT_EQ(f7->eta(f7->from_int(2)), 1);
  EXPECT_THROW(f7->eta(f7->zero()), DomainError);
}

TEST(Eta, MultiplicativeAndMatchesOracle) {
  for (auto [p, ell] : {std::pair{3u, 2u}, {5u, 1u}, {11u, 1u}, {5u, 2u}}) {
    auto f = Field::make(p, ell);
    const auto nf = oracle::naive_field(p, ell);
    for (std::uint32_t x = 1; x < f->q(); ++x) {
      ASSERT_EQ(f->eta(Element{x}), nf.eta(x));
      for (std::uint32_t y = 1; y < f->q(); ++y)
        ASSERT_EQ(f->eta(f->mul(Element{x}, Element{y})), f->eta(Element{x}) * f->eta(Element{y}));
    }
    std::int64_t sum = 0;
    for (std::uint32_t t = 1; t < f->q(); ++t) sum += f->eta(Element{t});
    EXPECT_EQ(sum, 0);
  }
}

TEST(Eta, SmallestNonsquare) {
  auto f = Field::make(7);
  EXPECT_EQ(f->smallest_nonsquare().index(), 3u);
  EXPECT_EQ(f->eta(f->smallest_nonsquare()), -1);
}

TEST(Gauss, F3Value) {
  auto f = Field::make(3);
  const auto g = gauss_sum(*f);
  EXPECT_EQ(g, Cyclotomic::zeta_power(3, 1) - Cyclotomic::zeta_power(3, 2));
  EXPECT_EQ(g * g, Cyclotomic::integer(3, -3));
}

TEST(Gauss, IdentitiesAndOracle) {
  for (auto [p, ell] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}, {13u, 1u}, {5u, 2u}, {3u, 3u}}) {
    auto f = Field::make(p, ell);
    const auto g = gauss_sum(*f);
    const std::int64_t q = f->q();
    EXPECT_EQ(g * g, Cyclotomic::integer(p, f->eta(f->neg(f->one())) * q)) << q;
    EXPECT_EQ(g * g.conj(), Cyclotomic::integer(p, q)) << q;
    EXPECT_TRUE(close(g.to_complex(), oracle::gauss_sum(oracle::naive_field(p, ell)))) << q;
  }
}

TEST(CompletedSquare, Examples) {
  auto f = Field::make(3);
  const auto g = gauss_sum(*f);
  EXPECT_EQ(completed_square_sum(*f, f->one(), f->zero()), g);
  EXPECT_EQ(completed_square_sum(*f, f->one(), f->one()), f->chi(f->from_int(2)) * g);
  EXPECT_THROW(completed_square_sum(*f, f->zero(), f->one()), DomainError);
}

TEST(CompletedSquare, ClosedEqualsDirectEverywhere) {
  for (auto [p, ell] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}}) {
    auto f = Field::make(p, ell);
    for (std::uint32_t a = 1; a < f->q(); ++a)
      for (std::uint32_t b = 0; b < f->q(); ++b)
        ASSERT_EQ(completed_square_sum(*f, Element{a}, Element{b}), completed_square_sum_direct(*f, Element{a}, Element{b}));
  }
}

TEST(EtaWeighted, Examples) {
  auto f = Field::make(7);
  const auto g = gauss_sum(*f);
  EXPECT_EQ(eta_weighted_inverse_sum(*f, f->one()), g);
  EXPECT_EQ(eta_weighted_inverse_sum(*f, f->smallest_nonsquare()), -g);
  EXPECT_THROW(eta_weighted_inverse_sum(*f, f->zero()), DomainError);
}

TEST(EtaWeighted, ClosedEqualsDirectEverywhere) {
  for (auto [p, ell] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}, {11u, 1u}}) {
    auto f = Field::make(p, ell);
    for (std::uint32_t b = 1; b < f->q(); ++b)
      ASSERT_EQ(eta_weighted_inverse_sum(*f, Element{b}), eta_weighted_inverse_sum_direct(*f, Element{b}));
  }
}

TEST(Cyclotomic, RoundTripAndNegation) {
  Rng rng(11);
  for (unsigned p : {3u, 5u, 7u, 11u}) {
    for (int k = 0; k < 50; ++k) {
      Cyclotomic a(p);
      for (unsigned e = 0; e < p; ++e)
        a += Cyclotomic::zeta_power(p, e) * (static_cast<std::int64_t>(rng.below(41)) - 20);
      const auto text = a.to_string();
      EXPECT_EQ(Cyclotomic::parse(text), a);
      EXPECT_EQ(Cyclotomic::parse(text).to_string(), text);
      EXPECT_TRUE((a + (-a)).is_zero());
    }
  }
}

TEST(Cyclotomic, ZetaPowerReduction) {
  // 1 + z + z^2 = 0 in Z[z_3]
  EXPECT_TRUE((Cyclotomic::integer(3, 1) + Cyclotomic::zeta_power(3, 1) + Cyclotomic::zeta_power(3, 2)).is_zero());
  EXPECT_EQ(Cyclotomic::zeta_power(5, 5), Cyclotomic::integer(5, 1));
  EXPECT_EQ(Cyclotomic::zeta_power(5, 2).conj(), Cyclotomic::zeta_power(5, 3));
}

TEST(Cyclotomic, OverflowIsDetected) {
  auto big = Cyclotomic::integer(3, INT64_MAX / 2 + 1);
  EXPECT_THROW(big + big, std::exception);
  EXPECT_THROW(big * big, std::exception);
}

TEST(Cyclotomic, ParseRejectsGarbage) {
  EXPECT_THROW(Cyclotomic::parse("1;x"), InvalidParameter);
  EXPECT_THROW(Cyclotomic::parse("1;2;3"), InvalidParameter);  // length 3 means p = 4
}
