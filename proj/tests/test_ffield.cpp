#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hgm/ffield.hpp"

using namespace hgm;

namespace {

const std::vector<std::uint64_t> kFields = {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125};

// Brute-force multiplicative order.
std::uint64_t order_of(const FiniteField& f, Element x) {
  Element y = x;
  std::uint64_t k = 1;
  while (y != 1) {
    y = f.mul(y, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST(PrimePower, RecognisesPrimePowers) {
  EXPECT_FALSE(detail::as_prime_power(1));
  EXPECT_FALSE(detail::as_prime_power(6));
  EXPECT_FALSE(detail::as_prime_power(12));
  EXPECT_FALSE(detail::as_prime_power(100));
  auto pp = detail::as_prime_power(1024);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->p, 2u);
  EXPECT_EQ(pp->k, 10u);
  pp = detail::as_prime_power(343);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->p, 7u);
  EXPECT_EQ(pp->k, 3u);
}

TEST(FiniteField, RejectsNonPrimePowers) {
  EXPECT_THROW(FiniteField::of_order(6), DomainError);
  EXPECT_THROW(FiniteField::of_order(1), DomainError);
  EXPECT_THROW(FiniteField::make(4, 1), DomainError);
}

TEST(FiniteField, RespectsSizeLimit) {
  FieldLimits small;
  small.max_field = 100;
  EXPECT_THROW(FiniteField::of_order(121, small), DomainError);
  EXPECT_NO_THROW(FiniteField::of_order(81, small));
}

TEST(FiniteField, ModulusOfF9IsFirstIrreducibleQuadratic) {
  // Monic quadratics x^2 + c1 x + c0 in encoding order c0 + 3 c1; the first one
  // without a root in F_3 is irreducible.
  std::vector<std::uint32_t> want;
  for (std::uint32_t code = 0; code < 9 && want.empty(); ++code) {
    const std::uint32_t c0 = code % 3, c1 = code / 3;
    bool has_root = false;
    for (std::uint32_t x = 0; x < 3; ++x) has_root = has_root || (x * x + c1 * x + c0) % 3 == 0;
    if (!has_root) want = {c0, c1, 1};
  }
  const auto f = FiniteField::of_order(9);
  EXPECT_EQ(f.modulus(), want);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(FiniteField, PrimeFieldIsIntegerArithmetic) {
  const auto f = FiniteField::of_order(13);
  for (Element a = 0; a < 13; ++a)
    for (Element b = 0; b < 13; ++b) {
      EXPECT_EQ(f.add(a, b), (a + b) % 13);
      EXPECT_EQ(f.mul(a, b), (a * b) % 13);
    }
  EXPECT_EQ(f.from_integer(-1), 12u);
}

TEST(FiniteField, FieldAxioms) {
  std::mt19937 rng(7);
  for (auto q : kFields) {
    const auto f = FiniteField::of_order(q);
    std::uniform_int_distribution<Element> pick(0, f.q() - 1);
    for (int trial = 0; trial < 300; ++trial) {
      const Element a = pick(rng), b = pick(rng), c = pick(rng);
      EXPECT_EQ(f.add(a, b), f.add(b, a));
      EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))) << "q=" << q;
      EXPECT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
        EXPECT_EQ(f.div(f.mul(b, a), a), b);
        EXPECT_EQ(f.pow(a, -1), f.inv(a));
      }
    }
  }
}

TEST(FiniteField, InverseOfZeroIsAnError) {
  const auto f = FiniteField::of_order(8);
  EXPECT_THROW(f.inv(0), DomainError);
}

TEST(FiniteField, DigitsRoundTrip) {
  const auto f = FiniteField::of_order(27);
  for (Element x = 0; x < 27; ++x) EXPECT_EQ(f.from_digits(f.digits(x)), x);
  EXPECT_EQ(f.from_digits(std::vector<std::uint32_t>{1, 2, 0}), 1u + 2u * 3u);
}

TEST(FiniteField, FrobeniusFixesExactlyThePrimeField) {
  for (auto q : kFields) {
    const auto f = FiniteField::of_order(q);
    std::size_t fixed = 0;
    for (Element x = 0; x < f.q(); ++x) fixed += f.pow(x, f.p()) == x;
    EXPECT_EQ(fixed, f.p()) << "q=" << q;
  }
}

TEST(FiniteField, TraceIsSumOfConjugates) {
  for (auto q : kFields) {
    const auto f = FiniteField::of_order(q);
    for (Element x = 0; x < f.q(); ++x) {
      Element s = 0, y = x;
      for (std::uint32_t i = 0; i < f.k(); ++i, y = f.pow(y, f.p())) s = f.add(s, y);
      ASSERT_LT(s, f.p());
      EXPECT_EQ(f.trace(x), s) << "q=" << q << " x=" << x;
    }
  }
}

TEST(CharacterTable, GeneratorIsFirstElementOfFullOrder) {
  for (auto q : kFields) {
    const auto f = FiniteField::of_order(q);
    Element want = 0;
    for (Element x = 1; x < f.q() && !want; ++x)
      if (order_of(f, x) == q - 1) want = x;
    const CharacterTable ct(f);
    EXPECT_EQ(ct.generator(), want) << "q=" << q;
    EXPECT_EQ(f.multiplicative_order(want), q - 1);
  }
}

TEST(CharacterTable, LogAndExpAreInverse) {
  const CharacterTable ct(FiniteField::of_order(49));
  for (Element x = 1; x < 49; ++x) EXPECT_EQ(ct.exp(ct.dlog(x)), x);
  EXPECT_THROW(ct.dlog(0), DomainError);
}

TEST(CharacterTable, CharactersAreMultiplicative) {
  const auto f = FiniteField::of_order(25);
  const CharacterTable ct(f);
  for (long long m : {1, 3, 8, 12}) {
    for (Element a = 1; a < 25; a += 3)
      for (Element b = 1; b < 25; b += 5)
        EXPECT_LT(std::abs(ct.chi(m, f.mul(a, b)) - ct.chi(m, a) * ct.chi(m, b)), 1e-12);
  }
  for (Element a = 1; a < 25; ++a) EXPECT_LT(std::abs(ct.psi(a) * ct.psi(f.neg(a)) - 1.0), 1e-12);
}

TEST(CharacterTable, RejectsBadOptions) {
  const auto f = FiniteField::of_order(7);
  EXPECT_THROW(CharacterTable(f, {Element{2}, 1}), DomainError);  // 2 has order 3
  EXPECT_THROW(CharacterTable(f, {std::nullopt, 0}), DomainError);
  EXPECT_NO_THROW(CharacterTable(f, {Element{5}, 3}));
}

TEST(GaussTable, QuadraticGaussSumOverF3) {
  // psi(x) = zeta_3^x, chi(1) = 1, chi(2) = -1, so g(1) = zeta_3 - zeta_3^2 = i sqrt(3).
  const auto gt = GaussTable::of_order(3);
  const Complex z = std::polar(1.0, 2 * std::numbers::pi / 3);
  EXPECT_LT(std::abs(gt(1) - (z - z * z)), 1e-12);
  EXPECT_LT(std::abs(gt(1) - Complex(0, std::sqrt(3.0))), 1e-12);
}

TEST(GaussTable, TrivialCharacterAndAbsoluteValue) {
  for (auto q : kFields) {
    const auto gt = GaussTable::of_order(q);
    EXPECT_LT(std::abs(gt(0) + 1.0), 1e-9);
    for (long long m = 1; m < gt.order(); ++m)
      EXPECT_NEAR(std::norm(gt(m)), static_cast<double>(q), 1e-8) << "q=" << q << " m=" << m;
  }
}

TEST(GaussTable, MatchesDirectSum) {
  const auto gt = GaussTable::of_order(16);
  const auto& ct = gt.characters();
  for (long long m = 0; m < 15; ++m) {
    Complex s = 0;
    for (Element u = 1; u < 16; ++u) s += ct.psi(u) * ct.chi(m, u);
    EXPECT_LT(std::abs(s - gt(m)), 1e-10);
  }
}

TEST(GaussTable, ProductAndPeriodicity) {
  const auto gt = GaussTable::of_order(11);
  const std::vector<long long> v = {1, -3, 12};
  EXPECT_LT(std::abs(gt.product(v) - gt(1) * gt(7) * gt(2)), 1e-10);
  EXPECT_LT(std::abs(gauss(gt, -1) - gt(9)), 1e-12);
}
