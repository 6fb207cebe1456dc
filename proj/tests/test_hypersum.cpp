#include <gtest/gtest.h>

#include "hgm/hypersum.hpp"

using namespace hgm;

namespace {

// Gauss sum by direct summation.
Complex direct_gauss(const CharacterTable& ct, long long m) {
  Complex s = 0;
  for (Element u = 1; u < ct.q(); ++u) s += ct.psi(u) * ct.chi(m, u);
  return s;
}

// The classical sum, written out term by term.
Complex classical_oracle(const HypergeometricParams& p, const CharacterTable& ct, Element t) {
  const long long n = ct.order();
  const auto& f = ct.field();
  Element sign_t = t;
  if (p.size() % 2) sign_t = f.neg(t);
  Complex sum = 0;
  for (long long m = 0; m < n; ++m) {
    Complex term = ct.chi(m, sign_t);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const long long a = detail::as_integer(p.alpha[i] * n), b = detail::as_integer(p.beta[i] * n);
      term *= direct_gauss(ct, m + a) * direct_gauss(ct, -m - b) / (direct_gauss(ct, a) * direct_gauss(ct, -b));
    }
    sum += term;
  }
  return sum / (1.0 - static_cast<double>(ct.q()));
}

HypergeometricParams P(std::vector<std::string> a, std::vector<std::string> b) {
  return HypergeometricParams::parse(a, b);
}

}  // namespace

TEST(GammaPower, CubicValue) {
  const auto f = FiniteField::of_order(7);
  // (-3)^{-3} * 1 * 1 * 1 = 1 / (-27) = 1 / 1 = 1 in F_7 since -27 = 1 mod 7.
  EXPECT_EQ(gamma_power({-3, 1, 1, 1}, f), 1u);
  EXPECT_THROW(gamma_power({-3, 1, 1, 1}, FiniteField::of_order(9)), DomainError);
  EXPECT_TRUE(coprime_to_gamma({-3, 1, 1, 1}, 8));
  EXPECT_FALSE(coprime_to_gamma({-3, 1, 1, 1}, 27));
}

TEST(Classical, MatchesTermByTermOracle) {
  for (std::uint64_t q : {7, 13, 16}) {
    const auto gt = GaussTable::of_order(q);
    for (auto p : {P({"1/3", "2/3"}, {"1", "1"}), P({"1/3"}, {"2/3"}), P({"1/5", "3/5"}, {"1", "1/3"})}) {
      if (!p.defined_at(q)) continue;
      for (Element t = 1; t < q; t += 2)
        EXPECT_LT(std::abs(f_classical(p, gt, t) - classical_oracle(p, gt.characters(), t)), 1e-9)
            << to_string(p) << " q=" << q << " t=" << t;
    }
  }
}

TEST(Classical, IndependentOfAdditiveCharacter) {
  const auto f = FiniteField::of_order(13);
  const GaussTable a(CharacterTable(f, {std::nullopt, 1})), b(CharacterTable(f, {std::nullopt, 5}));
  const auto p = P({"1/4", "3/4"}, {"1/2", "1"});
  for (Element t = 1; t < 13; ++t) EXPECT_LT(std::abs(f_classical(p, a, t) - f_classical(p, b, t)), 1e-9);
}

TEST(Classical, RequiresIntegrality) {
  const auto gt = GaussTable::of_order(5);
  EXPECT_THROW(f_classical(P({"1/3", "2/3"}, {"1", "1"}), gt, 1), DomainError);
  EXPECT_THROW(f_classical(P({"1/2"}, {"1"}), gt, 0), DomainError);
}

TEST(Triple, CubicAtOneEqualsOne) {
  const GammaTriple t{{-3, 1, 1, 1}, {0, 0, 0, 0}, 1};
  for (std::uint64_t q : {7, 13, 19}) EXPECT_LT(std::abs(f_triple(t, GaussTable::of_order(q), 1) - 1.0), 1e-9);
}

TEST(Triple, AgreesWithClassicalWhereBothAreDefined) {
  const std::vector<GammaTriple> triples = {
      {{-2, -1, 1, 1, 1}, {1, 0, 0, 0, 0}, 2},
      {{-4, 1, 1, 1, 1}, {0, 1, 1, 2, 0}, 4},
      {{-6, -1, 3, 4}, {0, 0, 0, 0}, 1},
  };
  for (auto& t : triples) {
    const auto p = params_from_triple(t);
    for (std::uint64_t q : {13, 25, 37}) {
      if (!p.defined_at(q) || !triple_defined_at(t, q)) continue;
      const auto gt = GaussTable::of_order(q);
      for (Element x = 1; x < q; ++x) EXPECT_LT(std::abs(f_triple(t, gt, x) - f_classical(p, gt, x)), 1e-8);
    }
  }
}

TEST(Triple, IndependentOfGenerator) {
  const auto f = FiniteField::of_order(19);
  const auto gens = CharacterTable::first_generators(f, 2);
  ASSERT_EQ(gens.size(), 2u);
  const GaussTable a(CharacterTable(f, {gens[0], 1})), b(CharacterTable(f, {gens[1], 1}));
  const GammaTriple t{{-1, -1, 1, 1}, {1, -1, 0, 0}, 3};
  for (Element x = 1; x < 19; ++x) EXPECT_LT(std::abs(f_triple(t, a, x) - f_triple(t, b, x)), 1e-9);
}

TEST(Extended, PicksClassicalWhenDefined) {
  const auto v = f_extended(P({"1/3", "2/3"}, {"1", "1"}), GaussTable::of_order(7), 1);
  EXPECT_EQ(v.definition, Definition::Classical);
  EXPECT_LT(std::abs(v.value - 1.0), 1e-9);
}

TEST(Extended, FallsBackToTripleOffTheCongruence) {
  const auto gt = GaussTable::of_order(5);
  const auto v = f_extended(P({"1/3", "2/3"}, {"1", "1"}), gt, 2);
  EXPECT_EQ(v.definition, Definition::Triple);
  ASSERT_TRUE(v.triple);
  EXPECT_EQ(v.triple->gamma, (std::vector<long long>{-3, 1, 1, 1}));
  EXPECT_LT(std::abs(v.value - f_triple(*v.triple, gt, 2)), 1e-12);
  EXPECT_LT(std::abs(v.value.imag()), 1e-9);
}

TEST(Extended, FailsWhenNoRepresentativeIsDefined) {
  // (1/3; 1) is not defined over Q and needs 3 | q-1 in every implemented triple.
  EXPECT_THROW(f_extended(P({"1/3"}, {"1"}), GaussTable::of_order(5), 1), DomainError);
}
