#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hgm/gammatriple.hpp"

using namespace hgm;

namespace {

HypergeometricParams P(std::vector<std::string> a, std::vector<std::string> b) {
  return HypergeometricParams::parse(a, b);
}

std::complex<double> root(long long num, long long den) {
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

// Multiplicity of e^{2 pi i m/(q-1)} in gcd(numerator, denominator), by evaluating each factor.
std::size_t s_delta_oracle(const GammaTriple& t, std::uint64_t q, long long m) {
  const long long n = static_cast<long long>(q) - 1;
  const auto z = root(m, n);
  std::size_t num = 0, den = 0;
  for (std::size_t j = 0; j < t.gamma.size(); ++j) {
    const long long k = std::abs(t.gamma[j]);
    const auto c = t.gamma[j] < 0 ? root(t.delta[j], t.N) : root(-t.delta[j], t.N);
    if (std::abs(std::pow(z, static_cast<double>(k)) - c) < 1e-9) (t.gamma[j] < 0 ? num : den)++;
  }
  return std::min(num, den);
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(to_string(Rational(3, 6)), "1/2");
  EXPECT_EQ(to_string(Rational(1)), "1");
  EXPECT_THROW(parse_rational("abc"), DomainError);
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational(""), DomainError);
}

TEST(GammaTriple, Validation) {
  EXPECT_NO_THROW(validate({{-3, 1, 1, 1}, {0, 0, 0, 0}, 1}));
  EXPECT_THROW(validate({{-3, 0, 2, 1}, {0, 0, 0, 0}, 1}), DomainError);
  EXPECT_THROW(validate({{1, 1}, {0, 0}, 1}), DomainError);
  EXPECT_THROW(validate({{-2, 2}, {0, 0}, 1}), DomainError);
  EXPECT_THROW(validate({{-1, 1}, {0, 0}, 0}), DomainError);
  EXPECT_THROW(validate({{-1, 1}, {0}, 1}), DomainError);
  const auto shape = validate({{-2, -1, 1, 1, 1}, {0, 0, 0, 0, 0}, 1});
  EXPECT_EQ(shape.r, 2u);
  EXPECT_EQ(shape.s, 3u);
}

TEST(Params, ParseNormalisesAndRejectsIntegralDifferences) {
  const auto p = P({"2/3", "1/3"}, {"1", "1"});
  EXPECT_EQ(p.alpha, (std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(p.beta, (std::vector<Rational>{Rational(1), Rational(1)}));
  EXPECT_EQ(to_string(p), "(1/3,2/3;1,1)");
  EXPECT_THROW(P({"1/2"}, {"3/2"}), DomainError);
  EXPECT_THROW(P({"1/2"}, {"0"}), DomainError);
  EXPECT_THROW(P({"1/2"}, {"1", "1"}), DomainError);
  EXPECT_EQ(p.common_denominator(), 3);
  EXPECT_TRUE(p.defined_at(7));
  EXPECT_FALSE(p.defined_at(5));
}

TEST(Params, TwoTriplesForTheCubicParameters) {
  const auto want = P({"1/3", "2/3"}, {"1", "1"});
  EXPECT_EQ(params_from_triple({{-3, 1, 1, 1}, {0, 0, 0, 0}, 1}), want);
  EXPECT_EQ(params_from_triple({{-1, -1, 1, 1}, {1, -1, 0, 0}, 3}), want);
}

TEST(Params, QuarticPencilClasses) {
  const std::vector<long long> g = {-4, 1, 1, 1, 1};
  EXPECT_EQ(params_from_triple({g, {0, 0, 0, 0, 0}, 4}), P({"1/4", "1/2", "3/4"}, {"1", "1", "1"}));
  EXPECT_EQ(params_from_triple({g, {0, 2, 2, 0, 0}, 4}), P({"1/4", "3/4"}, {"1/2", "1"}));
  EXPECT_EQ(params_from_triple({g, {0, 1, 3, 0, 0}, 4}), P({"1/2"}, {"1"}));
  EXPECT_EQ(params_from_triple({g, {0, 1, 1, 2, 0}, 4}), P({"1/4"}, {"3/4"}));
  EXPECT_EQ(params_from_triple({g, {0, 3, 3, 2, 0}, 4}), P({"3/4"}, {"1/4"}));
}

TEST(Params, DependOnDeltaOnlyModN) {
  const GammaTriple a{{-1, -1, 1, 1}, {1, -1, 0, 0}, 3}, b{{-1, -1, 1, 1}, {4, 2, 3, -6}, 3};
  EXPECT_EQ(params_from_triple(a), params_from_triple(b));
}

TEST(Params, RootMultisetsHaveEqualSize) {
  const GammaTriple t{{-6, -1, 3, 4}, {1, 0, 2, 0}, 5};
  EXPECT_EQ(numerator_roots(t).size(), 7u);
  EXPECT_EQ(denominator_roots(t).size(), 7u);
}

TEST(Params, TripleRoundTrip) {
  const std::vector<HypergeometricParams> corpus = {
      P({"1/3", "2/3"}, {"1", "1"}),        P({"1/2"}, {"1"}),
      P({"1/4", "3/4"}, {"1/2", "1"}),      P({"1/5", "2/5"}, {"1/3", "1"}),
      P({"1/6", "5/6"}, {"1/4", "3/4"}),    P({"1/2", "1/2", "1/2"}, {"1", "1", "1"}),
      P({"1/7"}, {"1"}),                    P({"3/8", "5/8"}, {"1", "1/3"}),
  };
  for (auto& p : corpus) {
    EXPECT_EQ(params_from_triple(triple_from_params(p)), p) << to_string(p);
    Rational excess = 0;
    for (std::size_t i = 0; i < p.size(); ++i) excess += p.alpha[i] - p.beta[i];
    if (boost::multiprecision::denominator(Rational(2 * excess)) == 1)
      EXPECT_EQ(params_from_triple(balanced_triple_from_params(p)), p) << to_string(p);
    else
      EXPECT_THROW(balanced_triple_from_params(p), DomainError) << to_string(p);
    if (auto t = rational_triple_from_params(p)) {
      for (auto x : t->delta) EXPECT_EQ(x, 0);
      EXPECT_EQ(params_from_triple(*t), p) << to_string(p);
    }
  }
  EXPECT_THROW(triple_from_params(HypergeometricParams{}), DomainError);
  EXPECT_TRUE(params_from_triple(empty_params_triple(3)).empty());
}

TEST(Params, RationalTripleOnlyForParametersOverQ) {
  EXPECT_TRUE(rational_triple_from_params(P({"1/3", "2/3"}, {"1", "1"})));
  EXPECT_TRUE(rational_triple_from_params(P({"1/4", "3/4"}, {"1/2", "1"})));
  EXPECT_FALSE(rational_triple_from_params(P({"1/3"}, {"1"})));
}

TEST(Minors, NormalizationKeepsRepresentedParameters) {
  const GammaTriple t{{-1, -1, 1, 1}, {2, -2, 0, 0}, 6};
  const auto n = normalize_minors(t);
  EXPECT_EQ(n.multiplier, 2);
  EXPECT_EQ(minor_gcd(n.triple), 1);
  GammaTriple back = n.triple;
  for (auto& x : back.delta) x *= n.multiplier;
  EXPECT_EQ(params_from_triple(back), params_from_triple(t));
  EXPECT_EQ(minor_gcd({{-1, -1, 1, 1}, {1, -1, 0, 0}, 3}), 1);
  EXPECT_THROW(normalize_minors({{-1, 1}, {0, 0}, 1}), DomainError);
}

TEST(SDelta, MatchesRootMultiplicity) {
  const std::vector<GammaTriple> triples = {
      {{-3, 1, 1, 1}, {0, 0, 0, 0}, 1},     {{-1, -1, 1, 1}, {1, -1, 0, 0}, 3},
      {{-4, 1, 1, 1, 1}, {0, 1, 1, 2, 0}, 4}, {{-2, -2, 1, 3}, {1, 1, 0, 0}, 2},
      {{-6, -1, 3, 4}, {0, 0, 0, 0}, 1},
  };
  for (auto& t : triples)
    for (std::uint64_t q : {13, 25, 37, 49}) {
      if ((q - 1) % static_cast<std::uint64_t>(t.N)) continue;
      for (long long m = 0; m < static_cast<long long>(q) - 1; ++m) {
        EXPECT_EQ(s_delta(t, q, m), s_delta_oracle(t, q, m)) << "q=" << q << " m=" << m;
        EXPECT_EQ(eta_delta(t, q, m), s_delta_oracle(t, q, m) > 0 ? 1 : 0);
      }
    }
}

TEST(SDelta, ScaledDeltaNeedsIntegrality) {
  const GammaTriple t{{-1, -1, 1, 1}, {1, -1, 0, 0}, 3};
  EXPECT_EQ(scaled_delta(t, 7), (std::vector<long long>{2, -2, 0, 0}));
  EXPECT_THROW(scaled_delta(t, 5), DomainError);
  // Only the entries matter: delta = (3, -3, 0, 0) with N = 3 is fine at every q.
  EXPECT_NO_THROW(scaled_delta({{-1, -1, 1, 1}, {3, -3, 0, 0}, 3}, 5));
}
