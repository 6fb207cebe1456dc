#include <gtest/gtest.h>

#include "hgm/corpus.hpp"
#include "hgm/count.hpp"
#include "hgm/oracle.hpp"

using namespace hgm;

namespace {

// A small slice of the corpus keeps this suite fast; the acceptance run covers all of it.
std::vector<CorpusEntry> sample() {
  std::vector<CorpusEntry> out;
  for (auto& e : desk_corpus())
    if (e.h.field.q() <= 8) out.push_back(e);
  return out;
}

}  // namespace

TEST(Polynomials, SmallCases) {
  for (std::uint64_t q : {2, 5, 7}) {
    EXPECT_EQ(compact_II_polynomial(1, 3, q), q + 1);
    EXPECT_EQ(compact_II_polynomial(2, 2, q), q + 1);
    EXPECT_EQ(corollary_polynomial(2, 2, q), q + 1);
    EXPECT_EQ(corollary_polynomial(1, 4, q), q * q + q + 1);
    EXPECT_EQ(corollary_polynomial(2, 3, q), q * q + 3 * q + 1);
  }
  EXPECT_FALSE(corollary_shape(3, 3));
  EXPECT_THROW(corollary_polynomial(3, 3, 5), DomainError);
}

TEST(BinomialIdentities, HoldOnGrid) {
  for (std::size_t r = 1; r <= 8; ++r)
    for (std::size_t s = 1; s <= 8; ++s)
      for (std::uint64_t q : {2, 3, 5, 7, 11}) EXPECT_TRUE(binomial_identity_check(r, s, q).ok());
  EXPECT_THROW(binomial_identity_check(0, 2, 5), DomainError);
}

TEST(RoundCount, RejectsNonIntegralValues) {
  EXPECT_EQ(round_count({5.0000000001, 1e-12}).rounded, 5);
  EXPECT_THROW(round_count({5.2, 0}), InternalError);
  EXPECT_THROW(round_count({5, 0.1}), InternalError);
  EXPECT_THROW(round_count({-2, 0}), InternalError);
}

TEST(Stratum, MatchesFaceEnumeration) {
  for (auto& e : sample()) {
    const auto gt = GaussTable::of_order(e.h.field.q());
    const auto g = analyze(e.h);
    EXPECT_EQ(count_stratum(g, gt, {}).rounded, bf_torus(e.h)) << e.name;
    for (auto& f : faces(g))
      EXPECT_EQ(count_stratum(g, gt, f.S).rounded, bf_face(e.h, detail::to_input_columns(g, f.S))) << e.name;
  }
}

TEST(Compactifications, MatchBruteForce) {
  for (auto& e : sample()) {
    const auto gt = GaussTable::of_order(e.h.field.q());
    const auto g = analyze(e.h);
    const auto I = count_compact_I(g, gt), II = count_compact_II(g, gt);
    EXPECT_EQ(I.rounded, bf_compact_I(e.h).total) << e.name;
    EXPECT_EQ(II.rounded, bf_compact_II(e.h).total) << e.name;
    EXPECT_LT(I.residual, kCountTolerance);
    EXPECT_EQ(II.decomposition.size(), lambda_set(g, gt.q()).size());
    if (I.corollary) {
      EXPECT_LT(std::abs(*I.corollary - I.raw), 1e-6) << e.name;
    }
    if (g.primitive()) {
      EXPECT_EQ(count_primitive_reduced(g, gt).rounded, II.rounded) << e.name;
    }
  }
}

TEST(Compactifications, RequireCoprimeFieldForHypergeometricForms) {
  const auto h = primitive_hypersurface({-3, 1, 1, 1}, FiniteField::of_order(9), {1, 2, 3, 4});
  const auto gt = GaussTable::of_order(9);
  const auto g = analyze(h);
  EXPECT_THROW(count_compact_II(g, gt), DomainError);
  EXPECT_EQ(count_compact_I(g, gt).rounded, bf_compact_I(h).total);
  EXPECT_FALSE(count_compact_I(g, gt).corollary);
  EXPECT_THROW(count_compact_I(g, GaussTable::of_order(7)), DomainError);
}

TEST(Extended, CubicSumOffTheCongruenceIsAPointCount) {
  // Over F_5, gamma^gamma = (-3)^{-3} = 2, so t = 4 puts the curve at argument 2 and
  // the closure has q + 1 - F(2) points.
  const auto f = FiniteField::of_order(5);
  const auto h = primitive_hypersurface({-3, 1, 1, 1}, f, {1, 4, 1, 1});
  ASSERT_EQ(analyze(h).t, 4u);
  ASSERT_EQ(gamma_power({-3, 1, 1, 1}, f), 2u);
  const auto v = f_extended(HypergeometricParams::parse({"1/3", "2/3"}, {"1", "1"}), GaussTable::of_order(5), 2);
  EXPECT_EQ(bf_compact_II(h).total, 6 - std::llround(v.value.real()));
  EXPECT_EQ(std::llround(v.value.real()), -3);
}

TEST(CyclicCover, FormulaOracleAndClosedForm) {
  const GammaTriple t{{-1, -1, 1, 1}, {1, -1, 0, 0}, 3};
  for (std::uint64_t q : {7, 13}) {
    const auto gt = GaussTable::of_order(q);
    for (Element x = 1; x < q; ++x) {
      const auto c = count_cyclic_cover(t, gt, x);
      EXPECT_EQ(c.rounded, bf_compact_II(cyclic_cover_hypersurface(t, gt.field(), x)).total);
      EXPECT_EQ(c.decomposition.size(), 3u);
    }
    EXPECT_EQ(count_cyclic_cover(t, gt, 1).rounded, 2 * static_cast<long long>(q) - 1);
  }
}

TEST(CyclicCover, Preconditions) {
  const auto gt = GaussTable::of_order(7);
  EXPECT_THROW(count_cyclic_cover({{-1, -1, 1, 1}, {2, -2, 0, 0}, 3}, gt, 1), DomainError);  // minors
  EXPECT_THROW(count_cyclic_cover({{-1, -1, 1, 1}, {1, 0, 0, 0}, 3}, gt, 1), DomainError);   // sum
  EXPECT_THROW(count_cyclic_cover({{-1, -1, 1, 1}, {1, -1, 0, 0}, 3}, GaussTable::of_order(5), 1), DomainError);
  EXPECT_THROW(count_cyclic_cover({{-1, -1, 1, 1}, {1, -1, 0, 0}, 3}, gt, 0), DomainError);
}

TEST(CyclicCover, TorusModelShape) {
  const GammaTriple t{{-1, -1, 1, 1}, {1, -1, 0, 0}, 3};
  const auto h = cyclic_cover_hypersurface(t, FiniteField::of_order(7), 3);
  EXPECT_EQ(h.dim(), 2u);
  const auto g = analyze(h);
  EXPECT_EQ(g.gamma, t.gamma);
  EXPECT_EQ(g.degree, 3);
}

TEST(Dwork, MatchesProjectiveEnumeration) {
  for (std::uint64_t q : {4, 7, 13}) {
    const auto gt = GaussTable::of_order(q);
    for (Element u = 1; u < q; ++u)
      EXPECT_EQ(dwork_count({2, u}, gt).rounded, bf_projective_dwork(2, gt.field(), u)) << q << " " << u;
  }
  const auto gt = GaussTable::of_order(13);
  for (Element u = 1; u < 13; u += 4) EXPECT_EQ(dwork_count({3, u}, gt).rounded, bf_projective_dwork(3, gt.field(), u));
}

TEST(Dwork, DecompositionSizes) {
  EXPECT_EQ(dwork_count({2, 1}, GaussTable::of_order(7)).decomposition.size(), 3u);
  EXPECT_EQ(dwork_count({2, 1}, GaussTable::of_order(5)).decomposition.size(), 1u);
  EXPECT_EQ(dwork_count({3, 1}, GaussTable::of_order(13)).decomposition.size(), 16u);
  EXPECT_EQ(dwork_count({4, 1}, GaussTable::of_order(11)).decomposition.size(), 125u);
}

TEST(Dwork, Preconditions) {
  EXPECT_THROW(dwork_count({2, 1}, GaussTable::of_order(9)), DomainError);
  EXPECT_THROW(dwork_count({1, 1}, GaussTable::of_order(7)), DomainError);
  EXPECT_THROW(dwork_count({2, 0}, GaussTable::of_order(7)), DomainError);
}

TEST(Dwork, ToricModelAgrees) {
  const auto gt = GaussTable::of_order(13);
  for (Element u = 1; u < 13; u += 3) {
    const auto g = analyze(dwork_hypersurface(3, gt.field(), u));
    EXPECT_EQ(count_compact_I(g, gt).rounded, dwork_count({3, u}, gt).rounded);
  }
}
