#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hgm/ffield.hpp"
#include "hgm/hypersum.hpp"
#include "hgm/toric.hpp"
#include "hgm/zlinalg.hpp"

namespace hgm {

// A Gale vector together with the matrix D writing the exponent rows in the
// primitive basis f_1..f_d; |det D| is the covering degree.
struct CorpusTemplate {
  std::string name;
  std::vector<long long> gamma;
  std::vector<std::vector<long long>> cover;
  std::size_t dwork_dim = 0;  // nonzero: use the Dwork hypersurface of this dimension instead
};

struct CorpusEntry {
  std::string name;
  LaurentHypersurface h;
};

inline const std::vector<CorpusTemplate>& corpus_templates() {
  static const std::vector<CorpusTemplate> t = {
      {"r1s3-prim", {-3, 1, 1, 1}, {{1, 0}, {0, 1}}},
      {"r1s3-deg2", {-3, 1, 1, 1}, {{1, 0}, {0, 2}}},
      {"r1s3-deg3", {-3, 1, 1, 1}, {{1, 1}, {0, 3}}},
      {"r1s3-deg4", {-4, 1, 1, 2}, {{2, 1}, {0, 2}}},
      {"r1s3-prim-b", {-5, 1, 2, 2}, {{1, 0}, {0, 1}}},
      {"dwork2-deg3", {-3, 1, 1, 1}, {}, 2},
      {"r2s2-prim", {-1, -1, 1, 1}, {{1, 0}, {0, 1}}},
      {"r2s2-deg3", {-1, -1, 1, 1}, {{1, 0}, {1, 3}}},
      {"r2s2-deg9", {-2, -1, 1, 2}, {{3, 0}, {0, 3}}},
      {"r2s2-deg2", {-3, -2, 1, 4}, {{1, 1}, {-1, 1}}},
      {"dwork3-deg16", {-4, 1, 1, 1, 1}, {}, 3},
      {"r1s4-prim", {-5, 1, 1, 1, 2}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
      {"r1s4-deg2", {-4, 1, 1, 1, 1}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}},
      {"r2s3-prim", {-2, -1, 1, 1, 1}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
      {"r2s3-deg3", {-3, -1, 1, 1, 2}, {{1, 0, 0}, {0, 1, 1}, {0, 0, 3}}},
      {"r2s3-deg4", {-2, -2, 1, 1, 2}, {{1, 0, 0}, {0, 2, 0}, {0, 0, 2}}},
      {"r2s3-deg9", {-3, -1, 1, 1, 2}, {{1, 0, 0}, {0, 3, 0}, {0, 0, 3}}},
  };
  return t;
}

inline const std::vector<std::uint64_t>& corpus_fields() {
  static const std::vector<std::uint64_t> q = {5, 7, 8, 9, 11, 13, 16, 25};
  return q;
}

// Exponent rows D f + (random translate) with random nonzero coefficients.
inline LaurentHypersurface covered_hypersurface(const std::vector<long long>& gamma,
                                                const std::vector<std::vector<long long>>& cover,
                                                const FiniteField& field, std::mt19937_64& rng) {
  const IntMatrix F = kernel_basis_with_ones(gamma);
  const std::size_t d = gamma.size() - 2;
  detail::require(cover.size() == d, "cover matrix must be d x d");
  std::uniform_int_distribution<int> shift(-1, 1);
  std::uniform_int_distribution<Element> coef(1, field.q() - 1);
  LaurentHypersurface h{field, std::vector<std::vector<long long>>(d, std::vector<long long>(d + 2, 0)), {}};
  for (std::size_t l = 0; l < d; ++l) {
    const int c = shift(rng);
    for (std::size_t j = 0; j < d + 2; ++j) {
      BigInt v = c;
      for (std::size_t k = 0; k < d; ++k) v += BigInt(cover[l][k]) * F(k + 1, j);
      h.exponents[l][j] = detail::to_ll(v);
    }
  }
  for (std::size_t j = 0; j < d + 2; ++j) h.coefficients.push_back(coef(rng));
  return h;
}

// Every template at every corpus field coprime to its Gale vector.
inline std::vector<CorpusEntry> desk_corpus(std::uint64_t seed = 20240601) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  for (auto& t : corpus_templates())
    for (auto q : corpus_fields()) {
      if (!coprime_to_gamma(t.gamma, q)) continue;
      const FiniteField f = FiniteField::of_order(q);
      const std::string name = t.name + "@q" + std::to_string(q);
      if (t.dwork_dim) {
        std::uniform_int_distribution<Element> coef(1, f.q() - 1);
        out.push_back({name, dwork_hypersurface(t.dwork_dim, f, coef(rng))});
      } else {
        out.push_back({name, covered_hypersurface(t.gamma, t.cover, f, rng)});
      }
    }
  return out;
}

}  // namespace hgm
