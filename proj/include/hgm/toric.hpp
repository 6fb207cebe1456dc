#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>
#include <vector>

#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/gammatriple.hpp"
#include "hgm/hypersum.hpp"
#include "hgm/zlinalg.hpp"

namespace hgm {

// sum_j u_j x^{m_j} with d+2 monomials in d variables.
struct LaurentHypersurface {
  FiniteField field;
  std::vector<std::vector<long long>> exponents;  // d rows, d+2 columns
  std::vector<Element> coefficients;

  std::size_t dim() const { return exponents.size(); }
  std::size_t terms() const { return coefficients.size(); }

  IntMatrix stacked() const {
    IntMatrix M(dim() + 1, terms());
    for (std::size_t j = 0; j < terms(); ++j) {
      M(0, j) = 1;
      for (std::size_t i = 0; i < dim(); ++i) M(i + 1, j) = exponents[i][j];
    }
    return M;
  }
};

inline void validate(const LaurentHypersurface& h) {
  const std::size_t d = h.dim();
  detail::require(d >= 1, "hypersurface needs at least one variable");
  detail::require(h.terms() == d + 2, "expected d+2 monomials");
  for (auto& row : h.exponents) detail::require(row.size() == d + 2, "exponent rows must have d+2 entries");
  for (auto u : h.coefficients)
    detail::require(u != 0 && h.field.contains(u), "coefficients must be nonzero field elements");
  for (std::size_t a = 0; a < d + 2; ++a)
    for (std::size_t b = a + 1; b < d + 2; ++b) {
      bool same = true;
      for (std::size_t i = 0; i < d; ++i) same = same && h.exponents[i][a] == h.exponents[i][b];
      detail::require(!same, "exponent columns are not distinct");
    }
  detail::require(rank(h.stacked()) == d + 1, "exponent vectors lie in an affine hyperplane");
}

// prod_j u_j^{v_j}
inline Element monomial_value(const FiniteField& f, const std::vector<Element>& u, const IntVector& v) {
  Element out = 1;
  for (std::size_t j = 0; j < u.size(); ++j)
    out = f.mul(out, f.pow(u[j], detail::to_ll(detail::big_mod(v[j], f.q() - 1))));
  return out;
}

struct GaleData {
  FiniteField field;
  std::vector<std::size_t> perm;  // sorted column k is input column perm[k]
  std::vector<long long> gamma;   // negatives first
  std::size_t r = 0, s = 0, d = 0;
  IntMatrix exponents;  // d x (d+2), sorted columns
  std::vector<Element> coefficients;
  IntMatrix fbasis;  // rows 1, f_1, ..., f_d
  IntMatrix coeffC;  // C[k][l] = rho_k . m_l before Hermite reduction
  IntMatrix Nmat;    // Hermite form of coeffC
  IntMatrix rho;     // d x (d+2)
  BigInt degree;
  Element t = 0;
  std::vector<Element> sigma;

  bool primitive() const { return degree == 1; }

  IntMatrix stacked() const {
    IntMatrix M(d + 1, d + 2);
    for (std::size_t j = 0; j < d + 2; ++j) {
      M(0, j) = 1;
      for (std::size_t i = 0; i < d; ++i) M(i + 1, j) = exponents(i, j);
    }
    return M;
  }
};

struct AnalyzeOptions {
  bool flip_gamma_sign = false;
};

namespace detail {

inline void refresh_constants(GaleData& g) {
  IntVector gv(g.gamma.begin(), g.gamma.end());
  g.t = monomial_value(g.field, g.coefficients, gv);
  g.sigma.clear();
  for (std::size_t k = 0; k < g.d; ++k) g.sigma.push_back(monomial_value(g.field, g.coefficients, g.rho.row(k)));
}

}  // namespace detail

inline GaleData analyze(const LaurentHypersurface& h, const AnalyzeOptions& opts = {}) {
  validate(h);
  const std::size_t d = h.dim(), n = d + 2;
  auto gamma = gale_vector(h.stacked());
  for (auto x : gamma)
    detail::require(x != 0, "Gale dual has a zero component (a monomial is not a vertex of a circuit)");
  if (opts.flip_gamma_sign)
    for (auto& x : gamma) x = -x;

  GaleData g{h.field, std::vector<std::size_t>(n), {}, 0, 0, d, IntMatrix(d, n), {}, {}, {}, {}, {}, 0, 0, {}};
  std::iota(g.perm.begin(), g.perm.end(), 0);
  std::stable_sort(g.perm.begin(), g.perm.end(), [&](std::size_t a, std::size_t b) { return gamma[a] < gamma[b]; });
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = g.perm[k];
    g.gamma.push_back(gamma[src]);
    g.coefficients.push_back(h.coefficients[src]);
    for (std::size_t i = 0; i < d; ++i) g.exponents(i, k) = h.exponents[i][src];
    (gamma[src] < 0 ? g.r : g.s)++;
  }

  IntMatrix F = kernel_basis_with_ones(g.gamma);
  IntMatrix rho = solve_rho(F);
  IntMatrix C(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t j = 0; j < n; ++j) C(k, l) += rho(k, j) * g.exponents(l, j);
  g.coeffC = C;

  // Changing the f-basis by U^{-T} turns C into U C and rho into U rho.
  const auto hc = hnf(C);
  g.Nmat = hc.H;
  g.rho = hc.U * rho;
  IntMatrix f(d, n);
  for (std::size_t k = 0; k < d; ++k) f.set_row(k, F.row(k + 1));
  f = inverse_unimodular(hc.U).transpose() * f;
  g.fbasis = IntMatrix(d + 1, n);
  g.fbasis.set_row(0, IntVector(n, 1));
  for (std::size_t k = 0; k < d; ++k) g.fbasis.set_row(k + 1, f.row(k));

  for (std::size_t k = 0; k < d; ++k) g.rho.set_row(k, reduce_mod_vector(g.rho.row(k), g.gamma));
  g.degree = det(g.Nmat);
  detail::ensure(g.degree > 0, "covering matrix has nonpositive determinant");
  detail::refresh_constants(g);
  return g;
}

// rho_k -> rho_k + c_k gamma; sigma is recomputed.
inline GaleData with_rho_shift(GaleData g, const std::vector<long long>& c) {
  detail::require(c.size() == g.d, "one shift per rho vector is required");
  for (std::size_t k = 0; k < g.d; ++k)
    for (std::size_t j = 0; j < g.d + 2; ++j) g.rho(k, j) += BigInt(c[k]) * g.gamma[j];
  detail::refresh_constants(g);
  return g;
}

struct LambdaEntry {
  std::vector<long long> lambda;  // in (Z/(q-1))^d
  std::vector<long long> delta;   // delta(j, lambda) = sum_i lambda_i rho_ij mod q-1
};

inline std::vector<LambdaEntry> lambda_set(const GaleData& g, std::uint64_t q) {
  const long long n = static_cast<long long>(q) - 1;
  std::vector<LambdaEntry> out;
  for (auto& lam : modular_nullspace(g.Nmat, n)) {
    LambdaEntry e{lam, std::vector<long long>(g.d + 2, 0)};
    for (std::size_t j = 0; j < g.d + 2; ++j) {
      BigInt acc = 0;
      for (std::size_t i = 0; i < g.d; ++i) acc += BigInt(lam[i]) * g.rho(i, j);
      e.delta[j] = detail::to_ll(detail::big_mod(acc, n));
    }
    out.push_back(std::move(e));
  }
  return out;
}

struct Face {
  std::vector<std::size_t> S;  // dropped monomials, sorted indexing
  std::size_t dim = 0;
};

// Subsets S with both sign parts nonempty and |S| <= d+1: the proper faces.
inline std::vector<Face> faces(const GaleData& g) {
  const std::size_t n = g.d + 2;
  std::vector<Face> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > g.d + 1) continue;
    bool neg = false, pos = false;
    Face f;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) {
        f.S.push_back(j);
        (j < g.r ? neg : pos) = true;
      }
    if (!neg || !pos) continue;
    f.dim = g.d + 1 - size;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(),
            [](const Face& a, const Face& b) { return a.S.size() != b.S.size() ? a.S.size() < b.S.size() : a.S < b.S; });
  return out;
}

namespace detail {

// Unique solution of A y = b over Q for a consistent system of full column rank.
inline std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t m = A.size(), n = A.empty() ? 0 : A[0].size();
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(A[p], A[row]);
    std::swap(b[p], b[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || A[i][c] == 0) continue;
      const Rational f = A[i][c] / A[row][c];
      for (std::size_t j = c; j < n; ++j) A[i][j] -= f * A[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(c);
    ++row;
  }
  ensure(pivot_col.size() == n, "rational system is not of full column rank");
  for (std::size_t i = row; i < m; ++i) ensure(b[i] == 0, "rational system is inconsistent");
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
  return y;
}

inline std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  IntMatrix M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BigInt l = 1;
    for (auto& x : rows[i]) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      M(i, j) = boost::multiprecision::numerator(Rational(rows[i][j] * l));
  }
  return rank(M);
}

}  // namespace detail

struct FacetNormal {
  Rational alpha0;
  std::vector<Rational> alpha;
};

// (alpha_0, alpha) M = -gamma_i e_j + gamma_j e_i  for i < r <= j (0-based).
inline FacetNormal facet_normal(const GaleData& g, const IntMatrix& M, std::size_t i, std::size_t j) {
  detail::require(i < g.r && j >= g.r && j < g.d + 2, "facet normals pair a negative index with a positive one");
  const std::size_t n = g.d + 2;
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(g.d + 1));
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row <= g.d; ++row) A[col][row] = Rational(M(row, col));
  std::vector<Rational> x(n, 0);
  x[j] = -g.gamma[i];
  x[i] = g.gamma[j];
  auto y = detail::solve_rational(A, x);
  return {y[0], std::vector<Rational>(y.begin() + 1, y.end())};
}

inline FacetNormal facet_normal(const GaleData& g, std::size_t i, std::size_t j) {
  return facet_normal(g, g.stacked(), i, j);
}

struct StairCone {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, j) with i < r <= j
  std::vector<std::size_t> S;                              // support
  std::size_t length() const { return pairs.size(); }
};

inline std::vector<StairCone> staircase_fan(const GaleData& g) {
  const std::size_t n = g.d + 2;
  std::vector<StairCone> out;
  StairCone cur;
  auto support = [](const StairCone& c) {
    std::vector<std::size_t> S;
    for (auto [i, j] : c.pairs) {
      S.push_back(i);
      S.push_back(j);
    }
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
  };
  auto extend = [&](auto&& self, std::size_t i0, std::size_t j0, bool first) -> void {
    for (std::size_t i = i0; i < g.r; ++i)
      for (std::size_t j = j0; j < n; ++j) {
        if (!first && i == i0 && j == j0) continue;
        cur.pairs.emplace_back(i, j);
        auto S = support(cur);
        if (S.size() < n) {
          cur.S = S;
          out.push_back(cur);
          self(self, i, j, false);
        }
        cur.pairs.pop_back();
      }
  };
  out.push_back(StairCone{});
  extend(extend, 0, g.r, true);
  std::sort(out.begin(), out.end(), [](const StairCone& a, const StairCone& b) {
    return a.length() != b.length() ? a.length() < b.length() : a.pairs < b.pairs;
  });
  return out;
}

struct NormalCone {
  std::vector<std::size_t> S;
  std::vector<std::pair<std::size_t, std::size_t>> rays;  // facet pairs (i, j), i in S-, j in S+
  std::size_t dim = 0;                                    // rank of the ray normals
  bool simplicial() const { return rays.size() == dim; }
};

// The cone of inward normals of the face indexed by S.
inline NormalCone normal_cone(const GaleData& g, const std::vector<std::size_t>& S) {
  NormalCone c{S, {}, 0};
  const IntMatrix M = g.stacked();
  std::vector<std::vector<Rational>> normals;
  for (auto i : S)
    for (auto j : S)
      if (i < g.r && j >= g.r) {
        c.rays.emplace_back(i, j);
        normals.push_back(facet_normal(g, M, i, j).alpha);
      }
  c.dim = detail::rational_rank(normals);
  return c;
}

// Indices of the monomials where the functional (alpha0, alpha) is not minimal:
// the S-set of the face it cuts out.
inline std::vector<std::size_t> face_of_functional(const GaleData& g, const FacetNormal& a) {
  std::vector<Rational> val(g.d + 2);
  for (std::size_t j = 0; j < g.d + 2; ++j) {
    val[j] = a.alpha0;
    for (std::size_t i = 0; i < g.d; ++i) val[j] += a.alpha[i] * Rational(g.exponents(i, j));
  }
  const Rational lo = *std::min_element(val.begin(), val.end());
  std::vector<std::size_t> S;
  for (std::size_t j = 0; j < g.d + 2; ++j)
    if (val[j] != lo) S.push_back(j);
  return S;
}

struct FanCheck {
  bool simplicial = true;  // every staircase cone has independent generators
  bool refines = true;     // every staircase cone lies in the normal cone of its support face
  std::size_t cones = 0;
  std::size_t rays = 0;
  std::vector<std::size_t> cones_by_dim;
};

inline FanCheck check_staircase_fan(const GaleData& g) {
  FanCheck out;
  const IntMatrix M = g.stacked();
  out.rays = g.r * g.s;
  out.cones_by_dim.assign(g.d + 1, 0);
  for (auto& c : staircase_fan(g)) {
    ++out.cones;
    if (c.length() <= g.d) out.cones_by_dim[c.length()]++;
    std::vector<std::vector<Rational>> normals;
    FacetNormal sum{0, std::vector<Rational>(g.d, 0)};
    for (auto [i, j] : c.pairs) {
      auto a = facet_normal(g, M, i, j);
      normals.push_back(a.alpha);
      sum.alpha0 += a.alpha0;
      for (std::size_t k = 0; k < g.d; ++k) sum.alpha[k] += a.alpha[k];
      if (face_of_functional(g, a) != std::vector<std::size_t>{i, j}) out.refines = false;
    }
    if (detail::rational_rank(normals) != c.length()) out.simplicial = false;
    if (c.length() == 0) continue;
    if (face_of_functional(g, sum) != c.S) out.refines = false;
    const auto cone = normal_cone(g, c.S);
    for (auto& p : c.pairs)
      if (std::find(cone.rays.begin(), cone.rays.end(), p) == cone.rays.end()) out.refines = false;
  }
  return out;
}

enum class Regularity { Smooth, DoublePoints };

struct RegularityReport {
  Regularity kind = Regularity::Smooth;
  BigInt double_points = 0;
};

// t != gamma^gamma means Delta-regular; otherwise exactly deg(Z) ordinary double points.
inline RegularityReport delta_regularity(const GaleData& g) {
  const auto p = g.field.p();
  detail::require(g.degree % p != 0, "q is not coprime to the covering degree");
  const Element gg = gamma_power(g.gamma, g.field);
  if (g.t != gg) return {};
  return {Regularity::DoublePoints, g.degree};
}

// The hypersurface with exponent rows f_1..f_d of kernel_basis_with_ones(gamma).
inline LaurentHypersurface primitive_hypersurface(const std::vector<long long>& gamma, const FiniteField& f,
                                                  std::vector<Element> coefficients) {
  const auto F = kernel_basis_with_ones(gamma).to_ll();
  return {f, std::vector<std::vector<long long>>(F.begin() + 1, F.end()), std::move(coefficients)};
}

// Affine chart y_{d+1} = 1 of y_1^{d+1} + ... + y_{d+1}^{d+1} - (d+1) u^{-1} y_1...y_{d+1};
// the deformation monomial is listed first.
inline LaurentHypersurface dwork_hypersurface(std::size_t d, const FiniteField& f, Element u) {
  detail::require(u != 0, "u must be nonzero");
  const long long e = static_cast<long long>(d) + 1;
  detail::require(f.from_integer(e) != 0, "q is not coprime to d+1");
  LaurentHypersurface h{f, std::vector<std::vector<long long>>(d, std::vector<long long>(d + 2, 0)), {}};
  h.coefficients.push_back(f.neg(f.mul(f.from_integer(e), f.inv(u))));
  for (std::size_t i = 0; i < d; ++i) {
    h.exponents[i][0] = 1;
    h.exponents[i][i + 1] = e;
  }
  for (std::size_t j = 1; j < d + 2; ++j) h.coefficients.push_back(1);
  return h;
}

}  // namespace hgm
