#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/gammatriple.hpp"
#include "hgm/hypersum.hpp"
#include "hgm/toric.hpp"
#include "hgm/zlinalg.hpp"

namespace hgm {

inline constexpr double kCountTolerance = 1e-6;

struct DecompositionTerm {
  std::vector<long long> lambda;
  GammaTriple triple;
  Complex prefactor;  // chi^lambda(sigma) q^{s(0)-1} g(delta (q-1)/N)
  Complex value;      // the hypergeometric sum of the triple
  HypergeometricParams params;
};

struct CountResult {
  Complex raw;
  long long rounded = 0;
  double residual = 0;
  std::vector<DecompositionTerm> decomposition;
  std::optional<Complex> corollary;  // hypergeometric form of compactification I, when a corollary shape applies
};

namespace detail {

inline BigInt big_pow(std::uint64_t base, std::size_t e) {
  BigInt out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (std::size_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

inline void require_same_field(const GaleData& g, const GaussTable& gt) {
  require(g.field == gt.field(), "Gauss table and hypersurface live over different fields");
}

// chi^lambda(sigma) = prod_k chi^{lambda_k}(sigma_k)
inline Complex sigma_weight(const GaleData& g, const GaussTable& gt, const std::vector<long long>& lambda) {
  Complex w = 1.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) w *= gt.characters().chi(lambda[k], g.sigma[k]);
  return w;
}

// The delta of the triple attached to lambda: its Gauss arguments are -m gamma + D.
inline std::vector<long long> twisted_delta(const LambdaEntry& e, long long n) {
  std::vector<long long> D;
  for (auto x : e.delta) D.push_back(pmod(-x, n));
  return D;
}

inline DecompositionTerm hyper_term(const std::vector<long long>& gamma, std::vector<long long> lambda,
                                    std::vector<long long> delta, long long N, Complex weight, const GaussTable& gt,
                                    Element arg) {
  DecompositionTerm term{std::move(lambda), GammaTriple{gamma, std::move(delta), N}, 0.0, 0.0, {}};
  const auto q = gt.q();
  const auto s0 = static_cast<int>(s_delta(term.triple, q, 0));
  term.prefactor = weight * std::pow(static_cast<double>(q), s0 - 1) * gt.product(scaled_delta(term.triple, q));
  term.value = f_triple(term.triple, gt, arg);
  term.params = params_from_triple(term.triple);
  return term;
}

}  // namespace detail

inline CountResult round_count(Complex raw) {
  CountResult out{raw, std::llround(raw.real()), 0.0, {}, std::nullopt};
  out.residual = std::abs(raw - Complex(static_cast<double>(out.rounded), 0.0));
  if (out.residual >= kCountTolerance)
    throw InternalError("point-count formula is not integral: residual " + std::to_string(out.residual));
  if (out.rounded < 0) throw InternalError("point-count formula is negative");
  return out;
}

inline BigInt compact_I_polynomial(std::size_t r, std::size_t s, std::uint64_t q) {
  using detail::big_pow;
  return (big_pow(q, r + s - 1) - 1) / (q - 1) + big_pow(q - 1, r + s - 2) - big_pow(q, r - 1) * big_pow(q - 1, s - 1) -
         big_pow(q, s - 1) * big_pow(q - 1, r - 1);
}

inline BigInt compact_II_polynomial(std::size_t r, std::size_t s, std::uint64_t q) {
  const std::size_t d = r + s - 2;
  BigInt out = 0;
  for (std::size_t k = 0; k < std::min(r, s); ++k)
    out += detail::binomial(r - 1, k) * detail::binomial(s - 1, k) *
           (detail::big_pow(q, d - k) - detail::big_pow(q, k)) / (q - 1);
  return out;
}

inline bool corollary_shape(std::size_t r, std::size_t s) {
  return std::min(r, s) == 1 || (r == 2 && s == 2) || (std::min(r, s) == 2 && std::max(r, s) == 3);
}

inline BigInt corollary_polynomial(std::size_t r, std::size_t s, std::uint64_t q) {
  detail::require(corollary_shape(r, s), "no corollary form for this (r, s)");
  if (std::min(r, s) == 1) return (detail::big_pow(q, r + s - 2) - 1) / (q - 1);
  if (r == 2 && s == 2) return q + 1;
  return BigInt(q) * q + 3 * q + 1;
}

// #{x in torus : sum over j not in S of u_j x^{m_j} = 0}, S in sorted indexing.
inline CountResult count_stratum(const GaleData& g, const GaussTable& gt, const std::vector<std::size_t>& S) {
  detail::require_same_field(g, gt);
  const std::uint64_t q = gt.q();
  const long long n = gt.order();
  std::vector<bool> in_S(g.d + 2, false);
  for (auto j : S) {
    detail::require(j < g.d + 2, "stratum index out of range");
    in_S[j] = true;
  }
  detail::CompensatedSum sum;
  std::vector<long long> arg(g.d + 2);
  for (auto& e : lambda_set(g, q)) {
    const Complex w = detail::sigma_weight(g, gt, e.lambda);
    for (long long m = 0; m < n; ++m) {
      bool alive = true;
      for (std::size_t j = 0; j < g.d + 2; ++j) {
        arg[j] = detail::pmod(-m * g.gamma[j] - e.delta[j], n);
        if (in_S[j] && arg[j] != 0) alive = false;
      }
      if (alive) sum.add(gt.product(arg) * gt.characters().chi(m, g.t) * w);
    }
  }
  const double qd = static_cast<double>(q);
  const double sign = S.size() % 2 ? -1.0 : 1.0;
  const Complex raw = std::pow(qd - 1, static_cast<double>(g.d)) / qd +
                      sign / qd * std::pow(qd - 1, static_cast<double>(S.size()) - 1) * sum.value();
  return round_count(raw);
}

inline CountResult count_compact_II(const GaleData& g, const GaussTable& gt);

// Closure in the toric variety of the normal fan of the Newton polytope.
inline CountResult count_compact_I(const GaleData& g, const GaussTable& gt) {
  detail::require_same_field(g, gt);
  const std::uint64_t q = gt.q();
  const long long n = gt.order();
  detail::CompensatedSum sum;
  std::vector<long long> arg(g.d + 2);
  for (auto& e : lambda_set(g, q)) {
    const Complex w = detail::sigma_weight(g, gt, e.lambda);
    const auto D = detail::twisted_delta(e, n);
    detail::CompensatedSum inner;
    for (long long m = 0; m < n; ++m) {
      bool neg = false, pos = false;
      for (std::size_t j = 0; j < g.d + 2; ++j) {
        arg[j] = detail::pmod(-m * g.gamma[j] + D[j], n);
        if (arg[j] == 0) (j < g.r ? neg : pos) = true;
      }
      const double eta = (neg && pos) ? 1.0 : 0.0;
      inner.add(std::pow(static_cast<double>(q), eta - 1) * gt.product(arg) * gt.characters().chi(m, g.t));
    }
    sum.add(w * inner.value() / static_cast<double>(n));
  }
  CountResult out = round_count(detail::to_double(compact_I_polynomial(g.r, g.s, q)) + sum.value());
  if (corollary_shape(g.r, g.s) && coprime_to_gamma(g.gamma, q)) {
    const auto cor = count_compact_II(g, gt);
    out.decomposition = cor.decomposition;
    out.corollary = cor.raw;
  }
  return out;
}

// Closure in the toric variety of the staircase refinement.
inline CountResult count_compact_II(const GaleData& g, const GaussTable& gt) {
  detail::require_same_field(g, gt);
  const std::uint64_t q = gt.q();
  const long long n = gt.order();
  detail::require(coprime_to_gamma(g.gamma, q), "q = " + std::to_string(q) + " is not coprime to gamma");
  const FiniteField& f = g.field;
  const Element arg = f.div(g.t, gamma_power(g.gamma, f));
  std::vector<DecompositionTerm> terms;
  detail::CompensatedSum sum;
  for (auto& e : lambda_set(g, q)) {
    terms.push_back(detail::hyper_term(g.gamma, e.lambda, detail::twisted_delta(e, n), n,
                                       detail::sigma_weight(g, gt, e.lambda), gt, arg));
    sum.add(terms.back().prefactor * terms.back().value);
  }
  CountResult out = round_count(detail::to_double(compact_II_polynomial(g.r, g.s, q)) - sum.value());
  out.decomposition = std::move(terms);
  return out;
}

// Primitive case: poly + (-1)^{r+s-1} q^{min(r,s)-1} F_q(gamma, 0, q-1 | t / gamma^gamma).
inline CountResult count_primitive_reduced(const GaleData& g, const GaussTable& gt) {
  detail::require_same_field(g, gt);
  detail::require(g.primitive(), "the reduced form needs a primitive hypersurface");
  const std::uint64_t q = gt.q();
  detail::require(coprime_to_gamma(g.gamma, q), "q = " + std::to_string(q) + " is not coprime to gamma");
  const GammaTriple t{g.gamma, std::vector<long long>(g.gamma.size(), 0), 1};
  const Complex F = f_triple(t, gt, g.field.div(g.t, gamma_power(g.gamma, g.field)));
  const double sign = (g.r + g.s - 1) % 2 ? -1.0 : 1.0;
  return round_count(detail::to_double(compact_II_polynomial(g.r, g.s, q)) +
                     sign * std::pow(static_cast<double>(q), static_cast<double>(std::min(g.r, g.s)) - 1) * F);
}

// Compactified cyclic cover z^N = x^delta over the curve-like family x^gamma = t.
inline CountResult count_cyclic_cover(const GammaTriple& t, const GaussTable& gt, Element tval) {
  const auto shape = validate(t);
  long long dsum = 0;
  for (auto x : t.delta) dsum += x;
  detail::require(dsum == 0, "delta entries must sum to zero");
  detail::require(minor_gcd(t) == 1, "2x2 minors of [gamma; delta] must have gcd 1 (apply normalize_minors)");
  const std::uint64_t q = gt.q();
  detail::require(coprime_to_gamma(t.gamma, q), "q = " + std::to_string(q) + " is not coprime to gamma");
  detail::require((q - 1) % t.N == 0, "N does not divide q-1");
  detail::require(tval != 0, "t must be nonzero");
  const FiniteField& f = gt.field();
  const Element arg = f.div(tval, gamma_power(t.gamma, f));
  std::vector<DecompositionTerm> terms;
  detail::CompensatedSum sum;
  for (long long j = 0; j < t.N; ++j) {
    std::vector<long long> delta;
    for (auto x : t.delta) delta.push_back(detail::pmod(j * x, t.N));
    terms.push_back(detail::hyper_term(t.gamma, {j}, delta, t.N, 1.0, gt, arg));
    sum.add(terms.back().prefactor * terms.back().value);
  }
  CountResult out = round_count(detail::to_double(compact_II_polynomial(shape.r, shape.s, q)) - sum.value());
  out.decomposition = std::move(terms);
  return out;
}

// The torus model of the cyclic cover as a hypersurface in (z, x_2, ..., x_d):
// exponent rows N f_1, f_2, ..., f_d and coefficients t^{kappa_j}.
inline LaurentHypersurface cyclic_cover_hypersurface(const GammaTriple& t, const FiniteField& f, Element tval) {
  validate(t);
  detail::require(minor_gcd(t) == 1, "2x2 minors of [gamma; delta] must have gcd 1");
  detail::require(tval != 0, "t must be nonzero");
  const std::size_t n = t.gamma.size();
  IntMatrix G(2, n);
  for (std::size_t j = 0; j < n; ++j) {
    G(0, j) = t.gamma[j];
    G(1, j) = t.delta[j];
  }
  const auto kappa = solve_integer(G, IntVector{1, 0});
  const auto f1 = solve_integer(G, IntVector{0, 1});
  detail::ensure(kappa && f1, "no integral solution although the minors have gcd 1");
  // Basis of ker G starting with the all-ones vector.
  const auto ker = integer_kernel(G);
  const IntMatrix B = stack_rows(ker, n);
  const auto c = solve_integer(B.transpose(), IntVector(n, 1));
  detail::ensure(c.has_value(), "all-ones vector is not in ker G");
  IntMatrix C(c->size(), 1);
  for (std::size_t i = 0; i < c->size(); ++i) C(i, 0) = (*c)[i];
  const IntMatrix basis = inverse_unimodular(hnf(C).U).transpose() * B;
  LaurentHypersurface h{f, {}, {}};
  std::vector<long long> row;
  for (auto& x : *f1) row.push_back(detail::to_ll(BigInt(t.N) * x));
  h.exponents.push_back(row);
  for (std::size_t k = 1; k < basis.rows(); ++k) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) row.push_back(detail::to_ll(basis(k, j)));
    h.exponents.push_back(row);
  }
  for (auto& x : *kappa) h.coefficients.push_back(f.pow(tval, detail::to_ll(x)));
  return h;
}

struct DworkSpec {
  std::size_t d = 2;
  Element u = 1;
};

inline CountResult dwork_count(const DworkSpec& spec, const GaussTable& gt) {
  const std::size_t d = spec.d;
  detail::require(d >= 2, "Dwork dimension must be at least 2");
  const std::uint64_t q = gt.q();
  const long long dp1 = static_cast<long long>(d) + 1;
  detail::require(dp1 % static_cast<long long>(gt.field().p()) != 0, "q is not coprime to d+1");
  detail::require(spec.u != 0, "u must be nonzero");
  const long long e = std::gcd(static_cast<long long>(q) - 1, dp1);
  const Element arg = gt.field().pow(spec.u, dp1);
  std::vector<long long> gamma(d + 2, 1);
  gamma[0] = -dp1;
  std::vector<DecompositionTerm> terms;
  detail::CompensatedSum sum;
  std::vector<long long> lambda(d - 1, 0);
  for (;;) {
    std::vector<long long> delta(d + 2, 0);
    long long total = 0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      delta[i + 1] = lambda[i];
      total += lambda[i];
    }
    delta[d] = detail::pmod(-total, e);
    DecompositionTerm term{lambda, GammaTriple{gamma, delta, e}, 0.0, 0.0, {}};
    term.prefactor = gt.product(scaled_delta(term.triple, q));
    term.value = f_triple(term.triple, gt, arg);
    term.params = params_from_triple(term.triple);
    sum.add(term.prefactor * term.value);
    terms.push_back(std::move(term));
    std::size_t i = 0;
    while (i < lambda.size() && ++lambda[i] == e) lambda[i++] = 0;
    if (i == lambda.size()) break;
  }
  CountResult out =
      round_count(detail::to_double((detail::big_pow(q, d) - 1) / (q - 1)) - sum.value());
  out.decomposition = std::move(terms);
  return out;
}

struct BinomialIdentityReport {
  bool alternating = false;  // sum_k (-1)^k sum_{m+n=k} C(r,m) C(s,n) == 1
  bool weighted = false;     // sum_k (q-1)^{r+s-k} (...) == (q^r - (q-1)^r)(q^s - (q-1)^s)
  bool ok() const { return alternating && weighted; }
};

inline BinomialIdentityReport binomial_identity_check(std::size_t r, std::size_t s, std::uint64_t q) {
  detail::require(r >= 1 && s >= 1, "r and s must be positive");
  BigInt alt = 0, weighted = 0;
  for (std::size_t k = 2; k <= r + s; ++k) {
    BigInt inner = 0;
    for (std::size_t m = 1; m < k; ++m) inner += detail::binomial(r, m) * detail::binomial(s, k - m);
    alt += (k % 2 ? -inner : inner);
    weighted += detail::big_pow(q - 1, r + s - k) * inner;
  }
  using detail::big_pow;
  return {alt == 1, weighted == (big_pow(q, r) - big_pow(q - 1, r)) * (big_pow(q, s) - big_pow(q - 1, s))};
}

}  // namespace hgm
