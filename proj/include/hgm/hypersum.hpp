#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/gammatriple.hpp"

namespace hgm {

enum class Definition { Classical, Triple };

inline const char* to_string(Definition d) { return d == Definition::Classical ? "classical" : "triple"; }

struct HypergeometricValue {
  Complex value;
  std::uint32_t q = 0;
  Element t = 0;
  Definition definition = Definition::Classical;
  HypergeometricParams params;
  std::optional<GammaTriple> triple;  // set when the triple definition was used
};

// gamma^gamma = prod_j gamma_j^{gamma_j} in F_q.
inline Element gamma_power(const std::vector<long long>& gamma, const FiniteField& f) {
  Element out = 1;
  for (auto g : gamma) {
    const Element base = f.from_integer(g);
    detail::require(base != 0, "q is not coprime to gamma entry " + std::to_string(g));
    out = f.mul(out, f.pow(base, g));
  }
  return out;
}

inline bool coprime_to_gamma(const std::vector<long long>& gamma, std::uint64_t q) {
  const auto p = static_cast<long long>(detail::prime_factors(q).front());
  for (auto g : gamma)
    if (g % p == 0) return false;
  return true;
}

inline bool triple_defined_at(const GammaTriple& t, std::uint64_t q) {
  if (!coprime_to_gamma(t.gamma, q)) return false;
  for (auto d : t.delta)
    if ((d * static_cast<long long>(q - 1)) % t.N != 0) return false;
  return true;
}

namespace detail {

// (1/(1-q)) sum_m c_m chi^m(x)
inline Complex sum_series(const std::vector<Complex>& c, const GaussTable& gt, Element x) {
  detail::require(x != 0, "hypergeometric argument must be nonzero");
  const auto& ct = gt.characters();
  const long long lx = ct.dlog(x), n = gt.order();
  CompensatedSum sum;
  for (long long m = 0; m < n; ++m) sum.add(c[static_cast<std::size_t>(m)] * ct.zeta_qx(m * lx % n));
  return sum.value() / (1.0 - static_cast<double>(gt.q()));
}

}  // namespace detail

// Coefficients c_m with F_q(alpha;beta|t) = (1/(1-q)) sum_m c_m chi^m(t); the
// chi((-1)^n)^m twist is folded in.
inline std::vector<Complex> classical_coefficients(const HypergeometricParams& p, const GaussTable& gt) {
  const long long n = gt.order();
  detail::require(p.defined_at(gt.q()), "(q-1) alpha_i, (q-1) beta_i are not all integers for q = " +
                                            std::to_string(gt.q()) + "; use the extended definition");
  std::vector<long long> a, b;
  for (auto& x : p.alpha) a.push_back(detail::as_integer(x * n));
  for (auto& x : p.beta) b.push_back(detail::as_integer(x * n));
  const auto& f = gt.field();
  const Element sign = f.from_integer(p.size() % 2 ? -1 : 1);
  Complex norm = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) norm *= gt(a[i]) * gt(-b[i]);
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (long long m = 0; m < n; ++m) {
    Complex num = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) num *= gt(m + a[i]) * gt(-m - b[i]);
    c[static_cast<std::size_t>(m)] = num / norm * gt.characters().chi(m, sign);
  }
  return c;
}

inline Complex f_classical(const HypergeometricParams& p, const GaussTable& gt, Element t) {
  return detail::sum_series(classical_coefficients(p, gt), gt, t);
}

// Coefficients c_m with F_q(gamma,delta,N|t) = (1/(1-q)) sum_m c_m chi^m(t); the
// chi^m(gamma^gamma) factor is folded in.
inline std::vector<Complex> triple_coefficients(const GammaTriple& t, const GaussTable& gt) {
  validate(t);
  const std::uint32_t q = gt.q();
  detail::require(coprime_to_gamma(t.gamma, q), "q = " + std::to_string(q) + " shares a factor with gamma");
  const auto D = scaled_delta(t, q);
  const long long n = gt.order();
  const Element gg = gamma_power(t.gamma, gt.field());
  const Complex norm = gt.product(D);
  const auto s0 = static_cast<int>(s_delta(t, q, 0));
  std::vector<Complex> c(static_cast<std::size_t>(n));
  std::vector<long long> arg(D.size());
  for (long long m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < D.size(); ++j) arg[j] = -t.gamma[j] * m + D[j];
    const int s = static_cast<int>(s_delta(t, q, -m));
    c[static_cast<std::size_t>(m)] =
        gt.product(arg) / norm * std::pow(static_cast<double>(q), s - s0) * gt.characters().chi(m, gg);
  }
  return c;
}

inline Complex f_triple(const GammaTriple& t, const GaussTable& gt, Element tval) {
  return detail::sum_series(triple_coefficients(t, gt), gt, tval);
}

// Candidate representing triples, in the order they are tried.
inline std::vector<GammaTriple> representing_triples(const HypergeometricParams& p) {
  std::vector<GammaTriple> out;
  if (auto t = rational_triple_from_params(p)) out.push_back(*t);
  if (!p.empty()) out.push_back(triple_from_params(p));
  try {
    out.push_back(balanced_triple_from_params(p));
  } catch (const DomainError&) {
  }
  return out;
}

inline HypergeometricValue f_extended(const HypergeometricParams& p, const GaussTable& gt, Element tval) {
  HypergeometricValue v{0.0, gt.q(), tval, Definition::Classical, p, std::nullopt};
  if (p.defined_at(gt.q())) {
    v.value = f_classical(p, gt, tval);
    return v;
  }
  for (auto& t : representing_triples(p)) {
    if (!triple_defined_at(t, gt.q())) continue;
    v.definition = Definition::Triple;
    v.value = f_triple(t, gt, tval);
    v.triple = t;
    return v;
  }
  detail::domain_fail("no implemented representing triple of " + to_string(p) + " is defined at q = " +
                      std::to_string(gt.q()));
}

}  // namespace hgm
