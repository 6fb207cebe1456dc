#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hgm/count.hpp"
#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/gammatriple.hpp"
#include "hgm/hypersum.hpp"
#include "hgm/oracle.hpp"
#include "hgm/toric.hpp"

namespace hgm::io {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "hgm.run-report/1";

// Rounds to 12 significant digits.
inline double sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::stod(buf);
}

inline json to_json(Complex z) { return {{"re", sig12(z.real())}, {"im", sig12(z.imag())}}; }

inline json element_to_json(const FiniteField& f, Element x) {
  if (f.is_prime_field()) return x;
  return f.digits(x);
}

inline Element element_from_json(const FiniteField& f, const json& j) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    detail::require(v >= 0 && static_cast<unsigned long long>(v) < f.q(),
                    "field element " + std::to_string(v) + " out of range");
    return static_cast<Element>(v);
  }
  detail::require(j.is_array(), "field element must be an integer or a digit list");
  return f.from_digits(j.get<std::vector<std::uint32_t>>());
}

inline json to_json(const std::vector<BigInt>& v) {
  json out = json::array();
  for (auto& x : v) out.push_back(detail::to_ll(x));
  return out;
}

inline json to_json(const IntMatrix& m) { return m.to_ll(); }

inline json to_json(const GammaTriple& t) { return {{"gamma", t.gamma}, {"delta", t.delta}, {"N", t.N}}; }

inline GammaTriple triple_from_json(const json& j) {
  return {j.at("gamma").get<std::vector<long long>>(), j.at("delta").get<std::vector<long long>>(),
          j.at("N").get<long long>()};
}

inline json to_json(const HypergeometricParams& p) {
  json a = json::array(), b = json::array();
  for (auto& x : p.alpha) a.push_back(to_string(x));
  for (auto& x : p.beta) b.push_back(to_string(x));
  return {{"alpha", a}, {"beta", b}};
}

inline HypergeometricParams params_from_json(const json& j) {
  return HypergeometricParams::parse(j.at("alpha").get<std::vector<std::string>>(),
                                     j.at("beta").get<std::vector<std::string>>());
}

inline json to_json(const LaurentHypersurface& h) {
  json coeffs = json::array();
  for (auto u : h.coefficients) coeffs.push_back(element_to_json(h.field, u));
  return {{"p", h.field.p()}, {"k", h.field.k()}, {"exponents", h.exponents}, {"coefficients", coeffs}};
}

inline LaurentHypersurface hypersurface_from_json(const json& j) {
  const FiniteField f = FiniteField::make(j.at("p").get<std::uint32_t>(), j.value("k", 1u));
  LaurentHypersurface h{f, j.at("exponents").get<std::vector<std::vector<long long>>>(), {}};
  for (auto& c : j.at("coefficients")) h.coefficients.push_back(element_from_json(f, c));
  validate(h);
  return h;
}

inline json to_json(const HypergeometricValue& v, const FiniteField& f) {
  json out = to_json(v.value);
  out["q"] = v.q;
  out["t"] = element_to_json(f, v.t);
  out["definition"] = to_string(v.definition);
  out["parameters"] = to_json(v.params);
  if (v.triple) out["triple"] = to_json(*v.triple);
  return out;
}

inline json to_json(const CountResult& c) {
  json out{{"count", c.rounded}, {"raw", to_json(c.raw)}, {"residual", c.residual}};
  if (c.corollary) out["corollary"] = to_json(*c.corollary);
  json terms = json::array();
  for (auto& t : c.decomposition)
    terms.push_back({{"lambda", t.lambda},
                     {"triple", to_json(t.triple)},
                     {"prefactor", to_json(t.prefactor)},
                     {"value", to_json(t.value)},
                     {"parameters", to_json(t.params)}});
  out["decomposition"] = terms;
  return out;
}

inline json to_json(const StratifiedCount& s) {
  json parts = json::array();
  for (auto& [name, c] : s.per_stratum) parts.push_back({{"stratum", name}, {"count", c}});
  return {{"total", s.total}, {"strata", parts}};
}

inline json to_json(const GaleData& g) {
  json sigma = json::array();
  for (auto x : g.sigma) sigma.push_back(element_to_json(g.field, x));
  return {{"gamma", g.gamma},
          {"permutation", g.perm},
          {"r", g.r},
          {"s", g.s},
          {"d", g.d},
          {"fbasis", to_json(g.fbasis)},
          {"coeffC", to_json(g.coeffC)},
          {"Nmat", to_json(g.Nmat)},
          {"rho", to_json(g.rho)},
          {"degree", detail::to_ll(g.degree)},
          {"t", element_to_json(g.field, g.t)},
          {"sigma", sigma}};
}

inline json to_json(const FanCheck& f) {
  return {{"rays", f.rays},
          {"cones", f.cones},
          {"cones_by_dim", f.cones_by_dim},
          {"simplicial", f.simplicial},
          {"refines_normal_fan", f.refines}};
}

}  // namespace hgm::io
