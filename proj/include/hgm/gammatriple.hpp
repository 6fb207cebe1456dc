#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hgm/error.hpp"
#include "hgm/ffield.hpp"

namespace hgm {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& x) {
  const auto num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  detail::require(slash != 0 && !text.empty() && (slash == std::string::npos || slash + 1 < text.size()),
                  "cannot parse rational '" + text + "'");
  try {
    const boost::multiprecision::cpp_int num(text.substr(0, slash));
    if (slash == std::string::npos) return Rational(num);
    const boost::multiprecision::cpp_int den(text.substr(slash + 1));
    detail::require(den != 0, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational '" + text + "'");
  }
}

namespace detail {

inline long long as_integer(const Rational& x) {
  ensure(boost::multiprecision::denominator(x) == 1, "expected an integral rational");
  return static_cast<long long>(boost::multiprecision::numerator(x));
}

}  // namespace detail

struct GammaTriple {
  std::vector<long long> gamma;
  std::vector<long long> delta;
  long long N = 1;
  bool operator==(const GammaTriple&) const = default;
};

struct TripleShape {
  std::size_t r = 0, s = 0;
};

inline TripleShape validate(const GammaTriple& t) {
  detail::require(t.gamma.size() >= 2, "gamma needs at least two entries");
  detail::require(t.delta.size() == t.gamma.size(), "gamma and delta have different lengths");
  detail::require(t.N > 0, "N must be positive");
  long long sum = 0, g = 0;
  TripleShape shape;
  for (auto x : t.gamma) {
    detail::require(x != 0, "gamma has a zero component");
    sum += x;
    g = std::gcd(g, x);
    (x < 0 ? shape.r : shape.s)++;
  }
  detail::require(sum == 0, "gamma entries must sum to zero");
  detail::require(g == 1, "gamma entries must have gcd 1");
  return shape;
}

struct HypergeometricParams {
  std::vector<Rational> alpha, beta;

  // Sorts, checks the range (0,1] and that no alpha equals a beta.
  static HypergeometricParams make(std::vector<Rational> alpha, std::vector<Rational> beta) {
    detail::require(alpha.size() == beta.size(), "alpha and beta have different lengths");
    for (const auto* v : {&alpha, &beta})
      for (const auto& x : *v) detail::require(x > 0 && x <= 1, "parameter " + to_string(x) + " is not in (0,1]");
    for (const auto& a : alpha)
      for (const auto& b : beta) detail::require(a != b, "alpha and beta share the value " + to_string(a));
    std::sort(alpha.begin(), alpha.end());
    std::sort(beta.begin(), beta.end());
    return {std::move(alpha), std::move(beta)};
  }

  static HypergeometricParams parse(const std::vector<std::string>& alpha, const std::vector<std::string>& beta) {
    std::vector<Rational> a, b;
    for (auto& s : alpha) a.push_back(parse_rational(s));
    for (auto& s : beta) b.push_back(parse_rational(s));
    return make(std::move(a), std::move(b));
  }

  std::size_t size() const { return alpha.size(); }
  bool empty() const { return alpha.empty(); }
  bool operator==(const HypergeometricParams&) const = default;

  long long common_denominator() const {
    long long l = 1;
    for (const auto* v : {&alpha, &beta})
      for (const auto& x : *v) l = std::lcm(l, static_cast<long long>(boost::multiprecision::denominator(x)));
    return l;
  }

  // True when (q-1) times every parameter is an integer.
  bool defined_at(std::uint64_t q) const { return (q - 1) % common_denominator() == 0; }
};

inline std::string to_string(const HypergeometricParams& p) {
  auto list = [](const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
  };
  return "(" + list(p.alpha) + ";" + list(p.beta) + ")";
}

// Roots e^{2 pi i a/level} with multiplicities, keyed by a mod level.
struct RootMultiset {
  long long level = 1;
  std::map<long long, long long> counts;
  std::size_t size() const {
    std::size_t n = 0;
    for (auto& [a, c] : counts) n += static_cast<std::size_t>(c);
    return n;
  }
};

namespace detail {

inline long long root_level(const GammaTriple& t) {
  long long l = 1;
  for (auto g : t.gamma) l = std::lcm(l, g < 0 ? -g : g);
  return t.N * l;
}

// Roots of T^k = zeta_N^c at level L.
inline void add_roots(RootMultiset& m, long long k, long long c, long long N) {
  const long long L = m.level;
  for (long long i = 0; i < k; ++i) m.counts[pmod(c * (L / (N * k)) + i * (L / k), L)]++;
}

}  // namespace detail

inline RootMultiset numerator_roots(const GammaTriple& t) {
  RootMultiset m{detail::root_level(t), {}};
  for (std::size_t j = 0; j < t.gamma.size(); ++j)
    if (t.gamma[j] < 0) detail::add_roots(m, -t.gamma[j], t.delta[j], t.N);
  return m;
}

inline RootMultiset denominator_roots(const GammaTriple& t) {
  RootMultiset m{detail::root_level(t), {}};
  for (std::size_t j = 0; j < t.gamma.size(); ++j)
    if (t.gamma[j] > 0) detail::add_roots(m, t.gamma[j], -t.delta[j], t.N);
  return m;
}

inline HypergeometricParams params_from_triple(const GammaTriple& t) {
  validate(t);
  auto num = numerator_roots(t), den = denominator_roots(t);
  for (auto& [a, c] : num.counts) {
    auto it = den.counts.find(a);
    if (it == den.counts.end()) continue;
    const long long common = std::min(c, it->second);
    c -= common;
    it->second -= common;
  }
  auto to_params = [](const RootMultiset& m) {
    std::vector<Rational> out;
    for (auto& [a, c] : m.counts)
      for (long long i = 0; i < c; ++i) out.emplace_back(a == 0 ? m.level : a, m.level);
    return out;
  };
  return HypergeometricParams::make(to_params(num), to_params(den));
}

inline GammaTriple triple_from_params(const HypergeometricParams& p) {
  detail::require(!p.empty(), "empty parameters have no triple of this shape; use ((-2,1,1),(0,0,N),2N)");
  const long long N = p.common_denominator();
  GammaTriple t{{}, {}, N};
  for (auto& a : p.alpha) {
    t.gamma.push_back(-1);
    t.delta.push_back(detail::as_integer(a * N));
  }
  for (auto& b : p.beta) {
    t.gamma.push_back(1);
    t.delta.push_back(-detail::as_integer(b * N));
  }
  return t;
}

inline GammaTriple empty_params_triple(long long N = 1) { return {{-2, 1, 1}, {0, 0, N}, 2 * N}; }

// A representing triple whose delta entries sum to 0 mod N.
inline GammaTriple balanced_triple_from_params(const HypergeometricParams& p) {
  Rational excess = 0;
  for (std::size_t i = 0; i < p.size(); ++i) excess += p.alpha[i] - p.beta[i];
  detail::require(boost::multiprecision::denominator(Rational(2 * excess)) == 1,
                  "sum of alpha - beta is not a half-integer");
  if (p.empty()) return empty_params_triple();
  const long long N = p.common_denominator(), level = 2 * N;
  GammaTriple t{{}, {}, level};
  long long sum = 0;
  for (auto& a : p.alpha) {
    t.gamma.push_back(-1);
    t.delta.push_back(detail::as_integer(a * level));
  }
  for (auto& b : p.beta) {
    t.gamma.push_back(1);
    t.delta.push_back(-detail::as_integer(b * level));
  }
  for (auto x : t.delta) sum += x;
  if (detail::pmod(sum, level) != 0) {
    t.gamma.insert(t.gamma.end(), {-2, 1, 1});
    t.delta.insert(t.delta.end(), {0, 0, N});
  }
  return t;
}

inline long long minor_gcd(const GammaTriple& t) {
  long long g = 0;
  for (std::size_t i = 0; i < t.gamma.size(); ++i)
    for (std::size_t j = i + 1; j < t.gamma.size(); ++j)
      g = std::gcd(g, t.gamma[i] * t.delta[j] - t.gamma[j] * t.delta[i]);
  return g;
}

struct MinorNormalization {
  GammaTriple triple;
  long long multiplier = 1;  // (gamma, multiplier * delta, N) represents the input parameters
};

inline MinorNormalization normalize_minors(const GammaTriple& t) {
  validate(t);
  long long g = 0;
  for (auto x : t.delta) g = std::gcd(g, x);
  detail::require(g != 0, "delta is zero; nothing to normalize");
  MinorNormalization out{t, g};
  for (auto& x : out.triple.delta) x /= g;
  if (minor_gcd(out.triple) != 1) {
    out.triple.gamma.insert(out.triple.gamma.end(), {1, -1});
    out.triple.delta.insert(out.triple.delta.end(), {0, 0});
  }
  return out;
}

// delta_j (q-1)/N for every j; throws unless all are integers.
inline std::vector<long long> scaled_delta(const GammaTriple& t, std::uint64_t q) {
  const long long n = static_cast<long long>(q) - 1;
  std::vector<long long> out;
  for (auto d : t.delta) {
    detail::require((d * n) % t.N == 0,
                    "delta_j (q-1)/N is not an integer for q = " + std::to_string(q) + " (N does not divide q-1)");
    out.push_back(d * n / t.N);
  }
  return out;
}

inline std::size_t s_delta(const GammaTriple& t, std::uint64_t q, long long m) {
  const auto D = scaled_delta(t, q);
  const long long n = static_cast<long long>(q) - 1;
  std::size_t neg = 0, pos = 0;
  for (std::size_t j = 0; j < t.gamma.size(); ++j)
    if (detail::pmod(t.gamma[j] * m + D[j], n) == 0) (t.gamma[j] < 0 ? neg : pos)++;
  return std::min(neg, pos);
}

inline int eta_delta(const GammaTriple& t, std::uint64_t q, long long m) { return s_delta(t, q, m) >= 1 ? 1 : 0; }

namespace detail {

inline int moebius(long long n) {
  int mu = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

// Exponents e_d with prod over a of (T - e^{2 pi i a}) = prod_d (T^d - 1)^{e_d},
// or nullopt when the multiset is not stable under Galois conjugation.
inline std::optional<std::map<long long, long long>> cyclotomic_exponents(const std::vector<Rational>& v) {
  std::map<long long, std::map<long long, long long>> by_den;
  for (auto& x : v) {
    const long long den = static_cast<long long>(boost::multiprecision::denominator(x));
    const long long num = static_cast<long long>(boost::multiprecision::numerator(x)) % den;
    by_den[den][num]++;
  }
  std::map<long long, long long> e;
  for (auto& [n, residues] : by_den) {
    long long phi = 0, mult = -1;
    for (long long a = 0; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      ++phi;
      auto it = residues.find(a);
      const long long c = it == residues.end() ? 0 : it->second;
      if (mult < 0) mult = c;
      if (c != mult) return std::nullopt;
    }
    // Phi_n = prod_{d | n} (T^d - 1)^{mu(n/d)}
    for (long long d = 1; d <= n; ++d)
      if (n % d == 0) e[d] += mult * moebius(n / d);
  }
  return e;
}

}  // namespace detail

// A delta = 0 triple for parameters defined over Q, built from the cyclotomic
// factorization of the numerator and denominator polynomials.
inline std::optional<GammaTriple> rational_triple_from_params(const HypergeometricParams& p) {
  auto ea = detail::cyclotomic_exponents(p.alpha), eb = detail::cyclotomic_exponents(p.beta);
  if (!ea || !eb) return std::nullopt;
  std::map<long long, long long> net = *ea;
  for (auto& [d, c] : *eb) net[d] -= c;
  GammaTriple t{{}, {}, 1};
  for (auto& [d, c] : net) {
    for (long long i = 0; i < c; ++i) t.gamma.push_back(-d);
    for (long long i = 0; i < -c; ++i) t.gamma.push_back(d);
  }
  long long g = 0;
  for (auto x : t.gamma) g = std::gcd(g, x);
  if (g != 1) t.gamma.insert(t.gamma.end(), {-1, 1});
  std::sort(t.gamma.begin(), t.gamma.end());
  t.delta.assign(t.gamma.size(), 0);
  return t;
}

}  // namespace hgm
