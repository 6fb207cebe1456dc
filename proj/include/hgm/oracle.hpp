#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/toric.hpp"

namespace hgm {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// HGM_BUDGET overrides the default enumeration budget.
inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("HGM_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

struct OracleOptions {
  std::uint64_t budget = default_budget();  // field multiplications
  unsigned jobs = 1;
};

struct StratifiedCount {
  std::vector<std::pair<std::string, long long>> per_stratum;
  long long total = 0;
};

namespace detail {

// Exponent/log tables by one multiplicative walk from the first generator.
struct LogTables {
  std::vector<Element> exp;
  std::vector<std::uint32_t> log;
  explicit LogTables(const FiniteField& f) : exp(f.q() - 1), log(f.q(), 0) {
    const Element g = CharacterTable::first_generators(f, 1).front();
    Element x = 1;
    for (std::uint32_t i = 0; i + 1 < f.q(); ++i, x = f.mul(x, g)) {
      exp[i] = x;
      log[x] = i;
    }
  }
};

inline void charge(std::uint64_t points, std::uint64_t per_point, std::uint64_t budget) {
  if (points > budget / std::max<std::uint64_t>(per_point, 1))
    throw BudgetError("enumeration of " + std::to_string(points) + " points exceeds the budget of " +
                      std::to_string(budget) + " field operations");
}

inline std::string label(const std::vector<std::size_t>& S) {
  std::string s = "S={";
  for (std::size_t i = 0; i < S.size(); ++i) s += (i ? "," : "") + std::to_string(S[i] + 1);
  return s + "}";
}

inline std::string label(const StairCone& c) {
  std::string s = "C=(";
  for (std::size_t k = 0; k < c.pairs.size(); ++k)
    s += (k ? "," : "") + std::string("(") + std::to_string(c.pairs[k].first + 1) + "," +
         std::to_string(c.pairs[k].second + 1) + ")";
  return s + ")";
}

inline long long exact_div(long long a, long long b, const std::string& what) {
  if (a % b != 0) throw InternalError("stratum " + what + " count " + std::to_string(a) + " is not divisible by " +
                                      std::to_string(b));
  return a / b;
}

}  // namespace detail

// Zeros in the torus of the polynomial with the monomials in `drop` (input
// column indices) removed.
inline long long bf_face(const LaurentHypersurface& h, const std::vector<std::size_t>& drop,
                         const OracleOptions& opts = {}) {
  validate(h);
  const FiniteField& f = h.field;
  const std::size_t d = h.dim(), nterms = h.terms();
  const long long n = f.q() - 1;
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < d; ++i) {
    detail::charge(points, static_cast<std::uint64_t>(n), opts.budget);
    points *= static_cast<std::uint64_t>(n);
  }
  detail::charge(points, nterms, opts.budget);

  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < nterms; ++j)
    if (std::find(drop.begin(), drop.end(), j) == drop.end()) keep.push_back(j);
  if (keep.empty()) return static_cast<long long>(points);

  const detail::LogTables tab(f);
  std::vector<long long> base(keep.size());
  std::vector<std::vector<long long>> step(d, std::vector<long long>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    base[k] = tab.log[h.coefficients[keep[k]]];
    for (std::size_t i = 0; i < d; ++i) step[i][k] = detail::pmod(h.exponents[i][keep[k]], n);
  }

  // Variable d-1 is split into contiguous chunks, one per worker.
  auto run = [&](long long lo, long long hi) {
    long long zeros = 0;
    std::vector<long long> idx(d, 0), logs(keep.size());
    for (long long top = lo; top < hi; ++top) {
      std::fill(idx.begin(), idx.end(), 0);
      for (std::size_t k = 0; k < keep.size(); ++k) logs[k] = (base[k] + top * step[d - 1][k]) % n;
      for (;;) {
        Element v = 0;
        for (std::size_t k = 0; k < keep.size(); ++k) v = f.add(v, tab.exp[static_cast<std::size_t>(logs[k])]);
        zeros += (v == 0);
        std::size_t i = 0;
        for (; i + 1 < d; ++i) {
          for (std::size_t k = 0; k < keep.size(); ++k) logs[k] = (logs[k] + step[i][k]) % n;
          if (++idx[i] < n) break;
          idx[i] = 0;  // logs wrapped around by exactly n steps
        }
        if (i + 1 >= d) break;
      }
    }
    return zeros;
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(n)));
  if (jobs == 1) return run(0, n);
  std::vector<long long> part(jobs, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] { part[w] = run(n * w / jobs, n * (w + 1) / jobs); });
  for (auto& th : pool) th.join();
  long long total = 0;
  for (auto x : part) total += x;
  return total;
}

inline long long bf_torus(const LaurentHypersurface& h, const OracleOptions& opts = {}) { return bf_face(h, {}, opts); }

namespace detail {

inline std::vector<std::size_t> to_input_columns(const GaleData& g, const std::vector<std::size_t>& S) {
  std::vector<std::size_t> out;
  for (auto j : S) out.push_back(g.perm[j]);
  return out;
}

}  // namespace detail

// Orbit decomposition for the normal fan of the Newton polytope.
inline StratifiedCount bf_compact_I(const LaurentHypersurface& h, const OracleOptions& opts = {}) {
  const GaleData g = analyze(h);
  const long long n = h.field.q() - 1;
  StratifiedCount out;
  out.per_stratum.emplace_back("interior", bf_torus(h, opts));
  for (auto& face : faces(g)) {
    long long pw = 1;
    for (std::size_t i = 0; i + 1 < face.S.size(); ++i) pw *= n;
    const auto lbl = detail::label(face.S);
    out.per_stratum.emplace_back(lbl, detail::exact_div(bf_face(h, detail::to_input_columns(g, face.S), opts), pw, lbl));
  }
  for (auto& [name, c] : out.per_stratum) out.total += c;
  return out;
}

// Orbit decomposition for the staircase refinement.
inline StratifiedCount bf_compact_II(const LaurentHypersurface& h, const OracleOptions& opts = {}) {
  const GaleData g = analyze(h);
  const long long n = h.field.q() - 1;
  std::map<std::vector<std::size_t>, long long> cache;
  StratifiedCount out;
  for (auto& cone : staircase_fan(g)) {
    auto it = cache.find(cone.S);
    if (it == cache.end()) it = cache.emplace(cone.S, bf_face(h, detail::to_input_columns(g, cone.S), opts)).first;
    long long pw = 1;
    for (std::size_t i = 0; i < cone.length(); ++i) pw *= n;
    const auto lbl = cone.length() ? detail::label(cone) : std::string("interior");
    out.per_stratum.emplace_back(lbl, detail::exact_div(it->second, pw, lbl));
  }
  for (auto& [name, c] : out.per_stratum) out.total += c;
  return out;
}

// Points of y_1^{d+1} + ... + y_{d+1}^{d+1} = (d+1) u^{-1} y_1 ... y_{d+1} in P^d.
inline long long bf_projective_dwork(std::size_t d, const FiniteField& f, Element u, const OracleOptions& opts = {}) {
  detail::require(d >= 1, "dimension must be positive");
  detail::require(u != 0, "u must be nonzero");
  const std::uint64_t q = f.q();
  std::uint64_t points = 0, block = 1;
  for (std::size_t i = 0; i <= d; ++i) {
    points += block;
    detail::charge(block, q, opts.budget);
    block *= q;
  }
  detail::charge(points, 2 * (d + 1), opts.budget);

  const long long e = static_cast<long long>(d) + 1;
  const Element c = f.mul(f.from_integer(e), f.inv(u));
  std::vector<Element> pw(q);
  for (Element x = 0; x < q; ++x) pw[x] = f.pow(x, e);

  long long count = 0;
  std::vector<Element> y(d + 1);
  for (std::size_t lead = 0; lead <= d; ++lead) {
    std::fill(y.begin(), y.end(), 0);
    y[lead] = 1;
    for (;;) {
      Element sum = 0, prod = 1;
      for (auto v : y) {
        sum = f.add(sum, pw[v]);
        prod = f.mul(prod, v);
      }
      count += (f.sub(sum, f.mul(c, prod)) == 0);
      std::size_t i = lead + 1;
      while (i <= d && ++y[i] == q) y[i++] = 0;
      if (i > d) break;
    }
  }
  return count;
}

}  // namespace hgm
