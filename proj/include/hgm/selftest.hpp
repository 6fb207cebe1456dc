#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hgm/corpus.hpp"
#include "hgm/count.hpp"
#include "hgm/ffield.hpp"
#include "hgm/gammatriple.hpp"
#include "hgm/hypersum.hpp"
#include "hgm/oracle.hpp"
#include "hgm/toric.hpp"

namespace hgm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  unsigned jobs = 1;
};

namespace detail {

inline std::vector<std::uint64_t> prime_powers_upto(std::uint64_t bound, std::uint64_t lo = 2) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = lo; q <= bound; ++q)
    if (as_prime_power(q)) out.push_back(q);
  return out;
}

// Gauss tables shared between criteria.
inline const GaussTable& cached_gauss(std::uint64_t q) {
  static std::map<std::uint64_t, GaussTable> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, GaussTable::of_order(q)).first;
  return it->second;
}

// Collects the first few failure messages and counts the rest.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (++failures_ <= 5) first_ += (first_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& extra = "") const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!extra.empty()) os << ", " << extra;
    if (failures_) os << ", " << failures_ << " failed: " << first_;
    return os.str();
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

inline std::string str(long long a, long long b) { return std::to_string(a) + " vs " + std::to_string(b); }

inline std::vector<GammaTriple> equivalence_triples() {
  return {
      {{-3, 1, 1, 1}, {0, 0, 0, 0}, 1},
      {{-1, -1, 1, 1}, {1, -1, 0, 0}, 3},
      {{-2, 1, 1}, {0, 0, 0}, 1},
      {{-2, 1, 1}, {1, 0, 0}, 2},
      {{-4, 1, 1, 1, 1}, {0, 0, 0, 0, 0}, 1},
      {{-4, 2, 1, 1}, {0, 0, 0, 0}, 1},
      {{-6, 1, 2, 3}, {0, 0, 0, 0}, 1},
      {{-6, -1, 3, 4}, {0, 0, 0, 0}, 1},
      {{-5, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 0}, 1},
      {{-3, -3, 2, 2, 1, 1}, {0, 0, 0, 0, 0, 0}, 1},
      {{-1, -1, 1, 1}, {1, 1, 0, 0}, 3},
      {{-1, -1, 1, 1}, {1, 3, -2, 0}, 4},
      {{-2, -1, 1, 1, 1}, {1, 0, 0, 0, 0}, 2},
      {{-2, 1, 1}, {1, 1, 0}, 4},
      {{-1, 1}, {1, 0}, 5},
      {{-1, 1}, {1, -2}, 5},
      {{-1, -1, 1, 1}, {1, 2, 3, 4}, 5},
      {{-2, -1, 3}, {1, 0, 0}, 6},
      {{-3, 1, 2}, {1, 0, 0}, 3},
      {{-2, -2, 1, 3}, {1, 1, 0, 0}, 2},
      {{-1, -1, -1, 3}, {1, 1, 1, 0}, 3},
      {{-6, 1, 1, 1, 3}, {0, 0, 0, 0, 0}, 1},
      {{-4, -1, 2, 3}, {1, 0, 0, 0}, 2},
  };
}

inline const GammaTriple& cover_triple() {
  static const GammaTriple t{{-1, -1, 1, 1}, {1, -1, 0, 0}, 3};
  return t;
}

inline const std::vector<CorpusEntry>& cached_corpus() {
  static const std::vector<CorpusEntry> c = desk_corpus();
  return c;
}

inline std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> dwork_cases() {
  return {{2, {2, 4, 5, 7, 8, 11, 13, 16, 25}}, {3, {7, 11, 13}}, {4, {11}}};
}

inline std::string timing(double seconds, double limit) {
  std::ostringstream os;
  os.precision(3);
  os << seconds << " s (limit " << limit << " s)";
  return os.str();
}

}  // namespace detail

inline CriterionResult criterion_gauss_laws(const AcceptanceOptions&) {
  detail::Tally tally;
  for (auto q : detail::prime_powers_upto(64)) {
    const auto& gt = detail::cached_gauss(q);
    const Element minus_one = gt.field().neg(1);
    tally.check(std::abs(gt(0) + 1.0) < 1e-9, "g(0) != -1 at q=" + std::to_string(q));
    for (long long m = 0; m < gt.order(); ++m) {
      const Complex want = gt.characters().chi(m, minus_one) * static_cast<double>(q);
      tally.check(std::abs(gt(m) * gt(-m) - want) < 1e-9 || m == 0,
                  "g(m)g(-m) at q=" + std::to_string(q) + " m=" + std::to_string(m));
    }
  }
  return {1, "Gauss sum laws", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_hasse_davenport(const AcceptanceOptions&) {
  detail::Tally tally;
  for (auto q : detail::prime_powers_upto(64)) {
    const auto& gt = detail::cached_gauss(q);
    const long long n = gt.order();
    for (long long N = 1; N <= n; ++N) {
      if (n % N) continue;
      const Element Nf = gt.field().from_integer(N);
      for (long long m = 0; m < n; ++m) {
        Complex rhs = -gt.characters().chi(N * m, Nf);
        for (long long j = 0; j < N; ++j) rhs *= gt(m + j * n / N) / gt(j * n / N);
        tally.check(std::abs(gt(N * m) - rhs) < 1e-8,
                    "q=" + std::to_string(q) + " N=" + std::to_string(N) + " m=" + std::to_string(m));
      }
    }
  }
  return {2, "Hasse-Davenport product formula", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_triple_equivalence(const AcceptanceOptions&) {
  detail::Tally tally;
  const auto triples = detail::equivalence_triples();
  for (auto& t : triples) {
    const auto params = params_from_triple(t);
    std::size_t fields = 0;
    for (auto q : detail::prime_powers_upto(100)) {
      if (!triple_defined_at(t, q) || !params.defined_at(q)) continue;
      ++fields;
      const auto& gt = detail::cached_gauss(q);
      const auto tc = triple_coefficients(t, gt);
      const auto cc = classical_coefficients(params, gt);
      for (Element x = 1; x < q; ++x) {
        const Complex a = detail::sum_series(tc, gt, x), b = detail::sum_series(cc, gt, x);
        tally.check(std::abs(a - b) < 1e-6, to_string(params) + " at q=" + std::to_string(q));
      }
    }
    tally.check(fields > 0, to_string(params) + " has no admissible q");
  }
  return {3, "triple and classical sums agree", tally.ok() && triples.size() >= 20,
          tally.summary(std::to_string(triples.size()) + " triples")};
}

inline CriterionResult criterion_two_representations(const AcceptanceOptions&) {
  detail::Tally tally;
  const GammaTriple a{{-3, 1, 1, 1}, {0, 0, 0, 0}, 1};
  const GammaTriple& b = detail::cover_triple();
  tally.check(params_from_triple(a) == params_from_triple(b), "triples represent different parameters");
  for (auto q : detail::prime_powers_upto(200)) {
    if (q % 3 != 1) continue;
    const auto& gt = detail::cached_gauss(q);
    const auto ca = triple_coefficients(a, gt), cb = triple_coefficients(b, gt);
    for (Element x = 1; x < q; ++x)
      tally.check(std::abs(detail::sum_series(ca, gt, x) - detail::sum_series(cb, gt, x)) < 1e-6,
                  "q=" + std::to_string(q) + " t=" + std::to_string(x));
  }
  return {4, "two representations of ((1/3,2/3);(1,1))", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_special_value(const AcceptanceOptions&) {
  detail::Tally tally;
  const auto params = HypergeometricParams::parse({"1/3", "2/3"}, {"1", "1"});
  for (std::uint64_t q : {7, 13, 19, 25, 31}) {
    const auto v = f_extended(params, detail::cached_gauss(q), 1).value;
    tally.check(std::abs(v - Complex(1.0, 0.0)) < 1e-6 && std::llround(v.real()) == 1, "q=" + std::to_string(q));
  }
  return {5, "F((1/3,2/3);(1,1)|1) = 1", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_binomial_identities(const AcceptanceOptions&) {
  detail::Tally tally;
  for (std::size_t r = 1; r <= 8; ++r)
    for (std::size_t s = 1; s <= 8; ++s)
      for (std::uint64_t q : {2, 3, 5, 7, 11})
        tally.check(binomial_identity_check(r, s, q).ok(),
                    "r=" + std::to_string(r) + " s=" + std::to_string(s) + " q=" + std::to_string(q));
  return {6, "binomial identities", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_compact_I(const AcceptanceOptions& opts) {
  detail::Tally tally;
  const auto& corpus = detail::cached_corpus();
  std::map<long long, std::size_t> degrees;
  std::size_t corollaries = 0;
  for (auto& e : corpus) {
    const auto& gt = detail::cached_gauss(e.h.field.q());
    const GaleData g = analyze(e.h);
    degrees[detail::to_ll(g.degree)]++;
    const auto c = count_compact_I(g, gt);
    const auto b = bf_compact_I(e.h, {default_budget(), opts.jobs}).total;
    tally.check(c.rounded == b && c.residual < 1e-6, e.name + " " + detail::str(c.rounded, b));
    if (c.corollary) {
      ++corollaries;
      tally.check(std::abs(*c.corollary - c.raw) < 1e-6, e.name + " corollary form");
    }
  }
  std::string degs = "degrees";
  for (auto& [d, n] : degrees) degs += " " + std::to_string(d) + "x" + std::to_string(n);
  bool covered = corpus.size() >= 30;
  for (long long d : {2, 3, 4, 9, 16}) covered = covered && degrees.count(d);
  return {7, "compactification I vs brute force", tally.ok() && covered,
          tally.summary(std::to_string(corpus.size()) + " hypersurfaces, " + std::to_string(corollaries) +
                        " corollary forms, " + degs)};
}

inline CriterionResult criterion_compact_II(const AcceptanceOptions& opts) {
  detail::Tally tally;
  std::size_t primitive = 0;
  for (auto& e : detail::cached_corpus()) {
    const auto& gt = detail::cached_gauss(e.h.field.q());
    const GaleData g = analyze(e.h);
    const auto c = count_compact_II(g, gt);
    const auto b = bf_compact_II(e.h, {default_budget(), opts.jobs}).total;
    tally.check(c.rounded == b && c.residual < 1e-6, e.name + " " + detail::str(c.rounded, b));
    if (g.primitive()) {
      ++primitive;
      const auto reduced = count_primitive_reduced(g, gt).rounded;
      tally.check(reduced == b, e.name + " reduced form " + detail::str(reduced, b));
    }
  }
  return {8, "compactification II vs brute force", tally.ok(),
          tally.summary(std::to_string(primitive) + " primitive")};
}

inline CriterionResult criterion_cyclic_cover(const AcceptanceOptions& opts) {
  detail::Tally tally;
  const auto& t = detail::cover_triple();
  for (std::uint64_t q : {7, 13, 19}) {
    const auto& gt = detail::cached_gauss(q);
    for (Element x = 1; x < q; ++x) {
      const auto c = count_cyclic_cover(t, gt, x).rounded;
      const auto b = bf_compact_II(cyclic_cover_hypersurface(t, gt.field(), x), {default_budget(), opts.jobs}).total;
      const double shown = static_cast<double>(q) + 1 - 2 * f_triple(t, gt, x).real() + (x == 1 ? double(q) : 0.0);
      const std::string at = "q=" + std::to_string(q) + " t=" + std::to_string(x);
      tally.check(c == b, at + " " + detail::str(c, b));
      tally.check(std::abs(shown - static_cast<double>(c)) < 1e-6, at + " closed form");
      if (x == 1) tally.check(c == 2 * static_cast<long long>(q) - 1, at + " expected 2q-1, got " + std::to_string(c));
    }
  }
  return {9, "cyclic cover family", tally.ok(), tally.summary()};
}

namespace detail {

inline void dwork_against_oracle(Tally& tally, std::size_t d, const std::vector<std::uint64_t>& qs,
                                 const AcceptanceOptions& opts) {
  for (auto q : qs) {
    const auto& gt = cached_gauss(q);
    for (Element u = 1; u < q; ++u) {
      const auto c = dwork_count({d, u}, gt).rounded;
      const auto b = bf_projective_dwork(d, gt.field(), u, {default_budget(), opts.jobs});
      tally.check(c == b, "d=" + std::to_string(d) + " q=" + std::to_string(q) + " u=" + std::to_string(u) + " " +
                              str(c, b));
      if (d == 2 && u == 1 && q % 3 == 1)
        tally.check(c == 3 * static_cast<long long>(q), "u=1 q=" + std::to_string(q) + " expected 3q");
    }
  }
}

}  // namespace detail

inline CriterionResult criterion_dwork2(const AcceptanceOptions& opts) {
  detail::Tally tally;
  detail::dwork_against_oracle(tally, 2, {2, 4, 5, 7, 8, 11, 13, 16, 25}, opts);
  return {10, "Dwork pencil d=2", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_dwork3(const AcceptanceOptions& opts) {
  detail::Tally tally;
  detail::dwork_against_oracle(tally, 3, {7, 11, 13}, opts);

  const std::uint64_t q = 13;
  const auto& gt = detail::cached_gauss(q);
  std::map<std::string, std::size_t> classes;
  for (auto& term : dwork_count({3, 1}, gt).decomposition) classes[to_string(term.params)]++;
  const std::map<std::string, std::size_t> table = {
      {to_string(HypergeometricParams::parse({"1/4", "1/2", "3/4"}, {"1", "1", "1"})), 1},
      {to_string(HypergeometricParams::parse({"1/4", "3/4"}, {"1/2", "1"})), 3},
      {to_string(HypergeometricParams::parse({"1/2"}, {"1"})), 6},
      {to_string(HypergeometricParams::parse({"1/4"}, {"3/4"})), 3},
      {to_string(HypergeometricParams::parse({"3/4"}, {"1/4"})), 3},
  };
  tally.check(classes == table, "parameter classes at q=13 differ from the expected multiplicities");

  const long long n = gt.order();
  const auto quarter = HypergeometricParams::parse({"1/4"}, {"3/4"});
  const auto three_quarters = HypergeometricParams::parse({"3/4"}, {"1/4"});
  const auto half = HypergeometricParams::parse({"1/2"}, {"1"});
  const Complex sign = -gt.characters().chi(n / 4, gt.field().neg(1));
  for (Element u = 1; u < q; ++u) {
    const Element x = gt.field().pow(u, 4);
    const Complex fh = f_classical(half, gt, x);
    const Complex l48 = sign * gt(n / 2) / (gt(n / 4) * gt(n / 4)) * fh;
    const Complex l49 = sign * gt(n / 2) / (gt(-n / 4) * gt(-n / 4)) * fh;
    tally.check(std::abs(f_classical(quarter, gt, x) - l48) < 1e-6, "first quartic identity at u=" + std::to_string(u));
    tally.check(std::abs(f_classical(three_quarters, gt, x) - l49) < 1e-6,
                "second quartic identity at u=" + std::to_string(u));
  }
  return {11, "Dwork pencil d=3", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_dwork4(const AcceptanceOptions& opts) {
  detail::Tally tally;
  const auto& gt = detail::cached_gauss(11);
  tally.check(dwork_count({4, 1}, gt).decomposition.size() == 125, "decomposition does not have 125 terms");
  detail::dwork_against_oracle(tally, 4, {11}, opts);
  return {12, "Dwork pencil d=4 at q=11", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_invariance(const AcceptanceOptions&) {
  detail::Tally tally;
  // Alternative character choices over one field: other generators and psi(x) -> psi(-x).
  auto variants = [](const FiniteField& f) {
    std::vector<GaussTable> out;
    for (auto gen : CharacterTable::first_generators(f, 3)) out.emplace_back(CharacterTable(f, {gen, 1}));
    out.emplace_back(CharacterTable(f, {std::nullopt, f.neg(1)}));
    return out;
  };
  auto both = [](const GaleData& g, const GaussTable& gt) {
    return std::make_pair(count_compact_I(g, gt).rounded, count_compact_II(g, gt).rounded);
  };
  auto shifts = [](std::size_t d) {
    std::vector<long long> c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = static_cast<long long>(k) - 1;
    return c;
  };

  for (auto& e : detail::cached_corpus()) {
    const auto& gt = detail::cached_gauss(e.h.field.q());
    const GaleData g = analyze(e.h);
    const auto ref = both(g, gt);
    for (auto& alt : variants(e.h.field)) tally.check(both(g, alt) == ref, e.name + " characters");
    tally.check(both(analyze(e.h, {true}), gt) == ref, e.name + " gamma sign");
    tally.check(both(with_rho_shift(g, shifts(g.d)), gt) == ref, e.name + " rho shift");
  }

  const auto& t = detail::cover_triple();
  for (std::uint64_t q : {7, 13, 19}) {
    const auto& gt = detail::cached_gauss(q);
    const auto alts = variants(gt.field());
    for (Element x = 1; x < q; ++x) {
      const auto ref = count_cyclic_cover(t, gt, x).rounded;
      const std::string at = "cover q=" + std::to_string(q) + " t=" + std::to_string(x);
      for (auto& alt : alts) tally.check(count_cyclic_cover(t, alt, x).rounded == ref, at + " characters");
      const GaleData g = analyze(cyclic_cover_hypersurface(t, gt.field(), x));
      tally.check(count_compact_II(analyze(cyclic_cover_hypersurface(t, gt.field(), x), {true}), gt).rounded == ref,
                  at + " gamma sign");
      tally.check(count_compact_II(with_rho_shift(g, shifts(g.d)), gt).rounded == ref, at + " rho shift");
    }
  }

  for (auto& [d, qs] : detail::dwork_cases())
    for (auto q : qs) {
      const auto& gt = detail::cached_gauss(q);
      const auto alts = variants(gt.field());
      for (Element u = 1; u < q; ++u) {
        const auto ref = dwork_count({d, u}, gt).rounded;
        const std::string at = "dwork d=" + std::to_string(d) + " q=" + std::to_string(q) + " u=" + std::to_string(u);
        for (auto& alt : alts) tally.check(dwork_count({d, u}, alt).rounded == ref, at + " characters");
        const auto h = dwork_hypersurface(d, gt.field(), u);
        const GaleData g = analyze(h);
        tally.check(count_compact_I(g, gt).rounded == ref, at + " toric model");
        tally.check(count_compact_I(analyze(h, {true}), gt).rounded == ref, at + " gamma sign");
        tally.check(count_compact_I(with_rho_shift(g, shifts(g.d)), gt).rounded == ref, at + " rho shift");
      }
    }
  return {13, "invariance under choices", tally.ok(), tally.summary()};
}

inline CriterionResult criterion_fans(const AcceptanceOptions&) {
  detail::Tally tally;
  for (auto& e : detail::cached_corpus()) {
    const auto fc = check_staircase_fan(analyze(e.h));
    tally.check(fc.simplicial, e.name + " not simplicial");
    tally.check(fc.refines, e.name + " does not refine");
  }
  const auto w = primitive_hypersurface({-30, -1, 6, 10, 15}, FiniteField::make(7, 1), {1, 1, 1, 1, 1});
  const GaleData gw = analyze(w);
  const auto fc = check_staircase_fan(gw);
  tally.check(fc.simplicial && fc.refines, "witness staircase fan");
  const auto cone = normal_cone(gw, {0, 1, 2, 3});
  tally.check(!cone.simplicial(), "witness cone is simplicial");
  return {14, "fan properties", tally.ok(),
          tally.summary("witness cone " + std::to_string(cone.rays.size()) + " rays in dimension " +
                        std::to_string(cone.dim))};
}

struct Criterion {
  int id;
  double time_limit;  // seconds; 0 means none
  std::function<CriterionResult(const AcceptanceOptions&)> run;
};

inline const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all = {
      {1, 5, criterion_gauss_laws},
      {2, 30, criterion_hasse_davenport},
      {3, 120, criterion_triple_equivalence},
      {4, 0, criterion_two_representations},
      {5, 0, criterion_special_value},
      {6, 0, criterion_binomial_identities},
      {7, 300, criterion_compact_I},
      {8, 0, criterion_compact_II},
      {9, 0, criterion_cyclic_cover},
      {10, 0, criterion_dwork2},
      {11, 0, criterion_dwork3},
      {12, 30, criterion_dwork4},
      {13, 0, criterion_invariance},
      {14, 0, criterion_fans},
  };
  return all;
}

inline CriterionResult run_criterion(const Criterion& c, const AcceptanceOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run(opts);
  } catch (const std::exception& e) {
    r = {c.id, "criterion " + std::to_string(c.id), false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.time_limit > 0) {
    r.detail += ", " + detail::timing(r.seconds, c.time_limit);
    if (r.seconds >= c.time_limit) r.pass = false;
  }
  return r;
}

// One PASS/FAIL line per criterion; returns the results in order.
inline std::vector<CriterionResult> run_acceptance(std::ostream& os, const AcceptanceOptions& opts = {}) {
  std::vector<CriterionResult> out;
  for (auto& c : acceptance_criteria()) {
    out.push_back(run_criterion(c, opts));
    const auto& r = out.back();
    os << (r.pass ? "PASS" : "FAIL") << "  [" << (r.id < 10 ? " " : "") << r.id << "] " << r.name << ": " << r.detail
       << '\n'
       << std::flush;
  }
  return out;
}

}  // namespace hgm
