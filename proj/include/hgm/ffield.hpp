#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgm/error.hpp"

namespace hgm {

// Field elements are encoded as integers 0..q-1 whose base-p digits are the
// coefficients (lowest first) of the polynomial representative.
using Element = std::uint32_t;
using Complex = std::complex<double>;

struct FieldLimits {
  std::uint64_t max_field = std::uint64_t{1} << 20;
  std::uint64_t max_table = std::uint64_t{1} << 16;
};

namespace detail {

inline long long pmod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Returns k with p^k == q for a prime p, or nullopt when q is not a prime power.
struct PrimePower {
  std::uint32_t p, k;
};
inline std::optional<PrimePower> as_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  std::uint32_t k = 0;
  while (q > 1) {
    q /= f[0];
    ++k;
  }
  return PrimePower{static_cast<std::uint32_t>(f[0]), k};
}

using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, lowest first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b over F_p; b nonzero.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  std::uint64_t inv_lead = 1;
  for (std::uint32_t e = p - 2, base = b.back(); e; e >>= 1) {
    if (e & 1) inv_lead = inv_lead * base % p;
    base = static_cast<std::uint32_t>(std::uint64_t{base} * base % p);
  }
  while (a.size() > db) {
    const std::uint64_t c = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - c * b[j] % p) % p);
    trim(a);
  }
  return a;
}

inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= p) g[i] = static_cast<std::uint32_t>(c % p);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline Complex root_of_unity(std::uint64_t n, long long k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(pmod(k, static_cast<long long>(n))) /
                       static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// Neumaier compensated summation on both components.
class CompensatedSum {
 public:
  void add(Complex z) {
    step(sr_, cr_, z.real());
    step(si_, ci_, z.imag());
  }
  Complex value() const { return {sr_ + cr_, si_ + ci_}; }

 private:
  static void step(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double sr_ = 0, cr_ = 0, si_ = 0, ci_ = 0;
};

}  // namespace detail

class FiniteField {
 public:
  static FiniteField make(std::uint32_t p, std::uint32_t k, const FieldLimits& limits = {}) {
    detail::require(detail::is_prime(p), "field characteristic " + std::to_string(p) + " is not prime");
    detail::require(k >= 1, "field degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      detail::require(q <= limits.max_field, "field size exceeds the configured bound");
    }
    detail::Poly modulus(k + 1, 0);
    modulus[k] = 1;
    if (k > 1) {
      bool found = false;
      for (std::uint64_t code = 0; code < q && !found; ++code) {
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < k; ++i, c /= p) modulus[i] = static_cast<std::uint32_t>(c % p);
        found = detail::is_irreducible(modulus, p);
      }
      detail::ensure(found, "no irreducible polynomial found");
    }
    return FiniteField(p, k, static_cast<std::uint32_t>(q), std::move(modulus));
  }

  static FiniteField of_order(std::uint64_t q, const FieldLimits& limits = {}) {
    auto pk = detail::as_prime_power(q);
    detail::require(pk.has_value(), std::to_string(q) + " is not a prime power");
    return make(pk->p, pk->k, limits);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return q_ - 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return k_ == 1; }
  bool operator==(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_; }

  bool contains(Element x) const { return x < q_; }

  Element from_integer(long long n) const { return static_cast<Element>(detail::pmod(n, p_)); }

  std::vector<std::uint32_t> digits(Element x) const {
    std::vector<std::uint32_t> out(k_);
    for (std::uint32_t i = 0; i < k_; ++i, x /= p_) out[i] = x % p_;
    return out;
  }

  Element from_digits(std::span<const std::uint32_t> ds) const {
    detail::require(ds.size() <= k_, "too many digits for a field element");
    Element x = 0;
    for (std::size_t i = ds.size(); i-- > 0;) {
      detail::require(ds[i] < p_, "digit out of range for a field element");
      x = x * p_ + ds[i];
    }
    return x;
  }

  Element add(Element a, Element b) const {
    if (k_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    Element out = 0;
    for (std::uint32_t i = 0; i < k_; ++i, a /= p_, b /= p_) out += ((a % p_ + b % p_) % p_) * pow_p_[i];
    return out;
  }

  Element neg(Element a) const {
    if (k_ == 1) return (p_ - a) % p_;
    if (p_ == 2) return a;
    Element out = 0;
    for (std::uint32_t i = 0; i < k_; ++i, a /= p_) out += ((p_ - a % p_) % p_) * pow_p_[i];
    return out;
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (k_ == 1) return static_cast<Element>(std::uint64_t{a} * b % p_);
    if (a == 0 || b == 0) return 0;
    auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> r(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j) r[i + j] = (r[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
    for (std::size_t i = r.size(); i-- > k_;) {
      const std::uint64_t c = r[i];
      if (!c) continue;
      r[i] = 0;
      for (std::uint32_t j = 0; j < k_; ++j) r[i - k_ + j] = (r[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
    }
    Element out = 0;
    for (std::uint32_t i = k_; i-- > 0;) out = out * p_ + static_cast<Element>(r[i]);
    return out;
  }

  Element pow(Element x, long long e) const {
    if (e < 0) {
      x = inv(x);
      e = -e;
    }
    Element result = 1;
    while (e) {
      if (e & 1) result = mul(result, x);
      x = mul(x, x);
      e >>= 1;
    }
    return result;
  }

  Element inv(Element x) const {
    detail::require(x != 0, "zero has no multiplicative inverse");
    return pow(x, static_cast<long long>(q_) - 2);
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  std::uint32_t multiplicative_order(Element x) const {
    detail::require(x != 0, "zero has no multiplicative order");
    std::uint32_t ord = q_ - 1;
    for (auto f : detail::prime_factors(q_ - 1))
      while (ord % f == 0 && pow(x, ord / f) == 1) ord /= static_cast<std::uint32_t>(f);
    return ord;
  }

  // Tr(x) = x + x^p + ... + x^(p^(k-1)), an element of the prime field.
  std::uint32_t trace(Element x) const {
    Element s = x, y = x;
    for (std::uint32_t i = 1; i < k_; ++i) {
      y = pow(y, p_);
      s = add(s, y);
    }
    detail::ensure(s < p_, "trace left the prime field");
    return s;
  }

 private:
  FiniteField(std::uint32_t p, std::uint32_t k, std::uint32_t q, std::vector<std::uint32_t> modulus)
      : p_(p), k_(k), q_(q), modulus_(std::move(modulus)) {
    pow_p_.resize(k_);
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i < k_; ++i, v *= p_) pow_p_[i] = v;
  }

  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;
};

inline FiniteField make_field(std::uint32_t p, std::uint32_t k, const FieldLimits& limits = {}) {
  return FiniteField::make(p, k, limits);
}

struct CharacterOptions {
  std::optional<Element> generator;  // default: first element of order q-1
  Element additive_shift = 1;        // psi is replaced by x -> psi(a x)
};

class CharacterTable {
 public:
  explicit CharacterTable(const FiniteField& field, const CharacterOptions& opts = {},
                          const FieldLimits& limits = {})
      : field_(field), shift_(opts.additive_shift) {
    const std::uint32_t q = field_.q(), n = q - 1;
    detail::require(q <= limits.max_table, "character tables are limited to q <= " + std::to_string(limits.max_table));
    detail::require(shift_ != 0 && field_.contains(shift_), "additive shift must be a nonzero field element");
    if (opts.generator) {
      detail::require(field_.contains(*opts.generator) && *opts.generator != 0 &&
                          field_.multiplicative_order(*opts.generator) == n,
                      "requested generator does not have order q-1");
      gen_ = *opts.generator;
    } else {
      gen_ = first_generators(field_, 1).front();
    }

    exp_.resize(n);
    dlog_.assign(q, kNoLog);
    Element x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      detail::ensure(dlog_[x] == kNoLog, "generator walk revisited an element");
      exp_[i] = x;
      dlog_[x] = i;
      x = field_.mul(x, gen_);
    }

    // Trace is F_p-linear, so tabulate it on the power basis 1, x, x^2, ...
    std::vector<std::uint32_t> basis(field_.k());
    for (std::uint32_t i = 0, pp = 1; i < field_.k(); ++i, pp *= field_.p()) basis[i] = field_.trace(pp);
    trace_.resize(q);
    for (Element y = 0; y < q; ++y) {
      std::uint64_t t = 0;
      Element c = y;
      for (std::uint32_t i = 0; i < field_.k(); ++i, c /= field_.p()) t += std::uint64_t{c % field_.p()} * basis[i];
      trace_[y] = static_cast<std::uint32_t>(t % field_.p());
    }

    zeta_p_.resize(field_.p());
    for (std::uint32_t i = 0; i < field_.p(); ++i) zeta_p_[i] = detail::root_of_unity(field_.p(), i);
    zeta_qx_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) zeta_qx_[i] = detail::root_of_unity(n, i);
  }

  // The first `count` elements of order q-1 in encoding order.
  static std::vector<Element> first_generators(const FiniteField& field, std::size_t count) {
    std::vector<Element> out;
    for (Element x = 1; x < field.q() && out.size() < count; ++x)
      if (field.multiplicative_order(x) == field.q() - 1) out.push_back(x);
    return out;
  }

  const FiniteField& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  std::uint32_t order() const { return field_.q() - 1; }
  Element generator() const { return gen_; }
  Element additive_shift() const { return shift_; }

  std::uint32_t dlog(Element x) const {
    detail::require(x != 0 && field_.contains(x), "discrete log of zero or of a non-element");
    return dlog_[x];
  }
  Element exp(long long i) const { return exp_[static_cast<std::size_t>(detail::pmod(i, order()))]; }
  std::uint32_t trace(Element x) const { return trace_[x]; }

  Complex zeta_p(long long k) const { return zeta_p_[static_cast<std::size_t>(detail::pmod(k, field_.p()))]; }
  Complex zeta_qx(long long k) const { return zeta_qx_[static_cast<std::size_t>(detail::pmod(k, order()))]; }

  Complex psi(Element x) const { return zeta_p_[trace_[field_.mul(shift_, x)]]; }

  // chi^m(x) for nonzero x.
  Complex chi(long long m, Element x) const {
    const long long n = order();
    return zeta_qx_[static_cast<std::size_t>(detail::pmod(m, n) * dlog(x) % n)];
  }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;
  FiniteField field_;
  Element shift_ = 1;
  Element gen_ = 1;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> trace_;
  std::vector<Complex> zeta_p_, zeta_qx_;
};

inline CharacterTable char_table(const FiniteField& field, const CharacterOptions& opts = {}) {
  return CharacterTable(field, opts);
}

// g(m) = sum over nonzero u of psi(u) chi^m(u), for every m mod q-1.
class GaussTable {
 public:
  explicit GaussTable(CharacterTable ct) : ct_(std::move(ct)) {
    const std::uint32_t n = ct_.order();
    std::vector<Complex> psi_at(n);
    for (std::uint32_t i = 0; i < n; ++i) psi_at[i] = ct_.psi(ct_.exp(i));
    values_.resize(n);
    for (std::uint32_t m = 0; m < n; ++m) {
      detail::CompensatedSum sum;
      for (std::uint32_t i = 0; i < n; ++i) sum.add(psi_at[i] * ct_.zeta_qx(std::uint64_t{m} * i % n));
      values_[m] = sum.value();
    }
  }

  static GaussTable of_order(std::uint64_t q, const CharacterOptions& opts = {}) {
    return GaussTable(CharacterTable(FiniteField::of_order(q), opts));
  }

  const CharacterTable& characters() const { return ct_; }
  const FiniteField& field() const { return ct_.field(); }
  std::uint32_t q() const { return ct_.q(); }
  std::uint32_t order() const { return ct_.order(); }

  Complex operator()(long long m) const { return values_[static_cast<std::size_t>(detail::pmod(m, order()))]; }

  // g(v) = prod_j g(v_j)
  template <class Range>
  Complex product(const Range& v) const {
    Complex out = 1.0;
    for (auto m : v) out *= (*this)(static_cast<long long>(m));
    return out;
  }

  std::span<const Complex> values() const { return values_; }

 private:
  CharacterTable ct_;
  std::vector<Complex> values_;
};

inline Complex gauss(const GaussTable& table, long long m) { return table(m); }

}  // namespace hgm
