#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hgm/error.hpp"

namespace hgm {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

namespace detail {

// Floor division for arbitrary-precision integers; b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt big_mod(const BigInt& a, const BigInt& n) {
  BigInt r = a % n;
  if (r < 0) r += n;
  return r;
}

inline long long to_ll(const BigInt& x) {
  ensure(x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max(),
         "integer does not fit in 64 bits");
  return static_cast<long long>(x);
}

}  // namespace detail

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  template <class T>
  static IntMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      detail::require(rows[i].size() == m.cols_, "matrix rows have unequal lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = BigInt(rows[i][j]);
    }
    return m;
  }

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> v;
    for (auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const { return IntVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  IntVector col(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_row(std::size_t i, const IntVector& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  std::vector<std::vector<long long>> to_ll() const {
    std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = detail::to_ll((*this)(i, j));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& b) const {
    detail::require(cols_ == b.rows_, "matrix dimensions do not match");
    IntMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += (*this)(i, k) * b(k, j);
      }
    return c;
  }

  IntVector operator*(const IntVector& v) const {
    detail::require(cols_ == v.size(), "matrix-vector dimensions do not match");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const IntMatrix& o) const = default;

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x == 0; });
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  // row i += f * row k
  void add_row(std::size_t i, std::size_t k, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
  }
  void add_col(std::size_t j, std::size_t k, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

struct HermiteResult {
  IntMatrix H, U;                   // U * A == H
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Row-style Hermite normal form: H is in echelon form with positive pivots and
// entries above each pivot reduced into [0, pivot).
inline HermiteResult hnf(const IntMatrix& A) {
  HermiteResult res{A, IntMatrix::identity(A.rows()), {}};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool have_pivot = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (!best || abs(H(i, c)) < abs(H(*best, c)))) best = i;
      if (!best) break;
      have_pivot = true;
      H.swap_rows(r, *best);
      U.swap_rows(r, *best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        const BigInt f = H(i, c) / H(r, c);
        H.add_row(i, r, -f);
        U.add_row(i, r, -f);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const BigInt f = detail::floor_div(H(i, c), H(r, c));
      H.add_row(i, r, -f);
      U.add_row(i, r, -f);
    }
    res.pivots.push_back(c);
    ++r;
  }
  return res;
}

struct SmithResult {
  IntMatrix S, U, V;  // U * A * V == S
  std::vector<BigInt> factors() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (auto& x : factors()) r += (x != 0);
    return r;
  }
};

inline SmithResult snf(const IntMatrix& A) {
  SmithResult res{A, IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols())};
  IntMatrix &S = res.S, &U = res.U, &V = res.V;
  const std::size_t m = A.rows(), n = A.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    auto bring_min = [&](std::size_t r0, std::size_t c0) -> bool {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = r0; i < m; ++i)
        for (std::size_t j = c0; j < n; ++j)
          if (S(i, j) != 0 && (!best || abs(S(i, j)) < abs(S(best->first, best->second)))) best = {i, j};
      if (!best) return false;
      S.swap_rows(t, best->first);
      U.swap_rows(t, best->first);
      S.swap_cols(t, best->second);
      V.swap_cols(t, best->second);
      return true;
    };
    if (!bring_min(t, t)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        const BigInt f = S(i, t) / S(t, t);
        S.add_row(i, t, -f);
        U.add_row(i, t, -f);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        const BigInt f = S(t, j) / S(t, t);
        S.add_col(j, t, -f);
        V.add_col(j, t, -f);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A smaller remainder now sits in row t or column t; pivot on it.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && (!best || abs(S(i, t)) < abs(S(best->first, best->second)))) best = {i, t};
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && (!best || abs(S(t, j)) < abs(S(best->first, best->second)))) best = {t, j};
        if (best && abs(S(best->first, best->second)) < abs(S(t, t))) {
          S.swap_rows(t, best->first);
          U.swap_rows(t, best->first);
          S.swap_cols(t, best->second);
          V.swap_cols(t, best->second);
        }
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      S.add_row(t, *bad_row, 1);
      U.add_row(t, *bad_row, 1);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return res;
}

inline std::size_t rank(const IntMatrix& A) { return hnf(A).rank(); }

// Exact determinant by fraction-free elimination.
inline BigInt det(const IntMatrix& A) {
  detail::require(A.rows() == A.cols(), "determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && M(i, k) == 0) ++i;
      if (i == n) return 0;
      M.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

// A basis of {x : A x = 0} that spans the saturated kernel lattice, in Hermite form.
inline std::vector<IntVector> integer_kernel(const IntMatrix& A) {
  const auto h = hnf(A.transpose());
  const std::size_t n = A.cols();
  IntMatrix K(n - h.rank(), n);
  for (std::size_t i = h.rank(); i < n; ++i) K.set_row(i - h.rank(), h.U.row(i));
  const auto hk = hnf(K);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < hk.rank(); ++i) out.push_back(hk.H.row(i));
  return out;
}

inline IntMatrix stack_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

// Inverse of a unimodular matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& U) {
  const auto h = hnf(U);
  detail::ensure(h.H == IntMatrix::identity(U.rows()), "matrix is not unimodular");
  return h.U;
}

// Some integer x with A x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b) {
  detail::require(A.rows() == b.size(), "right-hand side has the wrong length");
  const auto s = snf(A);
  const IntVector ub = s.U * b;
  IntVector y(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const BigInt d = i < A.cols() ? s.S(i, i) : BigInt(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % d != 0) return std::nullopt;
    y[i] = ub[i] / d;
  }
  return s.V * y;
}

// The primitive relation among the columns of M, first nonzero entry negative.
inline std::vector<long long> gale_vector(const IntMatrix& M) {
  detail::require(M.cols() == M.rows() + 1, "expected a (d+1) x (d+2) matrix");
  const auto ker = integer_kernel(M);
  detail::require(ker.size() == 1,
                  "exponent columns lie in an affine hyperplane (rank of [1; exponents] is below d+1)");
  IntVector g = ker[0];
  auto first = std::find_if(g.begin(), g.end(), [](const BigInt& x) { return x != 0; });
  if (*first > 0)
    for (auto& x : g) x = -x;
  std::vector<long long> out;
  for (auto& x : g) out.push_back(detail::to_ll(x));
  return out;
}

// Rows 1, f_1, ..., f_d forming a Z-basis of {x : gamma . x = 0}.
inline IntMatrix kernel_basis_with_ones(const std::vector<long long>& gamma) {
  const std::size_t n = gamma.size();
  detail::require(n >= 2, "gamma needs at least two entries");
  long long sum = 0;
  for (auto g : gamma) sum += g;
  detail::require(sum == 0, "gamma entries must sum to zero");
  IntMatrix G(1, n);
  for (std::size_t j = 0; j < n; ++j) G(0, j) = gamma[j];
  const auto basis = integer_kernel(G);
  const IntMatrix B = stack_rows(basis, n);
  const auto c = solve_integer(B.transpose(), IntVector(n, 1));
  detail::ensure(c.has_value(), "all-ones vector is not in the kernel lattice");
  // Complete c to a unimodular matrix W with first row c.
  IntMatrix C(c->size(), 1);
  for (std::size_t i = 0; i < c->size(); ++i) C(i, 0) = (*c)[i];
  const auto hc = hnf(C);
  detail::ensure(hc.H(0, 0) == 1, "coordinate vector of the all-ones row is not primitive");
  const IntMatrix W = inverse_unimodular(hc.U).transpose();
  return W * B;
}

// rho_1..rho_d (rows) with F rho_k = e_{k+1}, where F has rows 1, f_1, ..., f_d.
inline IntMatrix solve_rho(const IntMatrix& F) {
  const std::size_t d = F.rows() - 1;
  IntMatrix rho(d, F.cols());
  for (std::size_t k = 0; k < d; ++k) {
    IntVector e(F.rows());
    e[k + 1] = 1;
    const auto x = solve_integer(F, e);
    detail::ensure(x.has_value(), "no integral dual vector for a saturated kernel basis");
    rho.set_row(k, *x);
  }
  return rho;
}

// The representative of v + Z*gamma with least max-norm; ties broken lexicographically.
inline IntVector reduce_mod_vector(const IntVector& v, const std::vector<long long>& gamma) {
  BigInt bound = 0;
  for (auto& x : v) bound = std::max(bound, BigInt(abs(x)));
  const long long b = detail::to_ll(2 * bound + 1);
  std::optional<IntVector> best;
  BigInt best_norm;
  for (long long c = -b; c <= b; ++c) {
    IntVector w = v;
    BigInt norm = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] += BigInt(c) * gamma[j];
      norm = std::max(norm, BigInt(abs(w[j])));
    }
    if (!best || norm < best_norm || (norm == best_norm && w < *best)) {
      best = w;
      best_norm = norm;
    }
  }
  return *best;
}

// All lambda in (Z/n)^d with lambda^T N == 0 mod n, sorted lexicographically.
inline std::vector<std::vector<long long>> modular_nullspace(const IntMatrix& N, long long n) {
  detail::require(N.rows() == N.cols(), "covering matrix must be square");
  detail::require(n >= 1, "modulus must be positive");
  detail::require(det(N) != 0, "covering matrix is singular");
  // lambda^T N = 0  <=>  (lambda^T U^{-1}) S = 0  with  U N V = S.
  const auto s = snf(N);
  const std::size_t d = N.rows();
  std::vector<long long> step(d), count(d);
  for (std::size_t i = 0; i < d; ++i) {
    const long long g = std::gcd(detail::to_ll(detail::big_mod(s.S(i, i), n)), n);
    count[i] = g;
    step[i] = n / g;
  }
  std::vector<std::vector<long long>> out;
  std::vector<long long> idx(d, 0);
  for (;;) {
    std::vector<long long> lambda(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      const BigInt mu = BigInt(idx[i] * step[i]);
      for (std::size_t k = 0; k < d; ++k)
        lambda[k] = detail::to_ll(detail::big_mod(BigInt(lambda[k]) + mu * s.U(i, k), n));
    }
    out.push_back(lambda);
    std::size_t i = 0;
    while (i < d && ++idx[i] == count[i]) idx[i++] = 0;
    if (i == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hgm
