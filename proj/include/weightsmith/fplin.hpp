#ifndef WEIGHTSMITH_FPLIN_HPP
#define WEIGHTSMITH_FPLIN_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace weightsmith {

// Dense linear algebra over F_ell for small ell and small dimensions.
// Matrices are row-major vectors of rows.

using FpVec = std::vector<std::uint64_t>;
using FpMat = std::vector<FpVec>;

inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("fp_inv: zero");
  return fp_pow(a, p - 2, p);
}

inline FpMat fp_matmul(const FpMat& a, const FpMat& b, std::uint64_t p) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  FpMat c(n, FpVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] = (c[i][j] + fp_mul(a[i][t], b[t][j], p)) % p;
    }
  return c;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> fp_rref(FpMat& a, std::uint64_t p) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pr = r;
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[r], a[pr]);
    std::uint64_t inv = fp_inv(a[r][c], p);
    for (size_t j = 0; j < cols; ++j) a[r][j] = fp_mul(a[r][j], inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (size_t j = 0; j < cols; ++j)
        a[i][j] = (a[i][j] + p - fp_mul(f, a[r][j], p)) % p;
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

inline size_t fp_rank(FpMat a, std::uint64_t p) { return fp_rref(a, p).size(); }

/// Basis of the nullspace of a (as column vectors).
inline std::vector<FpVec> fp_nullspace(FpMat a, std::uint64_t p) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  std::vector<int> pivots = fp_rref(a, p);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<FpVec> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    FpVec v(cols, 0);
    v[free_c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      // row r has leading 1 at pivots[r]
      v[pivots[r]] = (p - a[r][free_c] % p) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves B * X = C for X, where B has full column rank. B is n x d,
/// C is n x m, X is d x m.
inline FpMat fp_solve(const FpMat& b, const FpMat& c, std::uint64_t p) {
  size_t n = b.size(), d = b[0].size(), m = c[0].size();
  FpMat aug(n, FpVec(d + m, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < d; ++j) aug[i][j] = b[i][j];
    for (size_t j = 0; j < m; ++j) aug[i][d + j] = c[i][j];
  }
  std::vector<int> pivots = fp_rref(aug, p);
  FpMat x(d, FpVec(m, 0));
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= static_cast<int>(d))
      throw std::logic_error("fp_solve: inconsistent system");
    for (size_t j = 0; j < m; ++j) x[pivots[r]][j] = aug[r][d + j];
  }
  // rows beyond rank must be zero on the rhs
  for (size_t r = pivots.size(); r < n; ++r)
    for (size_t j = 0; j < m; ++j)
      if (aug[r][d + j] != 0) throw std::logic_error("fp_solve: inconsistent system");
  return x;
}

}  // namespace weightsmith

#endif
