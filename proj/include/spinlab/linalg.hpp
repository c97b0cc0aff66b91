#pragma once

#include <cassert>
#include <optional>
#include <vector>

namespace spinlab {

template <class F>
using Mat = std::vector<std::vector<typename F::Elem>>;

template <class F>
Mat<F> mat_zero(const F& K, std::size_t r, std::size_t c) {
  return Mat<F>(r, std::vector<typename F::Elem>(c, K.zero()));
}

template <class F>
Mat<F> mat_identity(const F& K, std::size_t n) {
  Mat<F> m = mat_zero(K, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = K.one();
  return m;
}

template <class F>
Mat<F> mat_mul(const F& K, const Mat<F>& a, const Mat<F>& b) {
  std::size_t r = a.size(), mid = b.size(), c = b.empty() ? 0 : b[0].size();
  Mat<F> out = mat_zero(K, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < mid; ++k) {
      if (K.is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < c; ++j)
        out[i][j] = K.add(out[i][j], K.mul(a[i][k], b[k][j]));
    }
  return out;
}

template <class F>
std::vector<typename F::Elem> mat_apply(const F& K, const Mat<F>& a,
                                        const std::vector<typename F::Elem>& v) {
  std::vector<typename F::Elem> out(a.size(), K.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = K.add(out[i], K.mul(a[i][j], v[j]));
  return out;
}

template <class F>
Mat<F> mat_transpose(const F& K, const Mat<F>& a) {
  if (a.empty()) return a;
  Mat<F> out = mat_zero(K, a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

// Reduced row echelon form in place; returns pivot column indices.
template <class F>
std::vector<int> rref(const F& K, Mat<F>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!K.is_zero(m[i][c])) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    auto inv = K.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = K.mul(m[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || K.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = K.sub(m[i][j], K.mul(f, m[r][j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

template <class F>
int mat_rank(const F& K, Mat<F> m) {
  return static_cast<int>(rref(K, m).size());
}

// Exact basis of the right null space.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_basis(const F& K, Mat<F> m) {
  if (m.empty()) return {};
  std::size_t cols = m[0].size();
  std::vector<int> pivots = rref(K, m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<typename F::Elem>> basis;
  for (std::size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<typename F::Elem> v(cols, K.zero());
    v[freec] = K.one();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      v[pivots[pi]] = K.neg(m[pi][freec]);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
typename F::Elem det_gauss(const F& K, Mat<F> m) {
  std::size_t n = m.size();
  auto det = K.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (!K.is_zero(m[i][c])) {
        sel = i;
        break;
      }
    if (sel == n) return K.zero();
    if (sel != c) {
      std::swap(m[c], m[sel]);
      det = K.neg(det);
    }
    det = K.mul(det, m[c][c]);
    auto inv = K.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (K.is_zero(m[i][c])) continue;
      auto f = K.mul(m[i][c], inv);
      for (std::size_t j = c; j < n; ++j) m[i][j] = K.sub(m[i][j], K.mul(f, m[c][j]));
    }
  }
  return det;
}

// Solves A x = b; empty optional when inconsistent. Returns one solution.
template <class F>
std::optional<std::vector<typename F::Elem>> solve_linear(const F& K, Mat<F> a,
                                                          const std::vector<typename F::Elem>& b) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(K, a);
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    if (pivots[pi] == static_cast<int>(cols)) return std::nullopt;
  std::vector<typename F::Elem> x(cols, K.zero());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = a[pi][cols];
  return x;
}

template <class F>
std::optional<Mat<F>> mat_inverse(const F& K, const Mat<F>& a) {
  std::size_t n = a.size();
  Mat<F> m = a;
  for (std::size_t i = 0; i < n; ++i) {
    auto id = mat_identity(K, n);
    m[i].insert(m[i].end(), id[i].begin(), id[i].end());
  }
  std::vector<int> pivots = rref(K, m);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != static_cast<int>(i)) return std::nullopt;
  Mat<F> inv = mat_zero(K, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

}  // namespace spinlab
