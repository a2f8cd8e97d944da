#pragma once

#include <stdexcept>
#include <vector>

#include "pcv/core/scalar.hpp"

namespace pcv {

// Dense matrix over an exact field, used as the rank/solve oracle beside the
// floating-point (Eigen) path.
template <class S>
struct DenseMat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  DenseMat() = default;
  DenseMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, ScalarOps<S>::zero()) {}
  S& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
};

// Row-reduce in place; returns rank. Exact arithmetic, partial pivot = first nonzero.
template <class S>
int gauss_rank(DenseMat<S> m) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < m.rows; ++r)
      if (!ScalarOps<S>::is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m(piv, c), m(rank, c));
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank || ScalarOps<S>::is_zero(m(r, col))) continue;
      S f = m(r, col) / m(rank, col);
      for (int c = col; c < m.cols; ++c) m(r, c) = m(r, c) - f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

// Solve A x = b exactly; throws when singular or inconsistent.
template <class S>
std::vector<S> gauss_solve(DenseMat<S> m, std::vector<S> b) {
  if (m.rows != int(b.size())) throw std::invalid_argument("gauss_solve: size mismatch");
  std::vector<int> where(m.cols, -1);
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r)
      if (!ScalarOps<S>::is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m(piv, c), m(row, c));
    std::swap(b[piv], b[row]);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || ScalarOps<S>::is_zero(m(r, col))) continue;
      S f = m(r, col) / m(row, col);
      for (int c = col; c < m.cols; ++c) m(r, c) = m(r, c) - f * m(row, c);
      b[r] = b[r] - f * b[row];
    }
    where[col] = row;
    ++row;
  }
  for (int r = row; r < m.rows; ++r)
    if (!ScalarOps<S>::is_zero(b[r])) throw std::runtime_error("gauss_solve: inconsistent system");
  std::vector<S> x(m.cols, ScalarOps<S>::zero());
  for (int col = 0; col < m.cols; ++col)
    if (where[col] >= 0) x[col] = b[where[col]] / m(where[col], col);
  return x;
}

template <class S>
DenseMat<S> gauss_inverse(const DenseMat<S>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("gauss_inverse: not square");
  int n = m.rows;
  DenseMat<S> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = ScalarOps<S>::one();
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!ScalarOps<S>::is_zero(aug(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("gauss_inverse: singular");
    for (int c = 0; c < 2 * n; ++c) std::swap(aug(piv, c), aug(col, c));
    S d = aug(col, col);
    for (int c = 0; c < 2 * n; ++c) aug(col, c) = aug(col, c) / d;
    for (int r = 0; r < n; ++r) {
      if (r == col || ScalarOps<S>::is_zero(aug(r, col))) continue;
      S f = aug(r, col);
      for (int c = 0; c < 2 * n; ++c) aug(r, c) = aug(r, c) - f * aug(col, c);
    }
  }
  DenseMat<S> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class S>
S det3(const S m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace pcv
