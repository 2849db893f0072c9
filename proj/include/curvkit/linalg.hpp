#pragma once

#include "curvkit/error.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace curvkit {

// Dense exact linear algebra over a field T providing is_zero(T), cost(T)
// and the usual arithmetic (Rational or NormalForm).

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

/// Row echelon form result; pivot_columns[k] is the column of the pivot in row k.
template <class T>
struct Echelon {
  Matrix<T> rows;  // reduced: pivot entries 1, zero above and below
  std::vector<std::size_t> pivot_columns;
  std::vector<T> pivots;  // original pivot values, before normalization
};

/// Gauss-Jordan elimination. Columns are visited in `order` (default 0..n-1);
/// within a column the cheapest nonzero entry becomes the pivot.
template <class T>
Echelon<T> reduce(Matrix<T> a, std::vector<std::size_t> order = {}) {
  Echelon<T> out;
  if (a.empty()) return out;
  std::size_t cols = a.front().size();
  if (order.empty())
    for (std::size_t c = 0; c < cols; ++c) order.push_back(c);
  std::size_t row = 0;
  for (std::size_t col : order) {
    if (row == a.size()) break;
    std::optional<std::size_t> best;
    for (std::size_t r = row; r < a.size(); ++r) {
      if (is_zero(a[r][col])) continue;
      if (!best || cost(a[r][col]) < cost(a[*best][col])) best = r;
    }
    if (!best) continue;
    std::swap(a[row], a[*best]);
    T pivot = a[row][col];
    T inv = T(1) / pivot;
    for (std::size_t c = 0; c < cols; ++c)
      if (!is_zero(a[row][c])) a[row][c] = a[row][c] * inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || is_zero(a[r][col])) continue;
      T factor = a[r][col];
      for (std::size_t c = 0; c < cols; ++c)
        if (!is_zero(a[row][c])) a[r][c] = a[r][c] - factor * a[row][c];
    }
    out.pivot_columns.push_back(col);
    out.pivots.push_back(pivot);
    ++row;
  }
  a.resize(row);
  out.rows = std::move(a);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return reduce(a).pivot_columns.size();
}

template <class T>
T determinant(Matrix<T> a) {
  std::size_t n = a.size();
  T det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> best;
    for (std::size_t r = col; r < n; ++r) {
      if (is_zero(a[r][col])) continue;
      if (!best || cost(a[r][col]) < cost(a[*best][col])) best = r;
    }
    if (!best) return T(0);
    if (*best != col) {
      std::swap(a[col], a[*best]);
      det = -det;
    }
    det = det * a[col][col];
    T inv = T(1) / a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a[r][col])) continue;
      T factor = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c)
        if (!is_zero(a[col][c])) a[r][c] = a[r][c] - factor * a[col][c];
    }
  }
  return det;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  std::size_t n = a.size();
  Matrix<T> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    for (std::size_t j = 0; j < n; ++j) aug[i].push_back(T(i == j ? 1 : 0));
  }
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < n; ++c) order.push_back(c);
  Echelon<T> e = reduce(std::move(aug), order);
  if (e.pivot_columns.size() != n) throw DivisionByZero("singular matrix");
  Matrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(e.rows[i].begin() + static_cast<std::ptrdiff_t>(n), e.rows[i].end());
  return out;
}

/// General solution of A x = b: a particular solution and a nullspace basis.
template <class T>
struct Solution {
  std::vector<T> particular;
  Matrix<T> nullspace;             // basis vectors, one per free column
  std::vector<std::size_t> free;   // the free columns, aligned with nullspace
  std::vector<T> pivots;
};

/// Columns are eliminated from the last to the first so that free parameters,
/// when there are any, are the lowest-numbered unknowns.
template <class T>
std::optional<Solution<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  std::size_t cols = a.empty() ? 0 : a.front().size();
  Matrix<T> aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  std::vector<std::size_t> order;
  for (std::size_t c = cols; c-- > 0;) order.push_back(c);
  Echelon<T> e = reduce(std::move(aug), order);
  // inconsistent when some row is 0 = nonzero
  for (const auto& row : e.rows) {
    bool all_zero = true;
    for (std::size_t c = 0; c < cols; ++c)
      if (!is_zero(row[c])) {
        all_zero = false;
        break;
      }
    if (all_zero && !is_zero(row[cols])) return std::nullopt;
  }
  Solution<T> s;
  s.particular.assign(cols, T(0));
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) {
    is_pivot[e.pivot_columns[k]] = true;
    s.particular[e.pivot_columns[k]] = e.rows[k][cols];
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(cols, T(0));
    v[f] = T(1);
    for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) v[e.pivot_columns[k]] = -e.rows[k][f];
    s.nullspace.push_back(std::move(v));
    s.free.push_back(f);
  }
  s.pivots = std::move(e.pivots);
  return s;
}

}  // namespace curvkit
