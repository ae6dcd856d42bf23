/*
 * Copyright 2026 The ssk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ssk/grassmann.hpp"
#include "ssk/rational.hpp"

namespace ssk {

/// Dense row-major matrix over an arbitrary ring scalar.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), d_(std::size_t(rows) * cols) {}
  Matrix(int rows, int cols, std::vector<T> data)
      : rows_(rows), cols_(cols), d_(std::move(data)) {}

  static Matrix identity(int n, const T& one = T(1)) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return d_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return d_[std::size_t(i) * cols_ + j]; }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix col(int j) const {
    Matrix m(rows_, 1);
    for (int i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, j);
    return m;
  }

  /// Horizontal concatenation.
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (int j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = a.d_[i] + b.d_[i];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = a.d_[i] - b.d_[i];
    return m;
  }
  Matrix operator-() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] = -d_[i];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (int j = 0; j < b.cols_; ++j) m(i, j) = m(i, j) + aik * b(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = s * a.d_[i];
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  int rows_, cols_;
  std::vector<T> d_;
};

// ---------------------------------------------------------------------------
// Scalar hooks shared by the elimination routines.

inline std::optional<Rational> ring_try_invert(const Rational& c) {
  if (c == 0) return std::nullopt;
  return Rational(1) / c;
}
template <class C>
std::optional<Grassmann<C>> ring_try_invert(const Grassmann<C>& g) {
  if (!RingTraits<C>::try_invert(g.constant_term())) return std::nullopt;
  return gr_invert(g);
}

inline bool ring_is_zero(const Rational& c) { return c == 0; }
template <class C>
bool ring_is_zero(const Grassmann<C>& g) {
  return g.is_zero();
}
inline bool ring_is_zero(const Poly& p) { return p.is_zero(); }

inline bool ring_is_even(const Rational&) { return true; }
template <class C>
bool ring_is_even(const Grassmann<C>& g) {
  return g.is_even();
}

// ---------------------------------------------------------------------------
// Exact rank over the rationals.

/// Rank by fraction-free (Bareiss) Gaussian elimination. Works for any
/// rectangular matrix; divisions are exact at every step.
inline int rank_exact(Matrix<Rational> m) {
  int rank = 0;
  Rational prev(1);
  int rows = m.rows(), cols = m.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++rank;
    ++r;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Determinants.

namespace detail {

/// Division-free determinant: Laplace expansion along rows with
/// memoization on the active column set.
template <class T>
T det_expansion(const Matrix<T>& m, const std::vector<int>& rows, std::uint64_t colmask,
                std::map<std::uint64_t, T>& memo, int depth) {
  if (colmask == 0) return T(1);
  auto it = memo.find(colmask);
  if (it != memo.end()) return it->second;
  int row = rows[depth];
  T acc{};
  int pos = 0;
  for (std::uint64_t rest = colmask; rest; rest &= rest - 1, ++pos) {
    std::uint64_t bit = rest & (~rest + 1);
    int col = std::countr_zero(rest);
    const T& e = m(row, col);
    if (!ring_is_zero(e)) {
      T sub = det_expansion(m, rows, colmask & ~bit, memo, depth + 1);
      T term = e * sub;
      if (pos % 2 == 1) term = -term;
      acc = acc + term;
    }
  }
  memo.emplace(colmask, acc);
  return acc;
}

template <class T>
T det_expansion(const Matrix<T>& m) {
  int n = m.rows();
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  std::map<std::uint64_t, T> memo;
  std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  return det_expansion(m, rows, full, memo, 0);
}

}  // namespace detail

/// Determinant over a commutative ring (even Grassmann entries included).
/// Sizes <= 6 use the division-free expansion; larger sizes use Gaussian
/// elimination pivoting on entries with invertible constant term, falling
/// back to column expansion when no such pivot exists (nilpotent columns).
template <class T>
T det_ring(Matrix<T> m) {
  int n = m.rows();
  if (n != m.cols()) throw ShapeMismatch("determinant of non-square matrix");
  if (n == 0) return T(1);
  if (n <= 6) return detail::det_expansion(m);

  T det(1);
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (ring_try_invert(m(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // No unit pivot in this column: expand along it.
      T acc{};
      for (int i = k; i < n; ++i) {
        if (ring_is_zero(m(i, k))) continue;
        Matrix<T> sub(n - k - 1, n - k - 1);
        for (int r = k, sr = 0; r < n; ++r) {
          if (r == i) continue;
          for (int c = k + 1; c < n; ++c) sub(sr, c - k - 1) = m(r, c);
          ++sr;
        }
        T term = m(i, k) * det_ring(std::move(sub));
        if ((i - k) % 2 == 1) term = -term;
        acc = acc + term;
      }
      det = det * acc;
      return negate ? -det : det;
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
      negate = !negate;
    }
    T inv = *ring_try_invert(m(k, k));
    det = det * m(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (ring_is_zero(m(i, k))) continue;
      T f = m(i, k) * inv;
      for (int j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
    }
  }
  return negate ? -det : det;
}

/// Inverse of a matrix over a commutative ring, by Gauss-Jordan with
/// unit-constant-term pivots. Throws NotInvertible when singular.
template <class T>
Matrix<T> inv_ring(Matrix<T> m) {
  int n = m.rows();
  if (n != m.cols()) throw ShapeMismatch("inverse of non-square matrix");
  Matrix<T> inv = Matrix<T>::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (ring_try_invert(m(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) throw NotInvertible("no unit pivot during matrix inversion");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(k, j));
        std::swap(inv(piv, j), inv(k, j));
      }
    T pinv = *ring_try_invert(m(k, k));
    for (int j = 0; j < n; ++j) {
      m(k, j) = pinv * m(k, j);
      inv(k, j) = pinv * inv(k, j);
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || ring_is_zero(m(i, k))) continue;
      T f = m(i, k);
      for (int j = 0; j < n; ++j) {
        m(i, j) = m(i, j) - f * m(k, j);
        inv(i, j) = inv(i, j) - f * inv(k, j);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Pfaffians.

/// Skew-symmetric matrix wrapper: validates M^T = -M and zero diagonal on
/// construction, and (for Grassmann scalars) that all entries are even.
template <class T>
class SkewMatrix {
 public:
  explicit SkewMatrix(Matrix<T> m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw NotSkew("skew matrix must be square");
    for (int i = 0; i < m_.rows(); ++i) {
      if (!ring_is_zero(m_(i, i))) throw NotSkew("nonzero diagonal");
      for (int j = 0; j < i; ++j) {
        if (!ring_is_zero(m_(i, j) + m_(j, i))) throw NotSkew("M^T != -M");
        if (!ring_is_even(m_(i, j)))
          throw NotEven("skew matrix entries must be even elements");
      }
    }
  }
  int size() const { return m_.rows(); }
  const Matrix<T>& matrix() const { return m_; }

 private:
  Matrix<T> m_;
};

namespace detail {

template <class T>
T pf_recursive(const Matrix<T>& m, std::vector<int>& idx) {
  std::size_t n = idx.size();
  if (n == 0) return T(1);
  // Expansion along the first remaining row: sum over partners with
  // alternating sign (+ for the adjacent partner).
  int i = idx[0];
  T acc{};
  for (std::size_t jpos = 1; jpos < n; ++jpos) {
    int j = idx[jpos];
    const T& e = m(i, j);
    if (ring_is_zero(e)) continue;
    std::vector<int> rest;
    rest.reserve(n - 2);
    for (std::size_t t = 1; t < n; ++t)
      if (t != jpos) rest.push_back(idx[t]);
    T term = e * pf_recursive(m, rest);
    if (jpos % 2 == 0) term = -term;
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

/// Pfaffian by recursive expansion along the first row (sum over perfect
/// matchings with crossing signs). Size must be even.
template <class T>
T pf(const SkewMatrix<T>& sm) {
  int n = sm.size();
  if (n % 2 != 0) throw OddSize("Pfaffian needs even size");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return detail::pf_recursive(sm.matrix(), idx);
}

/// The matrix R with M R = Pf(M) I, built from signed codimension-2
/// sub-Pfaffians. Entries are polynomial in the entries of M, so the
/// identity holds for singular M as well.
template <class T>
Matrix<T> pf_adjugate(const SkewMatrix<T>& sm) {
  int n = sm.size();
  if (n % 2 != 0) throw OddSize("Pfaffian adjugate needs even size");
  Matrix<T> r(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l) {
      std::vector<int> rest;
      rest.reserve(n - 2);
      for (int t = 0; t < n; ++t)
        if (t != j && t != l) rest.push_back(t);
      T sub = detail::pf_recursive(sm.matrix(), rest);
      if ((j + l) % 2 == 1) sub = -sub;  // (-1)^{j+l} with 1-based indices
      r(j, l) = sub;
      r(l, j) = -sub;
    }
  return r;
}

}  // namespace ssk
