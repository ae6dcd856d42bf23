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

#include <utility>

#include "ssk/matrix.hpp"

namespace ssk {

/// Shape (even|odd) of a free supermodule basis, even vectors first.
struct SuperShape {
  int even = 0, odd = 0;
  int total() const { return even + odd; }
  int parity(int i) const { return i < even ? 0 : 1; }
  friend bool operator==(const SuperShape& a, const SuperShape& b) {
    return a.even == b.even && a.odd == b.odd;
  }
  friend bool operator!=(const SuperShape& a, const SuperShape& b) { return !(a == b); }
};

/// Block matrix over a Grassmann algebra with even/odd row and column
/// grading. Rows 0..p-1 and columns 0..r-1 are even. Represents an even
/// morphism of free supermodules: the A (even-even) and D (odd-odd) blocks
/// carry even entries, B and C odd entries; this homogeneous format is
/// enforced on construction.
///
/// Convention: vectors are columns with coefficients written on the right
/// of the basis, so morphism composition is the plain matrix product with
/// no Koszul signs.
class SuperMatrix {
 public:
  SuperMatrix(SuperShape row_shape, SuperShape col_shape, Matrix<GElt> entries)
      : rs_(row_shape), cs_(col_shape), m_(std::move(entries)) {
    if (m_.rows() != rs_.total() || m_.cols() != cs_.total())
      throw ShapeMismatch("entry grid does not match shapes");
    for (int i = 0; i < m_.rows(); ++i)
      for (int j = 0; j < m_.cols(); ++j) {
        const GElt& e = m_(i, j);
        if (e.is_zero()) continue;
        bool want_odd = (rs_.parity(i) + cs_.parity(j)) % 2 == 1;
        if (want_odd ? !e.is_odd() : !e.is_even())
          throw ShapeMismatch("entry parity violates the even-morphism format");
      }
  }

  static SuperMatrix identity(SuperShape s) {
    return SuperMatrix(s, s, Matrix<GElt>::identity(s.total(), GElt(Rational(1))));
  }

  const SuperShape& row_shape() const { return rs_; }
  const SuperShape& col_shape() const { return cs_; }
  const Matrix<GElt>& entries() const { return m_; }
  const GElt& operator()(int i, int j) const { return m_(i, j); }
  bool square() const { return rs_ == cs_; }

  Matrix<GElt> block_a() const { return block(0, rs_.even, 0, cs_.even); }
  Matrix<GElt> block_b() const { return block(0, rs_.even, cs_.even, cs_.odd); }
  Matrix<GElt> block_c() const { return block(rs_.even, rs_.odd, 0, cs_.even); }
  Matrix<GElt> block_d() const { return block(rs_.even, rs_.odd, cs_.even, cs_.odd); }

  friend bool operator==(const SuperMatrix& x, const SuperMatrix& y) {
    return x.rs_ == y.rs_ && x.cs_ == y.cs_ && x.m_ == y.m_;
  }

 private:
  Matrix<GElt> block(int i0, int nr, int j0, int nc) const {
    Matrix<GElt> b(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = m_(i0 + i, j0 + j);
    return b;
  }

  SuperShape rs_, cs_;
  Matrix<GElt> m_;
};

/// Matrix product; shapes must compose.
inline SuperMatrix supermat_mul(const SuperMatrix& x, const SuperMatrix& y) {
  if (x.col_shape() != y.row_shape())
    throw ShapeMismatch("supermatrix shapes do not compose");
  return SuperMatrix(x.row_shape(), y.col_shape(), x.entries() * y.entries());
}

inline SuperMatrix operator*(const SuperMatrix& x, const SuperMatrix& y) {
  return supermat_mul(x, y);
}

/// True when the reductions mod nilpotents of both diagonal blocks are
/// invertible, which over this local ring is equivalent to invertibility.
inline bool supermat_is_invertible(const SuperMatrix& m) {
  if (!m.square()) return false;
  auto reduced_rank = [](const Matrix<GElt>& blk) {
    Matrix<Rational> r(blk.rows(), blk.cols());
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) r(i, j) = blk(i, j).constant_term();
    return rank_exact(r);
  };
  return reduced_rank(m.block_a()) == m.row_shape().even &&
         reduced_rank(m.block_d()) == m.row_shape().odd;
}

/// Berezinian. Uses Ber(M) = det(A - B D^{-1} C) det(D)^{-1} when the D
/// block has invertible reduction, falling back to
/// det(A) det(D - C A^{-1} B)^{-1} when only A does.
inline GElt ber(const SuperMatrix& m) {
  if (!m.square()) throw ShapeMismatch("Berezinian of non-square supermatrix");
  int q = m.row_shape().odd;
  if (q == 0) return det_ring(m.entries());

  Matrix<GElt> a = m.block_a(), b = m.block_b(), c = m.block_c(), d = m.block_d();
  auto reduced_invertible = [](const Matrix<GElt>& blk) {
    Matrix<Rational> r(blk.rows(), blk.cols());
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) r(i, j) = blk(i, j).constant_term();
    return blk.rows() == 0 || rank_exact(r) == blk.rows();
  };

  if (reduced_invertible(d)) {
    Matrix<GElt> schur = a - b * inv_ring(d) * c;
    return det_ring(schur) * gr_invert(det_ring(d));
  }
  if (m.row_shape().even > 0 && reduced_invertible(a)) {
    Matrix<GElt> schur = d - c * inv_ring(a) * b;
    GElt ds = det_ring(schur);
    return det_ring(a) * gr_invert(ds);  // gr_invert throws if singular
  }
  throw NotInvertible("both diagonal blocks have singular reduction");
}

/// Inverse via the Schur complement; requires an invertible supermatrix.
inline SuperMatrix super_inverse(const SuperMatrix& m) {
  if (!m.square()) throw ShapeMismatch("inverse of non-square supermatrix");
  if (!supermat_is_invertible(m)) throw NotInvertible("singular supermatrix");
  // Plain Gauss-Jordan works: pivots with invertible constant term are
  // always available on the diagonal blocks, and entry parities of the
  // inverse come out homogeneous automatically.
  return SuperMatrix(m.col_shape(), m.row_shape(), inv_ring(m.entries()));
}

}  // namespace ssk
