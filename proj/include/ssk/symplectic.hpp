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

#include <algorithm>
#include <utility>
#include <vector>

#include "ssk/supermatrix.hpp"

namespace ssk {

/// Free supermodule of rank (2m|2n) with an even supersymplectic form:
/// antisymmetric on the even part, symmetric on the odd part,
/// <u,v> = -(-1)^{p(u)p(v)} <v,u> entrywise on the gram matrix.
struct SympSpace {
  SuperShape shape;    // ambient basis, even vectors first
  Matrix<GElt> gram;   // gram(i, j) = <b_i, b_j>
  int gm = 0, gk = 1;  // Grassmann coefficient shape (m, k) of all entries

  int even_pairs() const { return shape.even / 2; }
  int odd_pairs() const { return shape.odd / 2; }
};

/// Subspace given by a generator matrix; columns are parity-sorted and kept
/// independent mod nilpotents (degenerate inputs are rejected at
/// construction). Isotropy is a property checked by is_maximal_isotropic,
/// not an invariant of the container.
struct IsotropicSub {
  SuperMatrix gens;  // row_shape = ambient shape, col_shape = generator shape
};

// ---------------------------------------------------------------------------
// The pairing.
//
// Vectors are coefficient columns u = sum_i b_i u^i (coefficients on the
// right of the basis). The single sign rule, derived from that convention:
//
//   <u, v> = sum_{i,j} (-1)^{p(u^i) p(b_j)} gram(i,j) u^i v^j
//
// with inhomogeneous coefficients split into parity parts. Super-skew
// symmetry of the gram then transports to vectors, which the tests assert.

inline GElt pairing(const SympSpace& V, const Matrix<GElt>& u, const Matrix<GElt>& v) {
  int n = V.shape.total();
  GElt acc = GElt::zero(V.gm, V.gk);
  for (int i = 0; i < n; ++i) {
    if (u(i, 0).is_zero()) continue;
    auto [ue, uo] = gr_parity_split(u(i, 0));
    for (int j = 0; j < n; ++j) {
      if (V.gram(i, j).is_zero() || v(j, 0).is_zero()) continue;
      GElt coeff = (V.shape.parity(j) == 1) ? ue - uo : ue + uo;
      acc += V.gram(i, j) * coeff * v(j, 0);
    }
  }
  return acc;
}

/// Pairing matrix P(a, b) = <A-col a, B-col b> as a supermatrix.
inline SuperMatrix pairing_matrix(const SympSpace& V, const SuperMatrix& A,
                                  const SuperMatrix& B) {
  Matrix<GElt> p(A.col_shape().total(), B.col_shape().total());
  for (int a = 0; a < p.rows(); ++a)
    for (int b = 0; b < p.cols(); ++b)
      p(a, b) = pairing(V, A.entries().col(a), B.entries().col(b));
  return SuperMatrix(A.col_shape(), B.col_shape(), std::move(p));
}

inline SympSpace make_symp_space(SuperShape shape, Matrix<GElt> gram, int gm, int gk) {
  if (shape.even % 2 != 0 || shape.odd % 2 != 0)
    throw ShapeMismatch("symplectic rank must be (2m|2n)");
  if (gram.rows() != shape.total() || gram.cols() != shape.total())
    throw ShapeMismatch("gram size does not match shape");
  SympSpace V{shape, std::move(gram), gm, gk};
  for (int i = 0; i < shape.total(); ++i)
    for (int j = 0; j < shape.total(); ++j) {
      const GElt& g = V.gram(i, j);
      if (!g.is_zero()) {
        bool want_odd = (shape.parity(i) + shape.parity(j)) % 2 == 1;
        if (want_odd ? !g.is_odd() : !g.is_even())
          throw ShapeMismatch("gram entry parity violates even form");
      }
      GElt mirror = V.gram(j, i);
      GElt expect = (shape.parity(i) * shape.parity(j) == 1) ? mirror : -mirror;
      if (!(g == expect)) throw NotSkew("gram is not super-skew-symmetric");
    }
  SuperMatrix gsm(shape, shape, V.gram);
  if (!supermat_is_invertible(gsm)) throw NotInvertible("degenerate gram");
  return V;
}

/// Standard Darboux space: even hyperbolic pairs <e_i, f_i> = 1 = -<f_i, e_i>
/// and odd symmetric pairs <o_i, o'_i> = 1 = <o'_i, o_i>.
inline SympSpace darboux_space(int m, int n, int gm, int gk) {
  SuperShape shape{2 * m, 2 * n};
  Matrix<GElt> g(shape.total(), shape.total());
  GElt one = GElt::one(gm, gk);
  for (int i = 0; i < m; ++i) {
    g(i, m + i) = one;
    g(m + i, i) = -one;
  }
  for (int i = 0; i < n; ++i) {
    g(2 * m + i, 2 * m + n + i) = one;
    g(2 * m + n + i, 2 * m + i) = one;
  }
  return make_symp_space(shape, std::move(g), gm, gk);
}

// ---------------------------------------------------------------------------
// Elimination over the local ring GElt. Pivots must have invertible
// constant term; inputs whose reductions mod nilpotents are degenerate are
// rejected with DegenerateReduction.

namespace detail {

/// Gauss-Jordan on [A | B] pivoting one row per column of A.
/// Returns X with A X = B. Throws DegenerateReduction if A does not have
/// full column rank with unit pivots, NotContained if inconsistent.
inline Matrix<GElt> solve_columns(const Matrix<GElt>& A, const Matrix<GElt>& B) {
  int n = A.rows(), k = A.cols(), w = B.cols();
  Matrix<GElt> M = Matrix<GElt>::hcat(A, B);
  std::vector<int> pivot_row(k, -1);
  std::vector<bool> used(n, false);
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = 0; r < n; ++r)
      if (!used[r] && ring_try_invert(M(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) throw DegenerateReduction("no unit pivot while solving");
    used[piv] = true;
    pivot_row[c] = piv;
    GElt inv = *ring_try_invert(M(piv, c));
    for (int j = 0; j < k + w; ++j) M(piv, j) = inv * M(piv, j);
    for (int r = 0; r < n; ++r) {
      if (r == piv || M(r, c).is_zero()) continue;
      GElt f = M(r, c);
      for (int j = 0; j < k + w; ++j) M(r, j) = M(r, j) - f * M(piv, j);
    }
  }
  for (int r = 0; r < n; ++r) {
    if (used[r]) continue;
    for (int j = 0; j < w; ++j)
      if (!M(r, k + j).is_zero())
        throw NotContained("columns are not in the span");
  }
  Matrix<GElt> X(k, w);
  for (int c = 0; c < k; ++c)
    for (int j = 0; j < w; ++j) X(c, j) = M(pivot_row[c], k + j);
  return X;
}

/// Row echelon of P (rows = equations); returns pivot (row, col) pairs and
/// the reduced matrix. Zero rows are skipped; rows with only nilpotent
/// residue raise DegenerateReduction.
inline std::pair<Matrix<GElt>, std::vector<std::pair<int, int>>> jordan_rows(
    Matrix<GElt> P) {
  int rows = P.rows(), cols = P.cols();
  std::vector<std::pair<int, int>> pivots;
  std::vector<bool> col_used(cols, false);
  for (int r = 0; r < rows; ++r) {
    int pc = -1;
    for (int c = 0; c < cols; ++c)
      if (!col_used[c] && ring_try_invert(P(r, c))) {
        pc = c;
        break;
      }
    if (pc < 0) {
      bool zero = true;
      for (int c = 0; c < cols; ++c)
        if (!P(r, c).is_zero()) zero = false;
      if (zero) continue;
      throw DegenerateReduction("row reduces to a nonzero nilpotent residue");
    }
    col_used[pc] = true;
    pivots.emplace_back(r, pc);
    GElt inv = *ring_try_invert(P(r, pc));
    for (int c = 0; c < cols; ++c) P(r, c) = inv * P(r, c);
    for (int rr = 0; rr < rows; ++rr) {
      if (rr == r || P(rr, pc).is_zero()) continue;
      GElt f = P(rr, pc);
      for (int c = 0; c < cols; ++c) P(rr, c) = P(rr, c) - f * P(r, c);
    }
  }
  return {std::move(P), std::move(pivots)};
}

/// Basis of the right kernel of P. Kernel vectors are indexed by the free
/// columns, and are homogeneous when P is.
inline Matrix<GElt> kernel_cols(const Matrix<GElt>& P) {
  auto [R, pivots] = jordan_rows(P);
  int cols = P.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto& [r, c] : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<GElt> K(cols, static_cast<int>(free_cols.size()));
  for (std::size_t fj = 0; fj < free_cols.size(); ++fj) {
    int f = free_cols[fj];
    K(f, static_cast<int>(fj)) = GElt(Rational(1));
    for (auto& [r, c] : pivots) K(c, static_cast<int>(fj)) = -R(r, f);
  }
  return K;
}

/// Indices of ambient unit vectors extending col(A) to the full module.
/// Deterministic: greedy first-unit-pivot order.
inline std::vector<int> complement_cols(const Matrix<GElt>& A) {
  int n = A.rows(), k = A.cols();
  Matrix<GElt> M = A;
  std::vector<bool> used(n, false);
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int r = 0; r < n; ++r)
      if (!used[r] && ring_try_invert(M(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) throw DegenerateReduction("columns dependent mod nilpotents");
    used[piv] = true;
    GElt inv = *ring_try_invert(M(piv, c));
    for (int j = 0; j < k; ++j) M(piv, j) = inv * M(piv, j);
    for (int r = 0; r < n; ++r) {
      if (r == piv || M(r, c).is_zero()) continue;
      GElt f = M(r, c);
      for (int j = 0; j < k; ++j) M(r, j) = M(r, j) - f * M(piv, j);
    }
  }
  std::vector<int> comp;
  for (int r = 0; r < n; ++r)
    if (!used[r]) comp.push_back(r);
  return comp;
}

/// Solves P X = B for wide P with full row rank (one unit pivot per row).
inline Matrix<GElt> solve_rows(const Matrix<GElt>& P, const Matrix<GElt>& B) {
  int rows = P.rows(), cols = P.cols(), w = B.cols();
  Matrix<GElt> M = Matrix<GElt>::hcat(P, B);
  std::vector<std::pair<int, int>> pivots;
  std::vector<bool> col_used(cols, false);
  for (int r = 0; r < rows; ++r) {
    int pc = -1;
    for (int c = 0; c < cols; ++c)
      if (!col_used[c] && ring_try_invert(M(r, c))) {
        pc = c;
        break;
      }
    if (pc < 0) throw DegenerateReduction("row rank deficit while solving");
    col_used[pc] = true;
    pivots.emplace_back(r, pc);
    GElt inv = *ring_try_invert(M(r, pc));
    for (int c = 0; c < cols + w; ++c) M(r, c) = inv * M(r, c);
    for (int rr = 0; rr < rows; ++rr) {
      if (rr == r || M(rr, pc).is_zero()) continue;
      GElt f = M(rr, pc);
      for (int c = 0; c < cols + w; ++c) M(rr, c) = M(rr, c) - f * M(r, c);
    }
  }
  Matrix<GElt> X(cols, w);
  for (auto& [r, c] : pivots)
    for (int j = 0; j < w; ++j) X(c, j) = M(r, cols + j);
  return X;
}

inline int reduced_rank(const Matrix<GElt>& A) {
  Matrix<Rational> r(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) r(i, j) = A(i, j).constant_term();
  return rank_exact(r);
}

/// Parity of a homogeneous column vector: parity of any nonzero entry plus
/// the parity of its ambient basis row. Throws on inhomogeneous columns.
inline int column_parity(const SuperShape& ambient, const Matrix<GElt>& m, int col) {
  int found = -1;
  for (int i = 0; i < m.rows(); ++i) {
    const GElt& e = m(i, col);
    if (e.is_zero()) continue;
    int ep;
    if (e.is_even())
      ep = 0;
    else if (e.is_odd())
      ep = 1;
    else
      throw ShapeMismatch("inhomogeneous entry in graded column");
    int p = (ep + ambient.parity(i)) % 2;
    if (found < 0)
      found = p;
    else if (found != p)
      throw ShapeMismatch("column is not parity-homogeneous");
  }
  return found < 0 ? 0 : found;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subspace construction and the theta section.

inline IsotropicSub make_subspace(const SympSpace& V, const SuperMatrix& gens) {
  if (!(gens.row_shape() == V.shape))
    throw ShapeMismatch("generators do not live in the ambient space");
  if (detail::reduced_rank(gens.entries()) != gens.col_shape().total())
    throw DegenerateReduction("generators dependent mod nilpotents");
  return IsotropicSub{gens};
}

/// Convenience: wraps a raw coefficient grid whose columns are already
/// parity-sorted with the given generator shape.
inline IsotropicSub make_subspace(const SympSpace& V, SuperShape gshape,
                                  Matrix<GElt> cols) {
  return make_subspace(V, SuperMatrix(V.shape, gshape, std::move(cols)));
}

inline bool is_isotropic(const SympSpace& V, const IsotropicSub& L) {
  SuperMatrix P = pairing_matrix(V, L.gens, L.gens);
  for (int i = 0; i < P.entries().rows(); ++i)
    for (int j = 0; j < P.entries().cols(); ++j)
      if (!P(i, j).is_zero()) return false;
  return true;
}

/// True iff L is isotropic of full rank (m|n) and the induced map
/// V/L -> L^dual is invertible.
inline bool is_maximal_isotropic(const SympSpace& V, const IsotropicSub& L) {
  if (!is_isotropic(V, L)) return false;
  if (L.gens.col_shape().even != V.even_pairs() ||
      L.gens.col_shape().odd != V.odd_pairs())
    return false;
  std::vector<int> comp = detail::complement_cols(L.gens.entries());
  // complement basis, parity-sorted
  std::vector<int> comp_sorted;
  for (int r : comp)
    if (V.shape.parity(r) == 0) comp_sorted.push_back(r);
  int comp_even = static_cast<int>(comp_sorted.size());
  for (int r : comp)
    if (V.shape.parity(r) == 1) comp_sorted.push_back(r);
  Matrix<GElt> C(static_cast<int>(comp_sorted.size()), L.gens.col_shape().total());
  for (std::size_t g = 0; g < comp_sorted.size(); ++g) {
    Matrix<GElt> unit(V.shape.total(), 1);
    unit(comp_sorted[g], 0) = GElt(Rational(1));
    for (int a = 0; a < C.cols(); ++a)
      C(static_cast<int>(g), a) = pairing(V, unit, L.gens.entries().col(a));
  }
  SuperShape comp_shape{comp_even, static_cast<int>(comp_sorted.size()) - comp_even};
  if (!(comp_shape == L.gens.col_shape())) return false;
  return supermat_is_invertible(SuperMatrix(comp_shape, L.gens.col_shape(), std::move(C)));
}

/// theta(L1, L2): Berezinian of the pairing matrix between the chosen
/// generator bases. Basis-dependent by design; identities are stated for
/// explicitly pinned bases.
inline GElt theta_section(const SympSpace& V, const IsotropicSub& L1,
                          const IsotropicSub& L2) {
  if (!is_maximal_isotropic(V, L1) || !is_maximal_isotropic(V, L2))
    throw NotMaximal("theta needs maximal isotropic subspaces");
  SuperMatrix P = pairing_matrix(V, L1.gens, L2.gens);
  if (!supermat_is_invertible(P)) throw NotTransversal("pairing matrix singular");
  return ber(P);
}

// ---------------------------------------------------------------------------
// Isotropic reduction.

struct Reduction {
  SympSpace reduced_space;          // M-perp / M with the induced form
  IsotropicSub l1_bar, l2_bar;      // images of L1 and L2
  SuperMatrix l1_compat, l2_compat; // re-bases of L1, L2 for which
                                    // theta(L1, L2) = theta(L1bar, L2bar) exactly
};

inline Reduction reduce_by_isotropic(const SympSpace& V, const IsotropicSub& L1,
                                     const IsotropicSub& L2, const SuperMatrix& Mgens) {
  using detail::solve_columns;
  if (!is_maximal_isotropic(V, L1) || !is_maximal_isotropic(V, L2))
    throw NotMaximal("reduction needs maximal isotropic L1, L2");
  int n = V.shape.total();
  int rm = Mgens.col_shape().total();

  // M inside L1 (throws NotContained otherwise)
  Matrix<GElt> y1;
  try {
    y1 = solve_columns(L1.gens.entries(), Mgens.entries());
  } catch (const NotContained&) {
    throw NotContained("M is not contained in L1");
  }

  // M-perp as kernel of the pairing-with-M map
  Matrix<GElt> P(rm, n);
  for (int k = 0; k < rm; ++k) {
    for (int i = 0; i < n; ++i) {
      Matrix<GElt> unit(n, 1);
      unit(i, 0) = GElt(Rational(1));
      P(k, i) = pairing(V, Mgens.entries().col(k), unit);
    }
  }
  Matrix<GElt> K = detail::kernel_cols(P);

  // V = L2 + M-perp
  if (detail::reduced_rank(Matrix<GElt>::hcat(L2.gens.entries(), K)) != n)
    throw SurjectivityFail("L2 -> M-dual is not surjective");

  // Representatives of Vbar: columns of K complementary to M
  Matrix<GElt> ym = solve_columns(K, Mgens.entries());
  std::vector<int> rep_idx = detail::complement_cols(ym);
  auto kcol_parity = [&](int c) { return detail::column_parity(V.shape, K, c); };
  std::vector<int> reps_sorted;
  for (int c : rep_idx)
    if (kcol_parity(c) == 0) reps_sorted.push_back(c);
  int vbar_even = static_cast<int>(reps_sorted.size());
  for (int c : rep_idx)
    if (kcol_parity(c) == 1) reps_sorted.push_back(c);
  int vbar_dim = static_cast<int>(reps_sorted.size());
  Matrix<GElt> reps(n, vbar_dim);
  for (int j = 0; j < vbar_dim; ++j)
    for (int i = 0; i < n; ++i) reps(i, j) = K(i, reps_sorted[j]);

  SuperShape vbar_shape{vbar_even, vbar_dim - vbar_even};
  Matrix<GElt> gbar(vbar_dim, vbar_dim);
  for (int i = 0; i < vbar_dim; ++i)
    for (int j = 0; j < vbar_dim; ++j)
      gbar(i, j) = pairing(V, reps.col(i), reps.col(j));
  SympSpace Vbar = make_symp_space(vbar_shape, std::move(gbar), V.gm, V.gk);

  Matrix<GElt> m_and_reps = Matrix<GElt>::hcat(Mgens.entries(), reps);
  auto to_vbar = [&](const Matrix<GElt>& cols_in_mperp) {
    Matrix<GElt> coords = solve_columns(m_and_reps, cols_in_mperp);
    Matrix<GElt> out(vbar_dim, cols_in_mperp.cols());
    for (int i = 0; i < vbar_dim; ++i)
      for (int j = 0; j < out.cols(); ++j) out(i, j) = coords(rm + i, j);
    return out;
  };

  // L1bar: lifts = columns of L1 complementary to M inside L1
  std::vector<int> lift_idx = detail::complement_cols(y1);
  auto build_cols = [&](const Matrix<GElt>& src, const std::vector<int>& idx) {
    Matrix<GElt> out(src.rows(), static_cast<int>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (int i = 0; i < src.rows(); ++i)
        out(i, static_cast<int>(j)) = src(i, idx[j]);
    return out;
  };
  // parity-sort lift indices (columns of L1 are parity-sorted already)
  std::vector<int> lifts_sorted;
  for (int c : lift_idx)
    if (L1.gens.col_shape().parity(c) == 0) lifts_sorted.push_back(c);
  int l1bar_even = static_cast<int>(lifts_sorted.size());
  for (int c : lift_idx)
    if (L1.gens.col_shape().parity(c) == 1) lifts_sorted.push_back(c);
  Matrix<GElt> lifts = build_cols(L1.gens.entries(), lifts_sorted);
  SuperShape l1bar_shape{l1bar_even, static_cast<int>(lifts_sorted.size()) - l1bar_even};
  IsotropicSub L1bar =
      make_subspace(Vbar, SuperMatrix(vbar_shape, l1bar_shape, to_vbar(lifts)));

  // L2bar = L2 intersect M-perp, via the kernel of [L2 | -K]
  Matrix<GElt> inter = detail::kernel_cols(
      Matrix<GElt>::hcat(L2.gens.entries(), -K));
  int r2 = L2.gens.col_shape().total();
  Matrix<GElt> w(n, inter.cols());
  for (int j = 0; j < inter.cols(); ++j) {
    Matrix<GElt> comb(r2, 1);
    for (int i = 0; i < r2; ++i) comb(i, 0) = inter(i, j);
    Matrix<GElt> amb = L2.gens.entries() * comb;
    for (int i = 0; i < n; ++i) w(i, j) = amb(i, 0);
  }
  auto wcol_parity = [&](int c) { return detail::column_parity(V.shape, w, c); };
  std::vector<int> w_sorted;
  for (int c = 0; c < w.cols(); ++c)
    if (wcol_parity(c) == 0) w_sorted.push_back(c);
  int l2bar_even = static_cast<int>(w_sorted.size());
  for (int c = 0; c < w.cols(); ++c)
    if (wcol_parity(c) == 1) w_sorted.push_back(c);
  Matrix<GElt> wm = build_cols(w, w_sorted);
  SuperShape l2bar_shape{l2bar_even, static_cast<int>(w_sorted.size()) - l2bar_even};
  IsotropicSub L2bar =
      make_subspace(Vbar, SuperMatrix(vbar_shape, l2bar_shape, to_vbar(wm)));

  if (!is_maximal_isotropic(Vbar, L1bar) || !is_maximal_isotropic(Vbar, L2bar))
    throw DegenerateReduction("reduction did not yield maximal isotropics");

  // Compatible re-bases: L1 as (M, lifts), L2 as (D, W) with <M_k, D_l> =
  // delta_{kl}; both parity-sorted with the M/D part first inside each
  // parity block. With these choices theta(L1, L2) = theta(L1bar, L2bar)
  // exactly.
  Matrix<GElt> p2(rm, r2);
  for (int k = 0; k < rm; ++k)
    for (int l = 0; l < r2; ++l)
      p2(k, l) = pairing(V, Mgens.entries().col(k), L2.gens.entries().col(l));
  Matrix<GElt> x = detail::solve_rows(p2, Matrix<GElt>::identity(rm, GElt(Rational(1))));
  Matrix<GElt> d = L2.gens.entries() * x;

  auto interleave = [&](const Matrix<GElt>& first, const SuperShape& fsh,
                        const Matrix<GElt>& second, const SuperShape& ssh) {
    int cols = first.cols() + second.cols();
    Matrix<GElt> out(n, cols);
    int col = 0;
    auto copy_block = [&](const Matrix<GElt>& src, int from, int count) {
      for (int j = 0; j < count; ++j, ++col)
        for (int i = 0; i < n; ++i) out(i, col) = src(i, from + j);
    };
    copy_block(first, 0, fsh.even);
    copy_block(second, 0, ssh.even);
    copy_block(first, fsh.even, fsh.odd);
    copy_block(second, ssh.even, ssh.odd);
    return SuperMatrix(V.shape,
                       SuperShape{fsh.even + ssh.even, fsh.odd + ssh.odd},
                       std::move(out));
  };
  // M/D columns follow Mgens order and share its shape
  SuperShape msh = Mgens.col_shape();
  SuperMatrix l1_compat = interleave(Mgens.entries(), msh, lifts, l1bar_shape);
  SuperMatrix l2_compat = interleave(d, msh, wm, l2bar_shape);

  return Reduction{std::move(Vbar), std::move(L1bar), std::move(L2bar),
                   std::move(l1_compat), std::move(l2_compat)};
}

// ---------------------------------------------------------------------------
// Graphs of symmetric maps and the triple-Lagrangian identity.

/// Subspace { tau(l') + l' } for tau: Lambda' -> Lambda over a Lagrangian
/// splitting. Symmetry of tau (w.r.t. Lambda' = Lambda-dual) is exactly
/// isotropy of the graph, which is asserted.
inline IsotropicSub graph_of_symmetric(const SympSpace& V, const IsotropicSub& lambda_p,
                                       const IsotropicSub& lambda,
                                       const SuperMatrix& tau) {
  if (!is_maximal_isotropic(V, lambda) || !is_maximal_isotropic(V, lambda_p))
    throw NotMaximal("splitting pieces must be maximal isotropic");
  if (detail::reduced_rank(Matrix<GElt>::hcat(lambda.gens.entries(),
                                              lambda_p.gens.entries())) !=
      V.shape.total())
    throw ShapeMismatch("Lambda and Lambda' do not split V");
  if (!(tau.row_shape() == lambda.gens.col_shape()) ||
      !(tau.col_shape() == lambda_p.gens.col_shape()))
    throw ShapeMismatch("tau must map Lambda' to Lambda");
  Matrix<GElt> cols =
      lambda.gens.entries() * tau.entries() + lambda_p.gens.entries();
  IsotropicSub graph =
      make_subspace(V, SuperMatrix(V.shape, lambda_p.gens.col_shape(), std::move(cols)));
  if (!is_isotropic(V, graph))
    throw NotSymmetric("graph is not isotropic: tau is not symmetric");
  return graph;
}

/// tau with L = graph(tau) over the splitting (Lambda, Lambda');
/// NotTransversal when L meets Lambda.
inline SuperMatrix graph_coordinates(const SympSpace& V, const IsotropicSub& L,
                                     const IsotropicSub& lambda,
                                     const IsotropicSub& lambda_p) {
  if (!(L.gens.row_shape() == V.shape) || !(lambda.gens.row_shape() == V.shape) ||
      !(lambda_p.gens.row_shape() == V.shape))
    throw ShapeMismatch("subspaces live in different ambient spaces");
  Matrix<GElt> basis =
      Matrix<GElt>::hcat(lambda.gens.entries(), lambda_p.gens.entries());
  Matrix<GElt> coords = detail::solve_columns(basis, L.gens.entries());
  int nl = lambda.gens.col_shape().total();
  int np = lambda_p.gens.col_shape().total();
  Matrix<GElt> p(nl, L.gens.col_shape().total()), q(np, L.gens.col_shape().total());
  for (int j = 0; j < coords.cols(); ++j) {
    for (int i = 0; i < nl; ++i) p(i, j) = coords(i, j);
    for (int i = 0; i < np; ++i) q(i, j) = coords(nl + i, j);
  }
  if (detail::reduced_rank(q) != np)
    throw NotTransversal("subspace is not transversal to Lambda");
  Matrix<GElt> t = p * inv_ring(q);
  return SuperMatrix(lambda.gens.col_shape(), lambda_p.gens.col_shape(), std::move(t));
}

struct TripleProduct {
  GElt lhs;  // theta(L1, L2)
  GElt rhs;  // theta(L1, Lambda) theta(L2, Lambda) ber(tau1 - tau2)
};

/// Both sides of the triple-Lagrangian identity, computed with the graph
/// generator bases [tau_i; id] pinned by the splitting. The identity holds
/// up to one global sign per shape; the caller records it.
inline TripleProduct triple_product_check(const SympSpace& V, const IsotropicSub& L1,
                                          const IsotropicSub& L2,
                                          const IsotropicSub& lambda,
                                          const IsotropicSub& lambda_p) {
  SuperMatrix tau1 = graph_coordinates(V, L1, lambda, lambda_p);
  SuperMatrix tau2 = graph_coordinates(V, L2, lambda, lambda_p);
  auto graph_gens = [&](const SuperMatrix& tau) {
    Matrix<GElt> cols =
        lambda.gens.entries() * tau.entries() + lambda_p.gens.entries();
    return make_subspace(
        V, SuperMatrix(V.shape, lambda_p.gens.col_shape(), std::move(cols)));
  };
  IsotropicSub g1 = graph_gens(tau1), g2 = graph_gens(tau2);
  GElt lhs = theta_section(V, g1, g2);
  SuperMatrix diff(tau1.row_shape(), tau1.col_shape(),
                   tau1.entries() - tau2.entries());
  if (!supermat_is_invertible(diff))
    throw NotTransversal("tau1 - tau2 singular: graphs are not transversal");
  GElt rhs = theta_section(V, g1, lambda) * theta_section(V, g2, lambda) * ber(diff);
  return {std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------
// Odd-rank stabilization.

struct Stabilized {
  SympSpace space;
  IsotropicSub l1, l2;
};

/// Appends an odd hyperbolic pair (e1, e2) with (e1, e2) = 1 and extends
/// L1 by e1, L2 by e2. Raises EvenAlready when the odd rank is even.
inline Stabilized stabilize_odd(const SympSpace& V, const IsotropicSub& L1,
                                const IsotropicSub& L2) {
  int n_odd = L1.gens.col_shape().odd;
  if (n_odd % 2 == 0) throw EvenAlready("odd rank is already even");
  int n = V.shape.total();
  SuperShape shape{V.shape.even, V.shape.odd + 2};
  Matrix<GElt> gram(n + 2, n + 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = V.gram(i, j);
  GElt one = GElt::one(V.gm, V.gk);
  gram(n, n + 1) = one;
  gram(n + 1, n) = one;
  SympSpace Vp = make_symp_space(shape, std::move(gram), V.gm, V.gk);

  auto extend = [&](const IsotropicSub& L, int new_row) {
    SuperShape gsh = L.gens.col_shape();
    Matrix<GElt> cols(n + 2, gsh.total() + 1);
    for (int j = 0; j < gsh.total(); ++j)
      for (int i = 0; i < n; ++i) cols(i, j) = L.gens(i, j);
    cols(new_row, gsh.total()) = GElt(Rational(1));
    return make_subspace(Vp, SuperMatrix(shape, SuperShape{gsh.even, gsh.odd + 1},
                                         std::move(cols)));
  };
  return Stabilized{Vp, extend(L1, n), extend(L2, n + 1)};
}

/// dim of the reduced intersection and co-intersection of two subspaces
/// (mod nilpotents): the invariants preserved by stabilization.
inline std::pair<int, int> intersection_dims(const SympSpace& V, const IsotropicSub& L1,
                                             const IsotropicSub& L2) {
  int r1 = L1.gens.col_shape().total(), r2 = L2.gens.col_shape().total();
  int sum_rank = detail::reduced_rank(
      Matrix<GElt>::hcat(L1.gens.entries(), L2.gens.entries()));
  int inter = r1 + r2 - sum_rank;
  int cointer = V.shape.total() - sum_rank;
  return {inter, cointer};
}

}  // namespace ssk
