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
#include <vector>

#include "ssk/matrix.hpp"

namespace ssk {

/// Family of subspaces of a fixed ambient space over the truncated odd base
/// Lambda(eta_1..eta_m)/Lambda^{>=3}, in the constant ambient frame.
/// Columns generate the family; they must be independent mod nilpotents.
struct SubspaceFamily {
  int ambient_dim = 0;
  int m = 0;  // number of odd directions; truncation is fixed at 3
  Matrix<GElt> gens;
};

inline SubspaceFamily make_family(int ambient_dim, int m, Matrix<GElt> gens) {
  if (gens.rows() != ambient_dim) throw ShapeMismatch("generator rows != ambient dim");
  for (int i = 0; i < gens.rows(); ++i)
    for (int j = 0; j < gens.cols(); ++j) {
      const GElt& e = gens(i, j);
      if (e.is_shaped() && (e.num_generators() != m || e.truncation() != 3))
        throw ShapeMismatch("entries must live in Lambda(eta_1..eta_m)/Lambda^{>=3}");
    }
  Matrix<Rational> s0(gens.rows(), gens.cols());
  for (int i = 0; i < gens.rows(); ++i)
    for (int j = 0; j < gens.cols(); ++j) s0(i, j) = gens(i, j).constant_term();
  if (rank_exact(s0) != gens.cols())
    throw DegenerateReduction("columns dependent mod nilpotents");
  return SubspaceFamily{ambient_dim, m, std::move(gens)};
}

/// Tangent data of the family at the reduced point.
///
/// domain_rows: ambient rows whose coordinates parametrize S0 (the
/// lexicographically first independent set — a subspace invariant, so the
/// recorded bases are reproducible and gauge-independent).
/// quotient_rows: the complementary ambient rows; their unit vectors are
/// the recorded basis of V/S0.
/// maps[i]: the eta_i component of the family as Hom(S0, V/S0) written in
/// those bases.
struct TangentMaps {
  std::vector<int> domain_rows, quotient_rows;
  std::vector<Matrix<Rational>> maps;
};

namespace detail {

struct FamilyFrame {
  std::vector<int> domain_rows, quotient_rows;
  Matrix<Rational> s0;        // degree-0 part, n x r
  Matrix<Rational> d0_inv;    // inverse of s0[domain_rows, :]
};

inline FamilyFrame family_frame(const SubspaceFamily& f) {
  int n = f.ambient_dim, r = f.gens.cols();
  FamilyFrame fr;
  fr.s0 = Matrix<Rational>(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) fr.s0(i, j) = f.gens(i, j).constant_term();
  // greedy first independent rows
  for (int i = 0; i < n && static_cast<int>(fr.domain_rows.size()) < r; ++i) {
    std::vector<int> cand = fr.domain_rows;
    cand.push_back(i);
    Matrix<Rational> sub(static_cast<int>(cand.size()), r);
    for (std::size_t a = 0; a < cand.size(); ++a)
      for (int j = 0; j < r; ++j) sub(static_cast<int>(a), j) = fr.s0(cand[a], j);
    if (rank_exact(sub) == static_cast<int>(cand.size())) fr.domain_rows = cand;
  }
  for (int i = 0; i < n; ++i) {
    bool in = false;
    for (int d : fr.domain_rows) in |= (d == i);
    if (!in) fr.quotient_rows.push_back(i);
  }
  Matrix<Rational> d0(r, r);
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < r; ++j) d0(a, j) = fr.s0(fr.domain_rows[a], j);
  fr.d0_inv = inv_ring(std::move(d0));
  return fr;
}

/// Projects the columns of c to V/S0 (coordinates on quotient_rows) and
/// rewrites the domain in the recorded S0 coordinates.
inline Matrix<Rational> project_to_quotient(const FamilyFrame& fr,
                                            const Matrix<Rational>& c) {
  int r = fr.s0.cols();
  Matrix<Rational> cpiv(r, c.cols());
  for (int a = 0; a < r; ++a)
    for (int j = 0; j < c.cols(); ++j) cpiv(a, j) = c(fr.domain_rows[a], j);
  Matrix<Rational> rest = c - fr.s0 * (fr.d0_inv * cpiv);
  Matrix<Rational> out(static_cast<int>(fr.quotient_rows.size()), c.cols());
  for (std::size_t q = 0; q < fr.quotient_rows.size(); ++q)
    for (int j = 0; j < c.cols(); ++j)
      out(static_cast<int>(q), j) = rest(fr.quotient_rows[q], j);
  return out * fr.d0_inv;
}

inline Matrix<Rational> degree_coeff(const SubspaceFamily& f, GElt::Mask mask) {
  Matrix<Rational> c(f.ambient_dim, f.gens.cols());
  for (int i = 0; i < f.ambient_dim; ++i)
    for (int j = 0; j < f.gens.cols(); ++j) c(i, j) = f.gens(i, j).coeff(mask);
  return c;
}

}  // namespace detail

inline TangentMaps tangent_map(const SubspaceFamily& f) {
  detail::FamilyFrame fr = detail::family_frame(f);
  TangentMaps t{fr.domain_rows, fr.quotient_rows, {}};
  for (int i = 0; i < f.m; ++i)
    t.maps.push_back(
        detail::project_to_quotient(fr, detail::degree_coeff(f, GElt::Mask(1) << i)));
  return t;
}

/// Second variation: the eta_i eta_j components of the projected family,
/// reduced modulo the tangent image. The quotient of Hom(S0, V/S0) by
/// { sum_i T_i A_i } is Hom(S0, (V/S0)/U) for U = span of all tangent
/// columns; class_rows records the chosen complement basis of (V/S0)/U
/// (indices into quotient_rows).
struct SecondVariation {
  TangentMaps tangent;
  std::vector<int> tangent_rows;            // pivot coordinates of U
  std::vector<int> class_rows;              // recorded complement of U
  std::vector<std::pair<int, int>> pairs;   // (i, j), i < j, lex order
  std::vector<Matrix<Rational>> raw;        // projected eta_i eta_j parts
  std::vector<Matrix<Rational>> classes;    // raw reduced to class_rows
};

inline SecondVariation second_variation(const SubspaceFamily& f) {
  detail::FamilyFrame fr = detail::family_frame(f);
  SecondVariation sv;
  sv.tangent = tangent_map(f);
  int nq = static_cast<int>(fr.quotient_rows.size());

  // RREF basis of U = span of tangent columns, pivot per row.
  std::vector<std::vector<Rational>> basis;  // reduced, unit at pivot row
  std::vector<int> pivots;
  auto reduce_vec = [&](std::vector<Rational> v) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Rational c = v[static_cast<std::size_t>(pivots[k])];
      if (c == 0) continue;
      for (int i = 0; i < nq; ++i) v[static_cast<std::size_t>(i)] -= c * basis[k][static_cast<std::size_t>(i)];
    }
    return v;
  };
  for (const auto& t : sv.tangent.maps)
    for (int j = 0; j < t.cols(); ++j) {
      std::vector<Rational> v(static_cast<std::size_t>(nq));
      for (int i = 0; i < nq; ++i) v[static_cast<std::size_t>(i)] = t(i, j);
      v = reduce_vec(std::move(v));
      int p = -1;
      for (int i = 0; i < nq; ++i)
        if (v[static_cast<std::size_t>(i)] != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      Rational inv = rat_inverse(v[static_cast<std::size_t>(p)]);
      for (int i = 0; i < nq; ++i) v[static_cast<std::size_t>(i)] *= inv;
      // keep earlier basis reduced against the new vector
      for (std::size_t k = 0; k < basis.size(); ++k) {
        Rational c = basis[k][static_cast<std::size_t>(p)];
        if (c == 0) continue;
        for (int i = 0; i < nq; ++i)
          basis[k][static_cast<std::size_t>(i)] -= c * v[static_cast<std::size_t>(i)];
      }
      basis.push_back(std::move(v));
      pivots.push_back(p);
    }
  sv.tangent_rows = pivots;
  for (int i = 0; i < nq; ++i) {
    bool piv = false;
    for (int p : pivots) piv |= (p == i);
    if (!piv) sv.class_rows.push_back(i);
  }

  int r = f.gens.cols();
  for (int i = 0; i < f.m; ++i)
    for (int j = i + 1; j < f.m; ++j) {
      GElt::Mask mask = (GElt::Mask(1) << i) | (GElt::Mask(1) << j);
      Matrix<Rational> w =
          detail::project_to_quotient(fr, detail::degree_coeff(f, mask));
      sv.pairs.emplace_back(i, j);
      sv.raw.push_back(w);
      Matrix<Rational> cls(static_cast<int>(sv.class_rows.size()), r);
      for (int col = 0; col < r; ++col) {
        std::vector<Rational> v(static_cast<std::size_t>(nq));
        for (int row = 0; row < nq; ++row) v[static_cast<std::size_t>(row)] = w(row, col);
        v = reduce_vec(std::move(v));
        for (std::size_t cr = 0; cr < sv.class_rows.size(); ++cr)
          cls(static_cast<int>(cr), col) = v[static_cast<std::size_t>(sv.class_rows[cr])];
      }
      sv.classes.push_back(std::move(cls));
    }
  return sv;
}

}  // namespace ssk
