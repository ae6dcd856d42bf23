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

#include <string>
#include <utility>
#include <vector>

#include "ssk/curvefun.hpp"
#include "ssk/matrix.hpp"
#include "ssk/poly.hpp"

namespace ssk {

/// Hyperelliptic curve data: x^2 = P(t) with branch values a_1..a_{2g+1}
/// (the remaining branch point sits at t = infinity) and the zeros b_1..
/// b_{g-1} of the reference differential G dt / x.
///
/// The implied theta-characteristic is O(p_1 + ... + p_g - p_0), so
/// F = (t - a_1)...(t - a_g).
///
/// Basis conventions: V+ is spanned by e_j^+ and V- by the rescaled
/// ehat_j^- = x_j e_j^-, which clears every square root x_j = x(q_j^+) from
/// the formulas; all matrices below are rational in these bases. Flipping
/// the choice of sheet q_j^+ flips the sign of ehat_j^-; ranks, spans and
/// products of paired entries do not see it.
struct HyperellipticConfig {
  int g = 0;
  std::vector<Rational> a;  // 2g+1 distinct branch values
  std::vector<Rational> b;  // g-1 distinct, disjoint from a
};

inline void validate_config(const HyperellipticConfig& cfg) {
  if (cfg.g < 3) throw InvalidSpec("genus must be >= 3");
  if (static_cast<int>(cfg.a.size()) != 2 * cfg.g + 1)
    throw InvalidSpec("need 2g+1 branch values");
  if (static_cast<int>(cfg.b.size()) != cfg.g - 1)
    throw InvalidSpec("need g-1 differential zeros");
  for (std::size_t i = 0; i < cfg.a.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.a.size(); ++j)
      if (cfg.a[i] == cfg.a[j])
        throw DuplicateBranch("branch value " + rat_to_string(cfg.a[i]) +
                              " repeats");
  for (std::size_t i = 0; i < cfg.b.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.b.size(); ++j)
      if (cfg.b[i] == cfg.b[j])
        throw DuplicateBranch("differential zero " + rat_to_string(cfg.b[i]) +
                              " repeats");
  for (const auto& bv : cfg.b)
    for (const auto& av : cfg.a)
      if (bv == av)
        throw ZeroCollision("value " + rat_to_string(bv) +
                            " is both a branch value and a differential zero");
}

inline Poly curve_modulus(const HyperellipticConfig& cfg) {
  return poly_from_roots(cfg.a);
}
inline Poly poly_F(const HyperellipticConfig& cfg) {
  return poly_from_roots(std::vector<Rational>(cfg.a.begin(), cfg.a.begin() + cfg.g));
}
inline Poly poly_G(const HyperellipticConfig& cfg) { return poly_from_roots(cfg.b); }

/// Monomial basis t^m dt/x, m = 0..g-1, of the holomorphic differentials;
/// the dt/x factor is implicit.
inline std::vector<Poly> omega_basis(const HyperellipticConfig& cfg) {
  validate_config(cfg);
  std::vector<Poly> basis;
  for (int m = 0; m < cfg.g; ++m) basis.push_back(Poly::monomial(m));
  return basis;
}

/// Quadratic relation sum_i f_i (x) g_i between holomorphic differentials:
/// sum f_i g_i = 0 identically, deg <= g-1 each.
struct QuadraticRelation {
  std::vector<std::pair<Poly, Poly>> pairs;
};

inline void validate_relation(const HyperellipticConfig& cfg,
                              const QuadraticRelation& xi) {
  Poly total;
  for (const auto& [f, g] : xi.pairs) {
    if (f.degree() > cfg.g - 1 || g.degree() > cfg.g - 1)
      throw DegreeTooHigh("relation factor exceeds degree g-1");
    total += f * g;
  }
  if (!total.is_zero())
    throw InvalidSpec("not a quadratic relation: sum f_i g_i != 0");
}

/// The deformable relation attached to a polynomial H of degree <= g-3:
/// H (x) H t^2 + H t^2 (x) H - 2 H t (x) H t.
inline QuadraticRelation relation_from_h(const HyperellipticConfig& cfg, const Poly& h) {
  if (h.degree() > cfg.g - 3) throw DegreeTooHigh("need deg H <= g-3");
  Poly t2 = Poly::monomial(2), t1 = Poly::monomial(1);
  QuadraticRelation xi;
  xi.pairs.emplace_back(h, h * t2);
  xi.pairs.emplace_back(h * t2, h);
  xi.pairs.emplace_back(Rational(-2) * (h * t1), h * t1);
  return xi;
}

/// Basis of the kernel of multiplication on the monomial differentials:
/// t^a (x) t^b - t^{a+1} (x) t^{b-1}, a = 0..g-2, b = 1..g-1.
inline std::vector<QuadraticRelation> relation_basis(const HyperellipticConfig& cfg) {
  std::vector<QuadraticRelation> basis;
  for (int a = 0; a + 1 <= cfg.g - 1; ++a)
    for (int b = 1; b <= cfg.g - 1; ++b) {
      QuadraticRelation xi;
      xi.pairs.emplace_back(Poly::monomial(a), Poly::monomial(b));
      xi.pairs.emplace_back(Rational(-1) * Poly::monomial(a + 1), Poly::monomial(b - 1));
      basis.push_back(std::move(xi));
    }
  return basis;
}

/// Section of omega (x) L written as (sym(t) + antisym(t) x / F) dt / x,
/// both parts of degree <= g-2.
struct OmegaLSection {
  Poly sym, antisym;
  friend bool operator==(const OmegaLSection& a, const OmegaLSection& b) {
    return a.sym == b.sym && a.antisym == b.antisym;
  }
};

/// Coordinates on H^1(L^{-1}) through the duality with H^0(L|_D):
/// plus_j on e_j^+ and minus_rescaled_j on ehat_j^- = x_j e_j^-.
struct ThetaCoord {
  std::vector<Rational> plus, minus_rescaled;
};

inline ThetaCoord zero_theta_coord(const HyperellipticConfig& cfg) {
  return ThetaCoord{std::vector<Rational>(cfg.g - 1, Rational(0)),
                    std::vector<Rational>(cfg.g - 1, Rational(0))};
}
inline ThetaCoord unit_plus(const HyperellipticConfig& cfg, int j) {
  ThetaCoord y = zero_theta_coord(cfg);
  y.plus[static_cast<std::size_t>(j)] = 1;
  return y;
}
inline ThetaCoord unit_minus(const HyperellipticConfig& cfg, int j) {
  ThetaCoord y = zero_theta_coord(cfg);
  y.minus_rescaled[static_cast<std::size_t>(j)] = 1;
  return y;
}

namespace hyp_detail {

struct Derived {
  Poly f, g, gprime;
  std::vector<Rational> fb, gpb;  // F(b_j), G'(b_j)
};

inline Derived derived(const HyperellipticConfig& cfg) {
  validate_config(cfg);
  Derived d;
  d.f = poly_F(cfg);
  d.g = poly_G(cfg);
  d.gprime = poly_derivative(d.g);
  for (const auto& bj : cfg.b) {
    d.fb.push_back(poly_eval(d.f, bj));
    d.gpb.push_back(poly_eval(d.gprime, bj));
  }
  return d;
}

/// sum_i f_i(b_j) g_i(t) divided exactly by (t - b_j); the division is
/// guaranteed for valid relations and its failure is the regularity signal.
inline Poly divided_sum(const HyperellipticConfig& cfg, const QuadraticRelation& xi,
                        int j) {
  Poly num;
  for (const auto& [f, g] : xi.pairs)
    num += poly_eval(f, cfg.b[static_cast<std::size_t>(j)]) * g;
  try {
    return poly_divexact(num, Poly::from_coeffs(
                                  {-cfg.b[static_cast<std::size_t>(j)], Rational(1)}));
  } catch (const NotDivisible&) {
    throw RegularityFail("numerator not divisible by (t - b_" + std::to_string(j + 1) +
                         ")");
  }
}

}  // namespace hyp_detail

/// Lagrange basis polynomial G_j = G / (G'(b_j)(t - b_j)), degree g-2,
/// with G_j(b_{j'}) = delta.
inline Poly lagrange_g(const HyperellipticConfig& cfg, int j) {
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  Poly lin = Poly::from_coeffs({-cfg.b[static_cast<std::size_t>(j)], Rational(1)});
  return rat_inverse(d.gpb[static_cast<std::size_t>(j)]) * poly_divexact(d.g, lin);
}

/// The Massey product section for y in the e^+/ehat^- coordinates and a
/// quadratic relation xi. Signs follow the displayed formulas (global
/// leading minus); flip_sign swaps the overall sign for cross-checks.
inline OmegaLSection massey_m3(const HyperellipticConfig& cfg, const ThetaCoord& y,
                               const QuadraticRelation& xi, bool flip_sign = false) {
  // The relation is deliberately not pre-validated here: for an invalid xi
  // (or degenerate configuration) the exact division below fails, and that
  // failure is the RegularityFail signal.
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  if (static_cast<int>(y.plus.size()) != cfg.g - 1 ||
      static_cast<int>(y.minus_rescaled.size()) != cfg.g - 1)
    throw InvalidSpec("theta coordinates have wrong length");
  Poly sym, anti;
  for (int j = 0; j < cfg.g - 1; ++j) {
    if (y.plus[static_cast<std::size_t>(j)] == 0 &&
        y.minus_rescaled[static_cast<std::size_t>(j)] == 0)
      continue;
    Poly sj = hyp_detail::divided_sum(cfg, xi, j);
    Rational inv_gp = rat_inverse(d.gpb[static_cast<std::size_t>(j)]);
    sym += (-y.plus[static_cast<std::size_t>(j)] * inv_gp) * sj;
    anti += (-y.minus_rescaled[static_cast<std::size_t>(j)] *
             d.fb[static_cast<std::size_t>(j)] * inv_gp) *
            sj;
  }
  if (flip_sign) return OmegaLSection{-sym, -anti};
  return OmegaLSection{std::move(sym), std::move(anti)};
}

/// Evaluation map: the V-coordinates of a section of omega (x) L.
inline ThetaCoord phi_alpha(const HyperellipticConfig& cfg, const OmegaLSection& s) {
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  ThetaCoord c = zero_theta_coord(cfg);
  for (int j = 0; j < cfg.g - 1; ++j) {
    c.plus[static_cast<std::size_t>(j)] =
        poly_eval(s.sym, cfg.b[static_cast<std::size_t>(j)]);
    c.minus_rescaled[static_cast<std::size_t>(j)] =
        poly_eval(s.antisym, cfg.b[static_cast<std::size_t>(j)]) /
        d.fb[static_cast<std::size_t>(j)];
  }
  return c;
}

/// Inverse of phi_alpha by Lagrange interpolation.
inline OmegaLSection phi_alpha_inv(const HyperellipticConfig& cfg, const ThetaCoord& c) {
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  Poly sym, anti;
  for (int j = 0; j < cfg.g - 1; ++j) {
    Poly gj = lagrange_g(cfg, j);
    sym += c.plus[static_cast<std::size_t>(j)] * gj;
    anti += (c.minus_rescaled[static_cast<std::size_t>(j)] *
             d.fb[static_cast<std::size_t>(j)]) *
            gj;
  }
  return OmegaLSection{std::move(sym), std::move(anti)};
}

/// The symmetric pairing on V restricted to the e^+/ehat^- bases:
/// <e_j^+, ehat_j^-> = 2 F(b_j) / G'(b_j), V^{+-} self-pairings zero.
inline std::vector<Rational> pairing_diagonal(const HyperellipticConfig& cfg) {
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  std::vector<Rational> diag;
  for (int j = 0; j < cfg.g - 1; ++j)
    diag.push_back(Rational(2) * d.fb[static_cast<std::size_t>(j)] /
                   d.gpb[static_cast<std::size_t>(j)]);
  return diag;
}

/// The same pairing as a (g-1)x(g-1) diagonal matrix on V+ x V-.
inline Matrix<Rational> pairing_matrix(const HyperellipticConfig& cfg) {
  std::vector<Rational> diag = pairing_diagonal(cfg);
  Matrix<Rational> m(cfg.g - 1, cfg.g - 1);
  for (int j = 0; j < cfg.g - 1; ++j) m(j, j) = diag[static_cast<std::size_t>(j)];
  return m;
}

inline Rational v_pairing(const HyperellipticConfig& cfg, const ThetaCoord& y,
                          const ThetaCoord& z) {
  std::vector<Rational> diag = pairing_diagonal(cfg);
  Rational acc(0);
  for (int j = 0; j < cfg.g - 1; ++j)
    acc += diag[static_cast<std::size_t>(j)] *
           (y.plus[static_cast<std::size_t>(j)] *
                z.minus_rescaled[static_cast<std::size_t>(j)] +
            y.minus_rescaled[static_cast<std::size_t>(j)] *
                z.plus[static_cast<std::size_t>(j)]);
  return acc;
}

/// The triple product m3(alpha_1, beta, alpha_2) of the factorization
/// formula: (phi^{-1}(y a1|_D) a2 - phi^{-1}(y a2|_D) a1) / alpha, computed
/// exactly; the divisions by G are the regularity mechanism.
inline OmegaLSection m3_triple(const HyperellipticConfig& cfg, const Poly& h1,
                               const ThetaCoord& y, const Poly& h2) {
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  auto scaled_coord = [&](const Poly& h) {
    ThetaCoord c = zero_theta_coord(cfg);
    for (int j = 0; j < cfg.g - 1; ++j) {
      Rational hb = poly_eval(h, cfg.b[static_cast<std::size_t>(j)]);
      c.plus[static_cast<std::size_t>(j)] = y.plus[static_cast<std::size_t>(j)] * hb;
      c.minus_rescaled[static_cast<std::size_t>(j)] =
          y.minus_rescaled[static_cast<std::size_t>(j)] * hb;
    }
    return c;
  };
  OmegaLSection u = phi_alpha_inv(cfg, scaled_coord(h1));
  OmegaLSection s = phi_alpha_inv(cfg, scaled_coord(h2));
  Poly num_sym = u.sym * h2 - s.sym * h1;
  Poly num_anti = u.antisym * h2 - s.antisym * h1;
  try {
    return OmegaLSection{poly_divexact(num_sym, d.g), poly_divexact(num_anti, d.g)};
  } catch (const NotDivisible&) {
    throw RegularityFail("triple product numerator not divisible by G");
  }
}

/// Matrices of A_xi = phi_alpha m3(phi_alpha-dual(?) (x) xi) restricted to
/// V^+ in the basis (e_j^+) and to V^- in the rescaled basis (ehat_j^-).
/// Column j holds the image of the j-th basis vector. The two diagonals
/// coincide.
inline std::pair<Matrix<Rational>, Matrix<Rational>> a_xi_matrix(
    const HyperellipticConfig& cfg, const QuadraticRelation& xi) {
  validate_relation(cfg, xi);
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  int n = cfg.g - 1;
  Matrix<Rational> aplus(n, n), aminus(n, n);
  for (int j = 0; j < n; ++j) {
    Rational inv_gp = rat_inverse(d.gpb[static_cast<std::size_t>(j)]);
    Rational diag(0);
    for (const auto& [f, g] : xi.pairs)
      diag += poly_eval(f, cfg.b[static_cast<std::size_t>(j)]) *
              poly_eval(poly_derivative(g), cfg.b[static_cast<std::size_t>(j)]);
    diag *= -inv_gp;
    aplus(j, j) = diag;
    aminus(j, j) = diag;
    for (int jp = 0; jp < n; ++jp) {
      if (jp == j) continue;
      Rational s(0);
      for (const auto& [f, g] : xi.pairs)
        s += poly_eval(f, cfg.b[static_cast<std::size_t>(j)]) *
             poly_eval(g, cfg.b[static_cast<std::size_t>(jp)]);
      Rational denom = d.gpb[static_cast<std::size_t>(j)] *
                       (cfg.b[static_cast<std::size_t>(jp)] -
                        cfg.b[static_cast<std::size_t>(j)]);
      aplus(jp, j) = -s / denom;
      aminus(jp, j) = -(d.fb[static_cast<std::size_t>(j)] /
                        d.fb[static_cast<std::size_t>(jp)]) *
                      s / denom;
    }
  }
  return {std::move(aplus), std::move(aminus)};
}

/// The skew-symmetrization (A_xi - A_xi^*)|_{V^-}, written from the basis
/// d_p = (x_p G'(b_p)/F(b_p)) e_p^- to d'_q = (x_p/F(b_p)) e_p^-, where all
/// the F, G' prefactors cancel:
///   entry(q, p) = sum_i [f_i(b_p) g_i(b_q) + g_i(b_p) f_i(b_q)] / (b_p - b_q).
inline Matrix<Rational> skew_part(const HyperellipticConfig& cfg,
                                  const QuadraticRelation& xi) {
  validate_relation(cfg, xi);
  int n = cfg.g - 1;
  Matrix<Rational> m(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      Rational s(0);
      for (const auto& [f, g] : xi.pairs)
        s += poly_eval(f, cfg.b[static_cast<std::size_t>(p)]) *
                 poly_eval(g, cfg.b[static_cast<std::size_t>(q)]) +
             poly_eval(g, cfg.b[static_cast<std::size_t>(p)]) *
                 poly_eval(f, cfg.b[static_cast<std::size_t>(q)]);
      m(q, p) = s / (cfg.b[static_cast<std::size_t>(p)] -
                     cfg.b[static_cast<std::size_t>(q)]);
    }
  return m;
}

/// Independent route to skew_part: Aminus - (adjoint of Aplus under the
/// pairing), conjugated into the d/d' bases. Tests assert equality with
/// the direct formula.
inline Matrix<Rational> skew_part_via_adjoint(const HyperellipticConfig& cfg,
                                              const QuadraticRelation& xi) {
  auto [aplus, aminus] = a_xi_matrix(cfg, xi);
  std::vector<Rational> pi = pairing_diagonal(cfg);
  hyp_detail::Derived d = hyp_detail::derived(cfg);
  int n = cfg.g - 1;
  // adjoint of Aplus on V^-: (pi_j / pi_i) Aplus(j, i)
  Matrix<Rational> skew_ehat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      skew_ehat(i, j) =
          aminus(i, j) - (pi[static_cast<std::size_t>(j)] /
                          pi[static_cast<std::size_t>(i)]) *
                             aplus(j, i);
  // d_p = (G'(b_p)/F(b_p)) ehat_p, d'_q = (1/F(b_q)) ehat_q
  Matrix<Rational> out(n, n);
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p)
      out(q, p) = d.fb[static_cast<std::size_t>(q)] * skew_ehat(q, p) *
                  d.gpb[static_cast<std::size_t>(p)] /
                  d.fb[static_cast<std::size_t>(p)];
  return out;
}

/// (A_xi - A_xi^*)|_{V^+} in the e^+ basis; its rank matches the V^- side.
inline Matrix<Rational> skew_part_plus(const HyperellipticConfig& cfg,
                                       const QuadraticRelation& xi) {
  auto [aplus, aminus] = a_xi_matrix(cfg, xi);
  std::vector<Rational> pi = pairing_diagonal(cfg);
  int n = cfg.g - 1;
  Matrix<Rational> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = aplus(i, j) - (pi[static_cast<std::size_t>(j)] /
                                 pi[static_cast<std::size_t>(i)]) *
                                    aminus(j, i);
  return out;
}

/// B-matrix of a degree <= g-3 polynomial H: entry(q, p) =
/// H(b_p) H(b_q) (b_p - b_q).
inline SkewMatrix<Rational> b_matrix(const HyperellipticConfig& cfg, const Poly& h) {
  validate_config(cfg);
  if (h.degree() > cfg.g - 3) throw DegreeTooHigh("need deg H <= g-3");
  int n = cfg.g - 1;
  std::vector<Rational> hb;
  for (const auto& bj : cfg.b) hb.push_back(poly_eval(h, bj));
  Matrix<Rational> m(n, n);
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p)
      m(q, p) = hb[static_cast<std::size_t>(p)] * hb[static_cast<std::size_t>(q)] *
                (cfg.b[static_cast<std::size_t>(p)] -
                 cfg.b[static_cast<std::size_t>(q)]);
  return SkewMatrix<Rational>(std::move(m));
}

/// The monomials 1, t^2, t^4, ... : (g-1)/2 of them for odd g (top degree
/// g-3), (g-2)/2 for even g (top degree g-4).
inline std::vector<Poly> monomial_h(int g) {
  if (g < 3) throw InvalidSpec("genus must be >= 3");
  int count = (g % 2 == 1) ? (g - 1) / 2 : (g - 2) / 2;
  std::vector<Poly> hs;
  for (int i = 0; i < count; ++i) hs.push_back(Poly::monomial(2 * i));
  return hs;
}

/// rank of sum_i B(H_i), exact.
inline int schottky_rank(const HyperellipticConfig& cfg, const std::vector<Poly>& hs) {
  validate_config(cfg);
  int n = cfg.g - 1;
  Matrix<Rational> sum(n, n);
  for (const auto& h : hs) sum = sum + b_matrix(cfg, h).matrix();
  return rank_exact(sum);
}

/// The assembled relation sum_i xi_{H_i}.
inline QuadraticRelation assemble_relation(const HyperellipticConfig& cfg,
                                           const std::vector<Poly>& hs) {
  QuadraticRelation xi;
  for (const auto& h : hs) {
    QuadraticRelation part = relation_from_h(cfg, h);
    for (auto& pr : part.pairs) xi.pairs.push_back(std::move(pr));
  }
  return xi;
}

}  // namespace ssk
