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

#include "ssk/grassmann.hpp"

namespace ssk {

/// Function of local coordinates (z, theta): a(z) + theta * b(z), where
/// a, b live in R[z] for R = Lambda(eta_1..eta_m)/Lambda^{>=k}.
///
/// theta is odd: theta^2 = 0 and theta * x = sigma(x) * theta for the parity
/// involution sigma of R[z]. Products below keep coefficients in the
/// canonical position (right of theta), so
///   (a1 + th b1)(a2 + th b2) = a1 a2 + th (sigma(a1) b2 + b1 a2).
class CoordFn {
 public:
  CoordFn() = default;
  CoordFn(GPoly a, GPoly b) : a_(std::move(a)), b_(std::move(b)) {}
  /* implicit */ CoordFn(const GPoly& a) : a_(a) {}

  static CoordFn z(int m, int k) {
    return CoordFn(GPoly::monomial(0u, Poly::t(), m, k));
  }
  static CoordFn theta(int m, int k) {
    return CoordFn(GPoly::zero(m, k), GPoly::one(m, k));
  }
  static CoordFn eta(int i, int m, int k) { return CoordFn(GPoly::eta(i, m, k)); }
  static CoordFn zero(int m, int k) { return CoordFn(GPoly::zero(m, k)); }
  static CoordFn one(int m, int k) { return CoordFn(GPoly::one(m, k)); }

  const GPoly& base() const { return a_; }        // theta-free part
  const GPoly& theta_coeff() const { return b_; } // coefficient of theta

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  /// Overall parity: even iff a even and b odd (theta itself is odd).
  bool is_even() const { return a_.is_even() && b_.is_odd(); }
  bool is_odd() const { return a_.is_odd() && b_.is_even(); }

  friend CoordFn operator+(const CoordFn& x, const CoordFn& y) {
    return CoordFn(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend CoordFn operator-(const CoordFn& x, const CoordFn& y) {
    return CoordFn(x.a_ - y.a_, x.b_ - y.b_);
  }
  CoordFn operator-() const { return CoordFn(-a_, -b_); }
  friend CoordFn operator*(const CoordFn& x, const CoordFn& y) {
    return CoordFn(x.a_ * y.a_, x.a_.parity_involution() * y.b_ + x.b_ * y.a_);
  }
  CoordFn& operator+=(const CoordFn& o) { return *this = *this + o; }
  CoordFn& operator-=(const CoordFn& o) { return *this = *this - o; }
  friend bool operator==(const CoordFn& x, const CoordFn& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const CoordFn& x, const CoordFn& y) { return !(x == y); }

  /// d/dz on polynomial coefficients.
  CoordFn dz() const {
    auto d = [](const Poly& p) { return poly_derivative(p); };
    return CoordFn(a_.map_coeffs<Poly>(d, a_.num_generators(), a_.truncation()),
                   b_.map_coeffs<Poly>(d, b_.num_generators(), b_.truncation()));
  }
  /// Left derivative in theta.
  CoordFn dtheta() const {
    return CoordFn(b_, GPoly::zero(b_.num_generators(), b_.truncation()));
  }

  int z_degree() const {
    int deg = Poly::kNegInf;
    for (const auto& [mask, p] : a_.terms()) deg = std::max(deg, p.degree());
    for (const auto& [mask, p] : b_.terms()) deg = std::max(deg, p.degree());
    return deg;
  }

  /// Substitution (z, theta) -> (Z, Theta). Z must be even and Theta odd.
  CoordFn subst(const CoordFn& Z, const CoordFn& Th) const {
    CoordFn res = subst_z(a_, Z);
    if (!b_.is_zero()) res += Th * subst_z(b_, Z);
    return res;
  }

 private:
  static CoordFn subst_z(const GPoly& g, const CoordFn& Z) {
    int m = Z.a_.num_generators(), k = Z.a_.truncation();
    CoordFn acc = CoordFn::zero(m, k);
    for (const auto& [mask, poly] : g.terms()) {
      // Horner in the CoordFn ring, coefficient kept left of eta_mask.
      CoordFn h = CoordFn::zero(m, k);
      for (int d = poly.degree(); d >= 0; --d) {
        h = h * Z;
        h += CoordFn(GPoly::monomial(0u, Poly(poly.coeff(d)), m, k));
      }
      acc += h * CoordFn(GPoly::monomial(mask, Poly(Rational(1)), m, k));
    }
    return acc;
  }

  GPoly a_, b_;
};

/// Local superconformal coordinate transformation, stored through its
/// pullbacks of z and theta. Only maps reducing to the identity mod
/// nilpotents are admitted. Compositions whose polynomial degree exceeds
/// degree_cap raise DegreeOverflow instead of truncating.
struct SuperCoordMap {
  int m = 0, k = 0, degree_cap = 0;
  CoordFn z_image, theta_image;
};

namespace detail {

inline void validate_map(const SuperCoordMap& g) {
  if (!g.z_image.is_even()) throw NotEven("z image must be even");
  if (!g.theta_image.is_odd()) throw NotOdd("theta image must be odd");
  // reduction mod nilpotents must be the identity (z, theta)
  if (!(g.z_image.base().constant_term() == Poly::t()))
    throw NotSuperconformal("map does not reduce to identity on z");
  if (!(g.theta_image.theta_coeff().constant_term() == Poly(Rational(1))) ||
      !(g.theta_image.base().constant_term() == Poly()))
    throw NotSuperconformal("map does not reduce to identity on theta");
  if (g.z_image.z_degree() > g.degree_cap || g.theta_image.z_degree() > g.degree_cap)
    throw DegreeOverflow("coordinate image exceeds the degree cap");
}

}  // namespace detail

inline SuperCoordMap identity_map(int m, int k, int cap) {
  return SuperCoordMap{m, k, cap, CoordFn::z(m, k), CoordFn::theta(m, k)};
}

/// S_f: z -> f(z), theta -> sqrt(f'(z)) theta, for even f = z + nilpotent.
inline SuperCoordMap make_S(const GPoly& f, int cap) {
  int m = f.num_generators(), k = f.truncation();
  if (!f.is_even()) throw NotEven("f must be even");
  if (!(f.constant_term() == Poly::t()))
    throw NotUnipotentDerivative("f must reduce to z mod nilpotents");
  GPoly fp = f.map_coeffs<Poly>([](const Poly& p) { return poly_derivative(p); }, m, k);
  if (!(fp.constant_term() == Poly(Rational(1))))
    throw NotUnipotentDerivative("f' must be 1 + nilpotent");
  GPoly root = gr_sqrt_unipotent(fp);
  SuperCoordMap g{m, k, cap, CoordFn(f), CoordFn(GPoly::zero(m, k), root)};
  detail::validate_map(g);
  return g;
}

/// T_phi: z -> z + theta phi(z),
///        theta -> theta + phi(z) + (1/2) theta phi(z) phi'(z), phi odd.
inline SuperCoordMap make_T(const GPoly& phi, int cap) {
  int m = phi.num_generators(), k = phi.truncation();
  if (m < 0) throw NotOdd("phi must carry Grassmann shape");
  if (!phi.is_odd()) throw NotOdd("phi must be odd");
  GPoly phip =
      phi.map_coeffs<Poly>([](const Poly& p) { return poly_derivative(p); }, m, k);
  GPoly half_qq = (phi * phip).scaled(Rational(1, 2));
  SuperCoordMap g{m, k, cap, CoordFn(GPoly::monomial(0u, Poly::t(), m, k), phi),
                  CoordFn(phi, GPoly::one(m, k) + half_qq)};
  detail::validate_map(g);
  return g;
}

/// Composition g after h: pullbacks satisfy (g o h)^* = h^* o g^*, so the
/// stored images are g's images evaluated on h's images.
inline SuperCoordMap compose(const SuperCoordMap& g, const SuperCoordMap& h) {
  if (g.m != h.m || g.k != h.k) throw ShapeMismatch("maps over different rings");
  SuperCoordMap r{g.m, g.k, std::min(g.degree_cap, h.degree_cap),
                  g.z_image.subst(h.z_image, h.theta_image),
                  g.theta_image.subst(h.z_image, h.theta_image)};
  detail::validate_map(r);  // raises DegreeOverflow past the cap
  return r;
}

struct PullbackForm {
  CoordFn lambda;  // coefficient on dz in g^*(dz - theta dtheta)
  CoordFn mu;      // obstruction: zero iff proportional
  bool ok = false;
};

/// Computes g^*(dz - theta dtheta) in the convention dF = dz dF/dz +
/// dtheta dF/dtheta (left theta-derivative, coefficients right of the
/// symbols, dz odd, dtheta even). Proportionality to dz - theta dtheta
/// means mu = E_dtheta + E_dz theta = 0, and then lambda = E_dz.
inline PullbackForm pullback_form(const SuperCoordMap& g) {
  const CoordFn& Z = g.z_image;
  const CoordFn& Th = g.theta_image;
  CoordFn e_dz = Z.dz() + Th * Th.dz();
  CoordFn e_dth = Z.dtheta() - Th * Th.dtheta();
  CoordFn theta = CoordFn::theta(g.m, g.k);
  CoordFn mu = e_dth + e_dz * theta;
  bool ok = mu.is_zero();
  return PullbackForm{std::move(e_dz), std::move(mu), ok};
}

/// The classical closed form lambda = g0' + h0 h0' + 2 theta h0 h1' for
/// the proportionality factor. Returned separately so callers can compare
/// it with the independently computed pullback factor: the theta-free
/// parts always agree; a discrepancy in the theta part is flagged by the
/// diagnostics, not treated as failure.
inline CoordFn lambda_reference_form(const SuperCoordMap& g) {
  int m = g.m, k = g.k;
  GPoly g0 = g.z_image.base();
  GPoly h0 = g.theta_image.base();
  GPoly h1 = g.theta_image.theta_coeff();
  auto ddz = [&](const GPoly& x) {
    return x.map_coeffs<Poly>([](const Poly& p) { return poly_derivative(p); }, m, k);
  };
  GPoly base = ddz(g0) + h0 * ddz(h0);
  GPoly th = (h0 * ddz(h1)).scaled(Rational(2));
  return CoordFn(base, th);
}

/// Unique factorization g = S_f o T_phi; round-trips exactly or raises
/// NotSuperconformal.
inline std::pair<GPoly, GPoly> factorize(const SuperCoordMap& g) {
  detail::validate_map(g);
  if (!pullback_form(g).ok)
    throw NotSuperconformal("pullback of dz - theta dtheta is not proportional");
  GPoly f = g.z_image.base();       // g0
  GPoly g1 = g.z_image.theta_coeff();
  int m = g.m, k = g.k;
  GPoly fp = f.map_coeffs<Poly>([](const Poly& p) { return poly_derivative(p); }, m, k);
  GPoly phi = gr_invert(fp) * g1;
  SuperCoordMap rebuilt = compose(make_S(f, g.degree_cap), make_T(phi, g.degree_cap));
  if (!(rebuilt.z_image == g.z_image) || !(rebuilt.theta_image == g.theta_image))
    throw NotSuperconformal("map is not S_f o T_phi for any (f, phi)");
  return {std::move(f), std::move(phi)};
}

/// The bilinear form w on the local coordinate model of sections of the
/// inverse theta-characteristic: w(f, g) = f' g - f g'.
inline Poly w_form(const Poly& f, const Poly& g) {
  return poly_derivative(f) * g - f * poly_derivative(g);
}

}  // namespace ssk
