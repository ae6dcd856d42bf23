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

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssk/poly.hpp"
#include "ssk/rational.hpp"

namespace ssk {

/// Coefficient-ring hooks for Grassmann<C>. Specialized for Rational and
/// Poly; any commutative ring with these operations works.
template <class C>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& c) { return c == 0; }
  static std::optional<Rational> try_invert(const Rational& c) {
    if (c == 0) return std::nullopt;
    return Rational(1) / c;
  }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct RingTraits<Poly> {
  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Rational(1)); }
  static bool is_zero(const Poly& c) { return c.is_zero(); }
  static std::optional<Poly> try_invert(const Poly& c) {
    // Units of Q[t] are the nonzero constants.
    if (c.degree() != 0) return std::nullopt;
    return Poly(rat_inverse(c.constant_term()));
  }
  static Poly from_rational(const Rational& q) { return Poly(q); }
};

/// Element of the truncated exterior algebra Lambda(eta_1..eta_m) / Lambda^{>=k}
/// with coefficients in a commutative ring C.
///
/// SIGN CONVENTION (the single source of truth for Koszul signs in this
/// library): basis monomials are eta_S = eta_{i_1} ... eta_{i_r} with
/// i_1 < ... < i_r, stored as bitmasks. The product eta_S * eta_T for
/// disjoint S, T is (-1)^inv * eta_{S union T}, where inv is the number of
/// pairs (s, t) in S x T with t < s, i.e. the transposition count of the
/// sorting merge. Repeated indices annihilate. Everything else (parity
/// involution, inverses, square roots) is derived from this product.
///
/// Truncation: terms with |S| >= k are dropped; k = m + 1 means none are.
/// An element with m = kScalarShape is a "shapeless" scalar (only the empty
/// monomial may appear); it adopts the shape of the other operand in binary
/// operations, which is what lets Matrix<Grassmann<C>> default-construct
/// zeros and identities. Two explicitly shaped operands must agree on
/// (m, k) or ShapeMismatch is raised.
template <class C>
class Grassmann {
 public:
  static constexpr int kScalarShape = -1;
  using Mask = std::uint32_t;

  Grassmann() : m_(kScalarShape), k_(0) {}
  /* implicit */ Grassmann(const C& c) : m_(kScalarShape), k_(0) {
    if (!RingTraits<C>::is_zero(c)) terms_[0u] = c;
  }

  Grassmann(int m, int k) : m_(m), k_(k) {}

  static Grassmann scalar(const C& c) { return Grassmann(c); }
  static Grassmann zero(int m, int k) { return Grassmann(m, k); }
  static Grassmann one(int m, int k) {
    Grassmann g(m, k);
    g.terms_[0u] = RingTraits<C>::one();
    return g;
  }
  /// Generator eta_i, 1-based index.
  static Grassmann eta(int i, int m, int k) {
    Grassmann g(m, k);
    if (i < 1 || i > m) throw ShapeMismatch("generator index out of range");
    if (k > 1) g.terms_[Mask(1) << (i - 1)] = RingTraits<C>::one();
    return g;
  }
  static Grassmann monomial(Mask mask, const C& c, int m, int k) {
    Grassmann g(m, k);
    g.set_term(mask, c);
    return g;
  }

  int num_generators() const { return m_; }
  int truncation() const { return k_; }
  bool is_shaped() const { return m_ != kScalarShape; }
  const std::map<Mask, C>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  C coeff(Mask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? RingTraits<C>::zero() : it->second;
  }
  C constant_term() const { return coeff(0u); }

  /// True when every stored monomial has even (resp. odd) size. Zero counts
  /// as both.
  bool is_even() const {
    for (const auto& [mask, c] : terms_)
      if (std::popcount(mask) % 2 != 0) return false;
    return true;
  }
  bool is_odd() const {
    for (const auto& [mask, c] : terms_)
      if (std::popcount(mask) % 2 != 1) return false;
    return true;
  }

  /// Parity involution: negates odd-degree terms.
  Grassmann parity_involution() const {
    Grassmann g = *this;
    for (auto& [mask, c] : g.terms_)
      if (std::popcount(mask) % 2 == 1) c = neg(c);
    return g;
  }

  friend Grassmann operator+(const Grassmann& a, const Grassmann& b) {
    Grassmann r = promote(a, b);
    for (const auto& [mask, c] : a.terms_) r.add_term(mask, c);
    for (const auto& [mask, c] : b.terms_) r.add_term(mask, c);
    return r;
  }
  friend Grassmann operator-(const Grassmann& a, const Grassmann& b) {
    Grassmann r = promote(a, b);
    for (const auto& [mask, c] : a.terms_) r.add_term(mask, c);
    for (const auto& [mask, c] : b.terms_) r.add_term(mask, neg(c));
    return r;
  }
  Grassmann operator-() const {
    Grassmann r = *this;
    for (auto& [mask, c] : r.terms_) c = neg(c);
    return r;
  }

  friend Grassmann operator*(const Grassmann& a, const Grassmann& b) {
    Grassmann r = promote(a, b);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if ((ma & mb) != 0) continue;  // repeated generator
        Mask mu = ma | mb;
        if (r.k_ > 0 && std::popcount(mu) >= r.k_) continue;  // truncation
        C prod = ca * cb;
        if (merge_sign(ma, mb) < 0) prod = neg(prod);
        r.add_term(mu, prod);
      }
    }
    return r;
  }
  friend Grassmann operator*(const C& s, const Grassmann& a) {
    return Grassmann(s) * a;
  }
  friend Grassmann operator*(const Grassmann& a, const C& s) {
    return a * Grassmann(s);
  }
  Grassmann& operator+=(const Grassmann& o) { return *this = *this + o; }
  Grassmann& operator-=(const Grassmann& o) { return *this = *this - o; }
  Grassmann& operator*=(const Grassmann& o) { return *this = *this * o; }

  Grassmann scaled(const Rational& q) const {
    Grassmann r = *this;
    C s = RingTraits<C>::from_rational(q);
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
      it->second = it->second * s;
      if (RingTraits<C>::is_zero(it->second))
        it = r.terms_.erase(it);
      else
        ++it;
    }
    return r;
  }

  friend bool operator==(const Grassmann& a, const Grassmann& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Grassmann& a, const Grassmann& b) { return !(a == b); }

  /// Re-truncates to a smaller k (dropping high terms). Truncation is a ring
  /// homomorphism, which the tests assert.
  Grassmann truncated(int k) const {
    Grassmann g(m_, k);
    for (const auto& [mask, c] : terms_) g.set_term(mask, c);
    return g;
  }

  /// Applies f to every coefficient (e.g. Poly evaluation); f must be
  /// a ring map for the result to make sense.
  template <class D, class F>
  Grassmann<D> map_coeffs(F&& f, int m, int k) const {
    Grassmann<D> g(m, k);
    for (const auto& [mask, c] : terms_) g.set_term(mask, f(c));
    return g;
  }

  void set_term(Mask mask, const C& c) {
    if (m_ != kScalarShape && mask >= (Mask(1) << m_))
      throw ShapeMismatch("monomial uses generators beyond m");
    if (m_ == kScalarShape && mask != 0)
      throw ShapeMismatch("shapeless scalar cannot hold generators");
    if (k_ > 0 && std::popcount(mask) >= k_) return;
    if (RingTraits<C>::is_zero(c))
      terms_.erase(mask);
    else
      terms_[mask] = c;
  }

 private:
  static C neg(const C& c) { return RingTraits<C>::zero() - c; }

  static int merge_sign(Mask a, Mask b) {
    // (-1)^{#{(s,t) in a x b : t < s}}
    int inv = 0;
    for (Mask rest = a; rest; rest &= rest - 1) {
      Mask bit = rest & (~rest + 1);
      inv += std::popcount(b & (bit - 1));
    }
    return (inv % 2 == 0) ? 1 : -1;
  }

  static Grassmann promote(const Grassmann& a, const Grassmann& b) {
    if (a.is_shaped() && b.is_shaped()) {
      if (a.m_ != b.m_ || a.k_ != b.k_)
        throw ShapeMismatch("Grassmann operands have different (m, k)");
      return Grassmann(a.m_, a.k_);
    }
    const Grassmann& shaped = a.is_shaped() ? a : b;
    return Grassmann(shaped.m_, shaped.k_);
  }

  void add_term(Mask mask, const C& c) {
    if (RingTraits<C>::is_zero(c)) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
      set_term(mask, c);
    } else {
      it->second = it->second + c;
      if (RingTraits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  int m_, k_;
  std::map<Mask, C> terms_;
};

template <class C>
Grassmann<C> gr_mul(const Grassmann<C>& a, const Grassmann<C>& b) {
  return a * b;
}

/// a = even + odd split by monomial size parity.
template <class C>
std::pair<Grassmann<C>, Grassmann<C>> gr_parity_split(const Grassmann<C>& a) {
  Grassmann<C> even(a.num_generators(), a.truncation());
  Grassmann<C> odd(a.num_generators(), a.truncation());
  if (!a.is_shaped()) even = Grassmann<C>();
  for (const auto& [mask, c] : a.terms()) {
    if (std::popcount(mask) % 2 == 0)
      even.set_term(mask, c);
    else
      odd.set_term(mask, c);
  }
  return {even, odd};
}

/// Two-sided inverse by the finite geometric series in the nilpotent part.
template <class C>
Grassmann<C> gr_invert(const Grassmann<C>& a) {
  auto c0_inv = RingTraits<C>::try_invert(a.constant_term());
  if (!c0_inv) throw NotInvertible("constant term is not a unit");
  Grassmann<C> c0inv_elt =
      a.is_shaped() ? Grassmann<C>::monomial(0u, *c0_inv, a.num_generators(),
                                             a.truncation())
                    : Grassmann<C>(*c0_inv);
  // a = c0 (1 + u), u nilpotent; a^{-1} = (1 - u + u^2 - ...) c0^{-1}.
  Grassmann<C> u = a * c0inv_elt - one_like(a);
  Grassmann<C> inv = one_like(a);
  Grassmann<C> pow = u;
  int sign = -1;
  while (!pow.is_zero()) {
    inv = (sign > 0) ? inv + pow : inv - pow;
    pow = pow * u;
    sign = -sign;
  }
  return c0inv_elt * inv;
}

/// Square root of an element with constant term 1, by the terminating
/// binomial series.
template <class C>
Grassmann<C> gr_sqrt_unipotent(const Grassmann<C>& a) {
  Grassmann<C> one = one_like(a);
  if (!(a.constant_term() == RingTraits<C>::one()))
    throw NotUnipotent("constant term must be 1");
  Grassmann<C> u = a - one;
  Grassmann<C> acc = one;
  Grassmann<C> pow = u;
  Rational coef(1);
  int n = 1;
  while (!pow.is_zero()) {
    // binom(1/2, n) built incrementally
    coef *= Rational(3 - 2 * n) / Rational(2 * n);
    acc += pow.scaled(coef);
    pow = pow * u;
    ++n;
  }
  return acc;
}

/// Smallest odd-degree among the stored terms; nullopt is the infinity
/// marker for the zero element.
template <class C>
std::optional<int> nilpotent_order(const Grassmann<C>& a) {
  if (a.is_zero()) return std::nullopt;
  int best = 64;
  for (const auto& [mask, c] : a.terms())
    best = std::min(best, std::popcount(mask));
  return best;
}

template <class C>
Grassmann<C> one_like(const Grassmann<C>& a) {
  return a.is_shaped()
             ? Grassmann<C>::one(a.num_generators(), a.truncation())
             : Grassmann<C>(RingTraits<C>::one());
}

using GElt = Grassmann<Rational>;
using GPoly = Grassmann<Poly>;

}  // namespace ssk
