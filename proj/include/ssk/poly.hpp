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

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ssk/rational.hpp"

namespace ssk {

/// Dense univariate polynomial over Rational in the variable t.
/// Canonical form: no trailing zero coefficient. The degree of the zero
/// polynomial is the distinguished marker kNegInf.
class Poly {
 public:
  static constexpr int kNegInf = std::numeric_limits<int>::min();

  Poly() = default;
  /* implicit */ Poly(const Rational& c) {
    if (c != 0) c_.push_back(c);
  }
  /* implicit */ Poly(long c) : Poly(Rational(c)) {}

  static Poly from_coeffs(std::vector<Rational> coeffs) {
    Poly p;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
  }

  /// The variable t.
  static Poly t() { return monomial(1); }

  static Poly monomial(int deg, const Rational& c = Rational(1)) {
    if (c == 0 || deg < 0) return Poly();
    Poly p;
    p.c_.assign(static_cast<std::size_t>(deg) + 1, Rational(0));
    p.c_.back() = c;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }

  Rational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational constant_term() const { return coeff(0); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      if (i < a.c_.size()) r.c_[i] += a.c_[i];
      if (i < b.c_.size()) r.c_[i] += b.c_[i];
    }
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  friend Poly operator*(const Rational& s, const Poly& a) {
    Poly r;
    if (s == 0) return r;
    r.c_ = a.c_;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend Poly operator*(const Poly& a, const Rational& s) { return s * a; }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;  // index = degree
};

/// Horner evaluation.
inline Rational poly_eval(const Poly& p, const Rational& t0) {
  Rational acc(0);
  for (int k = p.degree(); k >= 0; --k) acc = acc * t0 + p.coeff(k);
  return acc;
}

/// Formal derivative in t.
inline Poly poly_derivative(const Poly& p) {
  if (p.degree() < 1) return Poly();
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) c.push_back(Rational(k) * p.coeff(k));
  return Poly::from_coeffs(std::move(c));
}

/// Quotient and remainder: num = q * den + r with deg r < deg den.
inline std::pair<Poly, Poly> poly_divrem(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw NotInvertible("division by zero polynomial");
  Poly r = num;
  if (num.degree() < den.degree()) return {Poly(), r};
  std::vector<Rational> q(static_cast<std::size_t>(num.degree() - den.degree()) + 1,
                          Rational(0));
  Rational lead_inv = rat_inverse(den.leading());
  while (!r.is_zero() && r.degree() >= den.degree()) {
    int shift = r.degree() - den.degree();
    Rational f = r.leading() * lead_inv;
    q[static_cast<std::size_t>(shift)] = f;
    r = r - Poly::monomial(shift, f) * den;
  }
  return {Poly::from_coeffs(std::move(q)), r};
}

/// Exact quotient; a nonzero remainder raises NotDivisible (the signal used
/// by the Massey pipeline to report a regularity failure).
inline Poly poly_divexact(const Poly& num, const Poly& den) {
  auto [q, r] = poly_divrem(num, den);
  if (!r.is_zero()) throw NotDivisible("polynomial division leaves remainder");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divrem(a, b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return rat_inverse(a.leading()) * a;
}

inline bool poly_is_squarefree(const Poly& p) {
  if (p.degree() <= 0) return true;
  return poly_gcd(p, poly_derivative(p)).degree() == 0;
}

/// Product of the linear factors (t - roots[i]).
inline Poly poly_from_roots(const std::vector<Rational>& roots) {
  Poly p(Rational(1));
  for (const auto& r : roots) p *= Poly::from_coeffs({-r, Rational(1)});
  return p;
}

inline std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeff(k);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = (a == 1) && k > 0;
    if (!unit) out += rat_to_string(a);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

/// Rational function num/den. Canonical form: den monic, gcd(num, den) = 1.
class RatFun {
 public:
  RatFun() : num_(), den_(Rational(1)) {}
  /* implicit */ RatFun(Poly p) : num_(std::move(p)), den_(Rational(1)) {}
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }

  /// The underlying polynomial; throws NotDivisible if the denominator is
  /// not trivial.
  Poly as_poly() const {
    if (!is_poly()) throw NotDivisible("rational function is not polynomial");
    return num_;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  RatFun operator-() const { return RatFun(-num_, den_, nocheck{}); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw NotInvertible("division by zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

 private:
  struct nocheck {};
  RatFun(Poly num, Poly den, nocheck) : num_(std::move(num)), den_(std::move(den)) {}
  void reduce() {
    if (den_.is_zero()) throw NotInvertible("zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rational(1));
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
    Rational lead_inv = rat_inverse(den_.leading());
    num_ = lead_inv * num_;
    den_ = lead_inv * den_;
  }
  Poly num_, den_;
};

}  // namespace ssk
