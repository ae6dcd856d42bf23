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

#include "ssk/poly.hpp"

namespace ssk {

/// Element even + odd * x of the hyperelliptic function ring
/// Q(t)[x] / (x^2 - P(t)), P squarefree. The involution x -> -x negates the
/// odd part.
class CurveFun {
 public:
  CurveFun() = default;
  CurveFun(RatFun even, RatFun odd, Poly modulus)
      : even_(std::move(even)), odd_(std::move(odd)), mod_(std::move(modulus)) {
    if (!poly_is_squarefree(mod_))
      throw ModulusMismatch("modulus x^2 = P(t) must be squarefree");
  }

  static CurveFun constant(RatFun f, Poly modulus) {
    return CurveFun(std::move(f), RatFun(), std::move(modulus));
  }
  /// The function x itself.
  static CurveFun x(Poly modulus) {
    return CurveFun(RatFun(), RatFun(Poly(Rational(1))), std::move(modulus));
  }

  const RatFun& even_part() const { return even_; }
  const RatFun& odd_part() const { return odd_; }
  const Poly& modulus() const { return mod_; }
  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }

  /// Hyperelliptic involution x -> -x.
  CurveFun involution() const { return CurveFun(even_, -odd_, mod_, nocheck{}); }

  friend CurveFun operator+(const CurveFun& a, const CurveFun& b) {
    a.check(b);
    return CurveFun(a.even_ + b.even_, a.odd_ + b.odd_, a.mod_, nocheck{});
  }
  friend CurveFun operator-(const CurveFun& a, const CurveFun& b) {
    a.check(b);
    return CurveFun(a.even_ - b.even_, a.odd_ - b.odd_, a.mod_, nocheck{});
  }
  CurveFun operator-() const { return CurveFun(-even_, -odd_, mod_, nocheck{}); }
  friend bool operator==(const CurveFun& a, const CurveFun& b) {
    a.check(b);
    return a.even_ == b.even_ && a.odd_ == b.odd_;
  }
  friend bool operator!=(const CurveFun& a, const CurveFun& b) { return !(a == b); }

 private:
  struct nocheck {};
  CurveFun(RatFun even, RatFun odd, Poly modulus, nocheck)
      : even_(std::move(even)), odd_(std::move(odd)), mod_(std::move(modulus)) {}

  void check(const CurveFun& o) const {
    if (!(mod_ == o.mod_))
      throw ModulusMismatch("operands live on different curves");
  }

  friend CurveFun curvefun_mul(const CurveFun& a, const CurveFun& b);

  RatFun even_, odd_;
  Poly mod_;
};

/// Product reduced by x^2 = P(t).
inline CurveFun curvefun_mul(const CurveFun& a, const CurveFun& b) {
  a.check(b);
  RatFun p(a.mod_);
  RatFun even = a.even_ * b.even_ + a.odd_ * b.odd_ * p;
  RatFun odd = a.even_ * b.odd_ + a.odd_ * b.even_;
  return CurveFun(std::move(even), std::move(odd), a.mod_, CurveFun::nocheck{});
}

inline CurveFun operator*(const CurveFun& a, const CurveFun& b) {
  return curvefun_mul(a, b);
}

}  // namespace ssk
