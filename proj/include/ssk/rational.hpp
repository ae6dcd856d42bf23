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

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ssk/errors.hpp"

namespace ssk {

/// Exact rational scalar, the ground field of the whole library.
///
/// Backed by GMP's mpq_class: values are kept in lowest terms with positive
/// denominator (GMP arithmetic preserves canonical form; every construction
/// path below canonicalizes explicitly).
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw NotInvertible("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "n" or "n/d" with optional sign. Throws ParseError on junk.
inline Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') pos = 1;
  if (pos >= s.size()) throw ParseError("bad rational literal '" + s + "'");
  for (std::size_t i = pos; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' || (c >= '0' && c <= '9')) continue;
    throw ParseError("bad rational literal '" + s + "'");
  }
  try {
    Rational q(s);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

/// Canonical textual form: "n" when the value is integral, else "n/d".
inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

inline bool rat_is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational rat_inverse(const Rational& q) {
  if (q == 0) throw NotInvertible("1/0");
  return Rational(1) / q;
}

/// Deterministic 64-bit generator used everywhere randomness is needed.
/// std::uniform_int_distribution is implementation-defined, so sweeps that
/// must be byte-identical across toolchains derive values from raw draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool flip() { return (next() & 1u) != 0; }

 private:
  std::uint64_t state_;
};

/// Random rational with |numerator| <= num_bound, 1 <= denominator <= den_bound.
inline Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  long n = rng.range(-num_bound, num_bound);
  long d = rng.range(1, den_bound);
  return rat(n, d);
}

}  // namespace ssk
