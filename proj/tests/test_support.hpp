// Shared generators for the property-style tests. Everything is seeded;
// reruns are deterministic.
#pragma once

#include "ssk/grassmann.hpp"
#include "ssk/matrix.hpp"
#include "ssk/rational.hpp"

namespace ssk::testing {

inline Rational small_rat(Rng& rng) { return random_rational(rng, 9, 4); }

inline Poly random_poly(Rng& rng, int max_deg, long num_bound = 9, long den_bound = 3) {
  std::vector<Rational> c;
  int deg = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg + 1)));
  for (int i = 0; i <= deg; ++i) c.push_back(random_rational(rng, num_bound, den_bound));
  return Poly::from_coeffs(std::move(c));
}

inline Poly random_nonzero_poly(Rng& rng, int max_deg) {
  for (;;) {
    Poly p = random_poly(rng, max_deg);
    if (!p.is_zero()) return p;
  }
}

/// Random Grassmann element with rational coefficients; roughly `terms`
/// monomials.
inline GElt random_gelt(Rng& rng, int m, int k, int terms) {
  GElt g(m, k);
  for (int t = 0; t < terms; ++t) {
    GElt::Mask mask =
        static_cast<GElt::Mask>(rng.next() & ((GElt::Mask(1) << m) - 1));
    g.set_term(mask, g.coeff(mask) + small_rat(rng));
  }
  return g;
}

inline GElt random_homogeneous(Rng& rng, int m, int k, int parity, int terms) {
  GElt g(m, k);
  for (int t = 0; t < terms; ++t) {
    GElt::Mask mask =
        static_cast<GElt::Mask>(rng.next() & ((GElt::Mask(1) << m) - 1));
    if (std::popcount(mask) % 2 != parity) continue;
    g.set_term(mask, g.coeff(mask) + small_rat(rng));
  }
  return g;
}

inline GElt random_even(Rng& rng, int m, int k, int terms = 4) {
  return random_homogeneous(rng, m, k, 0, terms);
}
inline GElt random_odd(Rng& rng, int m, int k, int terms = 4) {
  return random_homogeneous(rng, m, k, 1, terms);
}

inline Matrix<Rational> random_rat_matrix(Rng& rng, int rows, int cols) {
  Matrix<Rational> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = small_rat(rng);
  return m;
}

inline Matrix<Rational> random_invertible_rat(Rng& rng, int n) {
  for (;;) {
    Matrix<Rational> m = random_rat_matrix(rng, n, n);
    if (rank_exact(m) == n) return m;
  }
}

inline Matrix<Rational> random_skew_rat(Rng& rng, int n) {
  Matrix<Rational> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational v = small_rat(rng);
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

/// Skew matrix with even Grassmann entries (nonzero constant parts mixed
/// with nilpotent ones).
inline Matrix<GElt> random_skew_gelt(Rng& rng, int n, int m, int k) {
  Matrix<GElt> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      GElt v = random_even(rng, m, k, 3);
      g(i, j) = v;
      g(j, i) = -v;
    }
  for (int i = 0; i < n; ++i) g(i, i) = GElt::zero(m, k);
  return g;
}

/// Even-entry square matrix, invertible mod nilpotents.
inline Matrix<GElt> random_invertible_even(Rng& rng, int n, int m, int k) {
  for (;;) {
    Matrix<GElt> g(n, n);
    Matrix<Rational> red(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        GElt v = random_even(rng, m, k, 3);
        red(i, j) = v.constant_term();
        g(i, j) = v;
      }
    if (rank_exact(red) == n) return g;
  }
}

}  // namespace ssk::testing
