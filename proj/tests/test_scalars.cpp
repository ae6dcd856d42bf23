#include <doctest.h>

#include "ssk/curvefun.hpp"
#include "ssk/poly.hpp"
#include "test_support.hpp"

using namespace ssk;
using namespace ssk::testing;

TEST_CASE("rational canonical form") {
  Rational q = rat(6, -4);
  CHECK(rat_to_string(q) == "-3/2");
  CHECK(q.get_den() == 2);
  CHECK(rat_from_string("3/6") == rat(1, 2));
  CHECK(rat_from_string("-7") == Rational(-7));
  CHECK_THROWS_AS(rat_from_string("1.5"), ParseError);
  CHECK_THROWS_AS(rat_from_string(""), ParseError);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational a = small_rat(rng), b = small_rat(rng);
    Rational s = a + b;
    // gmp keeps results canonical: gcd(num, den) = 1, den > 0
    CHECK(s.get_den() > 0);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    CHECK((s == 0 || g == 1));
  }
}

TEST_CASE("poly_eval") {
  Poly p = Poly::from_coeffs({Rational(-1), Rational(0), Rational(1)});  // t^2 - 1
  CHECK(poly_eval(p, Rational(2)) == Rational(3));
  CHECK(poly_eval(Poly(), Rational(5)) == Rational(0));
  Poly g = Poly::t() * (Poly::t() - Poly(Rational(1)));  // t(t-1)
  CHECK(poly_eval(g, Rational(0)) == Rational(0));
}

TEST_CASE("poly_derivative") {
  Poly g = Poly::t() * (Poly::t() - Poly(Rational(1)));
  CHECK(poly_derivative(g) ==
        Poly::from_coeffs({Rational(-1), Rational(2)}));  // 2t - 1
  CHECK(poly_derivative(Poly(Rational(7))) == Poly());
  CHECK(poly_derivative(Poly::monomial(3)) == Poly::monomial(2, Rational(3)));
}

TEST_CASE("poly_divexact") {
  Poly lin = Poly::t() - Poly(Rational(1));
  CHECK(poly_divexact(lin * lin, lin) == lin);
  Poly p = Poly::monomial(2) + Poly(Rational(1));
  CHECK_THROWS_AS(poly_divexact(p, Poly::t()), NotDivisible);
  CHECK(poly_divexact(Poly(), Poly::t() - Poly(Rational(3))) == Poly());
}

TEST_CASE("poly degree marker and canonical form") {
  CHECK(Poly().degree() == Poly::kNegInf);
  CHECK(Poly().is_zero());
  Poly p = Poly::from_coeffs({Rational(1), Rational(0), Rational(0)});
  CHECK(p.degree() == 0);  // trailing zeros trimmed
}

TEST_CASE("poly ring axioms, randomized") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    Poly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 5);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("divexact round-trip, randomized") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Poly q = random_poly(rng, 5);
    Poly d = random_nonzero_poly(rng, 4);
    CHECK(poly_divexact(q * d, d) == q);
  }
}

TEST_CASE("ratfun canonical form") {
  RatFun r(Poly::monomial(2) - Poly(Rational(1)),
           Poly::from_coeffs({Rational(-2), Rational(2)}));  // (t^2-1)/(2t-2)
  // reduces completely: (t+1)/2 with monic (trivial) denominator
  CHECK(r.den() == Poly(Rational(1)));
  CHECK(r.num() == Poly::from_coeffs({rat(1, 2), rat(1, 2)}));
  CHECK(r * RatFun(Poly(Rational(2))) == RatFun(Poly::t() + Poly(Rational(1))));

  Rng rng(29);
  for (int i = 0; i < 60; ++i) {
    RatFun a(random_poly(rng, 4), random_nonzero_poly(rng, 3));
    RatFun b(random_poly(rng, 4), random_nonzero_poly(rng, 3));
    RatFun c(random_poly(rng, 4), random_nonzero_poly(rng, 3));
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * b == b * a);
    CHECK(a.den().leading() == Rational(1));
    CHECK(poly_gcd(a.num(), a.den()).degree() <= 0);
  }
}

TEST_CASE("curvefun defining relation") {
  Poly mod = Poly::monomial(3) - Poly::t();  // t^3 - t
  CurveFun x = CurveFun::x(mod);
  CurveFun x2 = x * x;
  CHECK(x2.even_part() == RatFun(mod));
  CHECK(x2.odd_part().is_zero());

  CurveFun one = CurveFun::constant(RatFun(Poly(Rational(1))), mod);
  CurveFun f(RatFun(Poly::t()), RatFun(Poly(Rational(2))), mod);
  CHECK(one * f == f);
}

TEST_CASE("curvefun norm identity (a+bx)(a-bx) = a^2 - b^2 P") {
  Poly mod = Poly::monomial(3) - Poly::t();
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    RatFun a(random_poly(rng, 3), random_nonzero_poly(rng, 2));
    RatFun b(random_poly(rng, 3), random_nonzero_poly(rng, 2));
    CurveFun f(a, b, mod);
    CurveFun prod = f * f.involution();
    CHECK(prod.even_part() == a * a - b * b * RatFun(mod));
    CHECK(prod.odd_part().is_zero());
  }
}

TEST_CASE("curvefun modulus guards") {
  Poly mod1 = Poly::monomial(3) - Poly::t();
  Poly mod2 = Poly::monomial(3) - Poly(Rational(2)) * Poly::t();
  CurveFun a = CurveFun::x(mod1), b = CurveFun::x(mod2);
  CHECK_THROWS_AS(a * b, ModulusMismatch);
  // non-squarefree modulus rejected
  Poly sq = Poly::t() * Poly::t();
  CHECK_THROWS_AS(CurveFun::x(sq), ModulusMismatch);
}

TEST_CASE("curvefun ring axioms and involution, randomized") {
  Poly mod = poly_from_roots({Rational(0), Rational(1), Rational(2), Rational(3),
                              Rational(4), Rational(5), Rational(6)});
  Rng rng(37);
  for (int i = 0; i < 30; ++i) {
    auto rand_cf = [&] {
      return CurveFun(RatFun(random_poly(rng, 3)), RatFun(random_poly(rng, 3)), mod);
    };
    CurveFun a = rand_cf(), b = rand_cf(), c = rand_cf();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    // x -> -x is a ring automorphism
    CHECK((a * b).involution() == a.involution() * b.involution());
    CHECK((a + b).involution() == a.involution() + b.involution());
  }
}
