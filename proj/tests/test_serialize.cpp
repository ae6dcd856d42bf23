#include <doctest.h>

#include "ssk/expr_parse.hpp"
#include "ssk/serialize.hpp"
#include "test_support.hpp"

using namespace ssk;
using namespace ssk::testing;

namespace {

/// parse(serialize(x)) must be the identity; serialize(parse(j)) must be a
/// fixpoint of serialize.
template <class T, class ToJson, class FromJson>
void roundtrip(const T& value, ToJson&& to, FromJson&& from) {
  Json j = to(value);
  T back = from(j);
  CHECK(back == value);
  CHECK(to(back) == j);
}

}  // namespace

TEST_CASE("poly JSON round-trip") {
  Rng rng(233);
  for (int i = 0; i < 30; ++i) {
    Poly p = random_poly(rng, 6);
    roundtrip(p, [](const Poly& x) { return to_json(x); },
              [](const Json& j) { return poly_from_json(j); });
  }
  // coefficient strings, lowest degree first
  Poly p = Poly::from_coeffs({rat(1, 2), Rational(0), Rational(-3)});
  CHECK(to_json(p) == Json::array({"1/2", "0", "-3"}));
}

TEST_CASE("grassmann JSON round-trip") {
  Rng rng(239);
  for (int i = 0; i < 30; ++i) {
    GElt g = random_gelt(rng, 5, 6, 4);
    roundtrip(g, [](const GElt& x) { return to_json(x); },
              [](const Json& j) { return gelt_from_json(j); });
  }
  GElt e12 = GElt::eta(1, 3, 4) * GElt::eta(2, 3, 4);
  Json j = to_json(e12);
  CHECK(j.at("terms").at(0).at("indices") == Json::array({1, 2}));
}

TEST_CASE("supermatrix and symplectic JSON round-trips") {
  Rng rng(241);
  Matrix<GElt> grid(2, 2);
  grid(0, 0) = random_even(rng, 3, 4, 2);
  grid(1, 1) = random_even(rng, 3, 4, 2);
  grid(0, 1) = random_odd(rng, 3, 4, 2);
  grid(1, 0) = random_odd(rng, 3, 4, 2);
  SuperMatrix sm(SuperShape{1, 1}, SuperShape{1, 1}, grid);
  Json j = to_json(sm);
  SuperMatrix back = supermatrix_from_json(j);
  CHECK(back == sm);
  CHECK(to_json(back) == j);

  SympSpace v = darboux_space(1, 1, 3, 4);
  Json jv = to_json(v);
  SympSpace vback = symp_space_from_json(jv);
  CHECK(vback.gram == v.gram);
  CHECK(to_json(vback) == jv);
}

TEST_CASE("hyperelliptic JSON round-trips") {
  HyperellipticConfig cfg;
  cfg.g = 3;
  cfg.a = {Rational(2), Rational(3), Rational(4), Rational(5),
           Rational(6), Rational(7), Rational(8)};
  cfg.b = {Rational(0), Rational(1)};
  Json j = to_json(cfg);
  HyperellipticConfig back = config_from_json(j);
  CHECK(back.g == cfg.g);
  CHECK(back.a == cfg.a);
  CHECK(to_json(back) == j);

  QuadraticRelation xi;
  xi.pairs.emplace_back(Poly(Rational(1)), Poly::monomial(2));
  xi.pairs.emplace_back(Poly::monomial(2), Poly(Rational(1)));
  xi.pairs.emplace_back(Poly::monomial(1, Rational(-2)), Poly::monomial(1));
  roundtrip(xi.pairs[0].first, [](const Poly& x) { return to_json(x); },
            [](const Json& jj) { return poly_from_json(jj); });
  Json jxi = to_json(xi);
  QuadraticRelation xiback = relation_from_json(jxi);
  CHECK(to_json(xiback) == jxi);

  ThetaCoord y{{Rational(1), Rational(0)}, {rat(1, 2), Rational(-1)}};
  Json jy = to_json(y);
  ThetaCoord yback = theta_coord_from_json(jy);
  CHECK(yback.plus == y.plus);
  CHECK(yback.minus_rescaled == y.minus_rescaled);

  OmegaLSection s{Poly::t(), Poly()};
  Json js = to_json(s);
  CHECK(omega_l_from_json(js) == s);
}

TEST_CASE("coordinate expression grammar") {
  int m = 2, k = 3;
  CoordFn f = parse_coord_expr("z + theta*(eta1 + eta2*z)", m, k);
  CHECK(f.base() == GPoly::monomial(0u, Poly::t(), m, k));
  GPoly expect = GPoly::eta(1, m, k) + GPoly::monomial(0b10u, Poly::t(), m, k);
  CHECK(f.theta_coeff() == expect);

  // unicode aliases
  CoordFn g = parse_coord_expr("z + \xce\xb8*(\xce\xb7" "1 + \xce\xb7" "2*z)", m, k);
  CHECK(g == f);

  // rationals, powers, unary minus
  CoordFn h = parse_coord_expr("-3/2*z^2 + 1", m, k);
  CHECK(h.base() ==
        GPoly::monomial(0u, Poly::from_coeffs({Rational(1), Rational(0), rat(-3, 2)}),
                        m, k));

  CHECK_THROWS_AS(parse_coord_expr("eta9", m, k), ParseError);
  CHECK_THROWS_AS(parse_coord_expr("z +", m, k), ParseError);
  CHECK_THROWS_AS(parse_coord_expr("q", m, k), ParseError);
}

TEST_CASE("expression rendering parses back") {
  int m = 3, k = 4;
  Rng rng(251);
  for (int i = 0; i < 25; ++i) {
    // random carrier element: a(z) + theta b(z)
    GPoly a = GPoly::zero(m, k), b = GPoly::zero(m, k);
    for (int t = 0; t < 3; ++t) {
      GElt::Mask mask = static_cast<GElt::Mask>(rng.next() & ((1u << m) - 1));
      a += GPoly::monomial(mask, random_poly(rng, 2), m, k);
      GElt::Mask mask2 = static_cast<GElt::Mask>(rng.next() & ((1u << m) - 1));
      b += GPoly::monomial(mask2, random_poly(rng, 2), m, k);
    }
    CoordFn f(a, b);
    CoordFn back = parse_coord_expr(coordfn_to_string(f), m, k);
    CHECK(back == f);
  }
}

TEST_CASE("coordinate map JSON accepts textual and structured images") {
  Json j{{"m", 2},
         {"k", 3},
         {"degree_cap", 16},
         {"z_image", "z + theta*eta1"},
         {"theta_image", "theta + eta1"}};
  SuperCoordMap g = coord_map_from_json(j);
  CHECK(g.z_image.theta_coeff() == GPoly::eta(1, 2, 3));
  Json full = to_json(g);
  SuperCoordMap g2 = coord_map_from_json(full);
  CHECK(g2.z_image == g.z_image);
  CHECK(g2.theta_image == g.theta_image);
}

TEST_CASE("family JSON round-trip") {
  Matrix<GElt> gens(2, 1);
  gens(0, 0) = GElt(Rational(1));
  gens(1, 0) = GElt::eta(1, 2, 3);
  SubspaceFamily f = make_family(2, 2, gens);
  Json j = to_json(f);
  SubspaceFamily back = family_from_json(j);
  CHECK(back.gens == f.gens);
  CHECK(to_json(back) == j);
}

TEST_CASE("csv export") {
  Matrix<Rational> m(2, 2, {Rational(0), rat(1, 2), rat(-1, 2), Rational(0)});
  CHECK(to_csv(m) == "0,1/2\n-1/2,0\n");
}
