#include <doctest.h>

#include "ssk/second_variation.hpp"
#include "test_support.hpp"

using namespace ssk;
using namespace ssk::testing;

namespace {

GElt eta(int i, int m) { return GElt::eta(i, m, 3); }
GElt eta2(int i, int j, int m) { return GElt::eta(i, m, 3) * GElt::eta(j, m, 3); }

/// Random invertible gauge over the truncated ring (unit constant part,
/// arbitrary higher parts).
Matrix<GElt> random_gauge(Rng& rng, int r, int m) {
  for (;;) {
    Matrix<GElt> u(r, r);
    Matrix<Rational> red(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        GElt v = GElt(small_rat(rng)) + random_gelt(rng, m, 3, 2);
        u(i, j) = v;
        red(i, j) = v.constant_term();
      }
    if (rank_exact(red) == r) return u;
  }
}

}  // namespace

TEST_CASE("constant family has zero tangent") {
  int m = 2;
  Matrix<GElt> gens(3, 1);
  gens(0, 0) = GElt(Rational(1));
  SubspaceFamily f = make_family(3, m, gens);
  TangentMaps t = tangent_map(f);
  CHECK(t.maps.size() == 2);
  for (const auto& mp : t.maps) CHECK(mp == Matrix<Rational>(2, 1));
}

TEST_CASE("tangent of span(e1 + eta1 e2) in Q^2") {
  int m = 2;
  Matrix<GElt> gens(2, 1);
  gens(0, 0) = GElt(Rational(1));
  gens(1, 0) = eta(1, m);
  SubspaceFamily f = make_family(2, m, gens);
  TangentMaps t = tangent_map(f);
  CHECK(t.domain_rows == std::vector<int>{0});
  CHECK(t.quotient_rows == std::vector<int>{1});
  CHECK(t.maps[0](0, 0) == Rational(1));  // e1 -> e2-bar along eta1
  CHECK(t.maps[1](0, 0) == Rational(0));
}

TEST_CASE("gauge invariance of the tangent maps") {
  Rng rng(179);
  int m = 3, n = 5, r = 2;
  for (int it = 0; it < 20; ++it) {
    Matrix<GElt> gens(n, r);
    Matrix<Rational> s0 = random_rat_matrix(rng, n, r);
    while (rank_exact(s0) != r) s0 = random_rat_matrix(rng, n, r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        GElt v = random_gelt(rng, m, 3, 2);
        gens(i, j) = GElt(s0(i, j)) + v - GElt(v.constant_term());
      }
    SubspaceFamily f = make_family(n, m, gens);
    SubspaceFamily g = make_family(n, m, gens * random_gauge(rng, r, m));
    TangentMaps tf = tangent_map(f), tg = tangent_map(g);
    CHECK(tf.domain_rows == tg.domain_rows);
    for (int i = 0; i < m; ++i) CHECK(tf.maps[i] == tg.maps[i]);
  }
}

TEST_CASE("second variation of span(e1 + eta1 eta2 e2) in Q^2") {
  int m = 2;
  Matrix<GElt> gens(2, 1);
  gens(0, 0) = GElt(Rational(1));
  gens(1, 0) = eta2(1, 2, m);
  SecondVariation sv = second_variation(make_family(2, m, gens));
  CHECK(sv.tangent.maps[0] == Matrix<Rational>(1, 1));
  CHECK(sv.pairs == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(sv.classes[0](0, 0) == Rational(1));  // e1 -> e2-bar
}

TEST_CASE("purely degree-1 family has zero second variation") {
  int m = 2;
  Matrix<GElt> gens(2, 1);
  gens(0, 0) = GElt(Rational(1));
  gens(1, 0) = eta(1, m);
  SecondVariation sv = second_variation(make_family(2, m, gens));
  CHECK(sv.raw[0] == Matrix<Rational>(1, 1));
}

TEST_CASE("quotient by the tangent image in Q^3") {
  int m = 2;
  // span(e1 + eta1 e2 + eta1 eta2 e3)
  Matrix<GElt> gens(3, 1);
  gens(0, 0) = GElt(Rational(1));
  gens(1, 0) = eta(1, m);
  gens(2, 0) = eta2(1, 2, m);
  SecondVariation sv = second_variation(make_family(3, m, gens));
  // tangent along eta1 hits e2-bar; the class of d2 lives on e3-bar
  CHECK(sv.tangent_rows == std::vector<int>{0});
  CHECK(sv.class_rows == std::vector<int>{1});
  CHECK(sv.classes[0](0, 0) == Rational(1));  // e1 -> e3-bar mod tangent image
}

TEST_CASE("second variation class is gauge invariant") {
  Rng rng(181);
  int m = 3, n = 6, r = 2;
  for (int it = 0; it < 20; ++it) {
    Matrix<GElt> gens(n, r);
    Matrix<Rational> s0 = random_rat_matrix(rng, n, r);
    while (rank_exact(s0) != r) s0 = random_rat_matrix(rng, n, r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        GElt v = random_gelt(rng, m, 3, 3);
        gens(i, j) = GElt(s0(i, j)) + v - GElt(v.constant_term());
      }
    SubspaceFamily f = make_family(n, m, gens);
    SubspaceFamily g = make_family(n, m, gens * random_gauge(rng, r, m));
    SecondVariation sf = second_variation(f), sg = second_variation(g);
    CHECK(sf.class_rows == sg.class_rows);
    REQUIRE(sf.classes.size() == sg.classes.size());
    for (std::size_t i = 0; i < sf.classes.size(); ++i)
      CHECK(sf.classes[i] == sg.classes[i]);
  }
}

TEST_CASE("degenerate reductions are rejected") {
  Matrix<GElt> gens(2, 1);
  gens(0, 0) = eta(1, 2);  // zero mod nilpotents
  CHECK_THROWS_AS(make_family(2, 2, gens), DegenerateReduction);
  Matrix<GElt> wrong_ring(2, 1);
  wrong_ring(0, 0) = GElt::one(2, 4);  // truncation must be 3
  CHECK_THROWS_AS(make_family(2, 2, wrong_ring), ShapeMismatch);
}
