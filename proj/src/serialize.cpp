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

#include "ssk/serialize.hpp"

#include <bit>

#include "ssk/expr_parse.hpp"

namespace ssk {

namespace {

std::vector<int> mask_to_indices(GElt::Mask mask) {
  std::vector<int> idx;
  int i = 1;
  for (GElt::Mask rest = mask; rest; rest >>= 1, ++i)
    if (rest & 1u) idx.push_back(i);
  return idx;
}

GElt::Mask indices_to_mask(const Json& j) {
  GElt::Mask mask = 0;
  int prev = 0;
  for (const auto& e : j) {
    int i = e.get<int>();
    if (i <= prev) throw ParseError("indices must be strictly increasing");
    prev = i;
    mask |= GElt::Mask(1) << (i - 1);
  }
  return mask;
}

template <class C, class CoeffToJson>
Json grassmann_to_json(const Grassmann<C>& g, CoeffToJson&& coeff_to_json) {
  Json terms = Json::array();
  for (const auto& [mask, c] : g.terms())
    terms.push_back({{"indices", mask_to_indices(mask)}, {"coeff", coeff_to_json(c)}});
  return {{"m", g.num_generators()}, {"k", g.truncation()}, {"terms", terms}};
}

template <class C, class CoeffFromJson>
Grassmann<C> grassmann_from_json(const Json& j, CoeffFromJson&& coeff_from_json) {
  Grassmann<C> g(j.at("m").get<int>(), j.at("k").get<int>());
  for (const auto& t : j.at("terms"))
    g.set_term(indices_to_mask(t.at("indices")), coeff_from_json(t.at("coeff")));
  return g;
}

}  // namespace

Json to_json(const Rational& q) { return rat_to_string(q); }
Rational rational_from_json(const Json& j) { return rat_from_string(j.get<std::string>()); }

Json to_json(const Poly& p) {
  Json arr = Json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(rat_to_string(p.coeff(k)));
  return arr;
}
Poly poly_from_json(const Json& j) {
  std::vector<Rational> coeffs;
  for (const auto& e : j) coeffs.push_back(rat_from_string(e.get<std::string>()));
  return Poly::from_coeffs(std::move(coeffs));
}

Json to_json(const GElt& g) {
  return grassmann_to_json(g, [](const Rational& c) { return to_json(c); });
}
GElt gelt_from_json(const Json& j) {
  return grassmann_from_json<Rational>(j, [](const Json& c) {
    return rational_from_json(c);
  });
}

Json to_json(const GPoly& g) {
  return grassmann_to_json(g, [](const Poly& c) { return to_json(c); });
}
GPoly gpoly_from_json(const Json& j) {
  return grassmann_from_json<Poly>(j, [](const Json& c) { return poly_from_json(c); });
}

Json to_json(const Matrix<Rational>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}
Matrix<Rational> rat_matrix_from_json(const Json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  Matrix<Rational> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = rational_from_json(j.at(i).at(c));
  return m;
}

Json to_json(const Matrix<GElt>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}
Matrix<GElt> gelt_matrix_from_json(const Json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  Matrix<GElt> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = gelt_from_json(j.at(i).at(c));
  return m;
}

Json to_json(const SuperMatrix& m) {
  return {{"row_shape", {m.row_shape().even, m.row_shape().odd}},
          {"col_shape", {m.col_shape().even, m.col_shape().odd}},
          {"entries", to_json(m.entries())}};
}
SuperMatrix supermatrix_from_json(const Json& j) {
  SuperShape rs{j.at("row_shape").at(0).get<int>(), j.at("row_shape").at(1).get<int>()};
  SuperShape cs{j.at("col_shape").at(0).get<int>(), j.at("col_shape").at(1).get<int>()};
  return SuperMatrix(rs, cs, gelt_matrix_from_json(j.at("entries")));
}

Json to_json(const SympSpace& v) {
  return {{"shape", {v.shape.even, v.shape.odd}},
          {"gram", to_json(v.gram)},
          {"m", v.gm},
          {"k", v.gk}};
}
SympSpace symp_space_from_json(const Json& j) {
  SuperShape shape{j.at("shape").at(0).get<int>(), j.at("shape").at(1).get<int>()};
  return make_symp_space(shape, gelt_matrix_from_json(j.at("gram")), j.at("m").get<int>(),
                         j.at("k").get<int>());
}
Json subspace_to_json(const IsotropicSub& l) {
  return {{"gshape", {l.gens.col_shape().even, l.gens.col_shape().odd}},
          {"generators", to_json(l.gens.entries())}};
}
IsotropicSub subspace_from_json(const SympSpace& v, const Json& j) {
  SuperShape gshape{j.at("gshape").at(0).get<int>(), j.at("gshape").at(1).get<int>()};
  return make_subspace(v, gshape, gelt_matrix_from_json(j.at("generators")));
}

Json to_json(const HyperellipticConfig& cfg) {
  Json a = Json::array(), b = Json::array();
  for (const auto& x : cfg.a) a.push_back(rat_to_string(x));
  for (const auto& x : cfg.b) b.push_back(rat_to_string(x));
  return {{"g", cfg.g}, {"a", a}, {"b", b}};
}
HyperellipticConfig config_from_json(const Json& j) {
  HyperellipticConfig cfg;
  cfg.g = j.at("g").get<int>();
  for (const auto& e : j.at("a")) cfg.a.push_back(rat_from_string(e.get<std::string>()));
  for (const auto& e : j.at("b")) cfg.b.push_back(rat_from_string(e.get<std::string>()));
  validate_config(cfg);
  return cfg;
}

Json to_json(const QuadraticRelation& xi) {
  Json pairs = Json::array();
  for (const auto& [f, g] : xi.pairs) {
    // explicit array: brace-init would turn a pair of coefficient arrays
    // that start with a string into a JSON object
    Json pair = Json::array();
    pair.push_back(to_json(f));
    pair.push_back(to_json(g));
    pairs.push_back(std::move(pair));
  }
  return {{"pairs", pairs}};
}
QuadraticRelation relation_from_json(const Json& j) {
  QuadraticRelation xi;
  for (const auto& p : j.at("pairs"))
    xi.pairs.emplace_back(poly_from_json(p.at(0)), poly_from_json(p.at(1)));
  return xi;
}

Json to_json(const ThetaCoord& y) {
  Json plus = Json::array(), minus = Json::array();
  for (const auto& x : y.plus) plus.push_back(rat_to_string(x));
  for (const auto& x : y.minus_rescaled) minus.push_back(rat_to_string(x));
  return {{"plus", plus}, {"minus_rescaled", minus}};
}
ThetaCoord theta_coord_from_json(const Json& j) {
  ThetaCoord y;
  for (const auto& e : j.at("plus")) y.plus.push_back(rat_from_string(e.get<std::string>()));
  for (const auto& e : j.at("minus_rescaled"))
    y.minus_rescaled.push_back(rat_from_string(e.get<std::string>()));
  return y;
}

Json to_json(const OmegaLSection& s) {
  return {{"sym", to_json(s.sym)}, {"antisym", to_json(s.antisym)}};
}
OmegaLSection omega_l_from_json(const Json& j) {
  return OmegaLSection{poly_from_json(j.at("sym")), poly_from_json(j.at("antisym"))};
}

Json to_json(const CoordFn& f) {
  return {{"base", to_json(f.base())},
          {"theta", to_json(f.theta_coeff())},
          {"text", coordfn_to_string(f)}};
}
CoordFn coordfn_from_json(const Json& j, int m, int k) {
  if (j.is_string()) return parse_coord_expr(j.get<std::string>(), m, k);
  return CoordFn(gpoly_from_json(j.at("base")), gpoly_from_json(j.at("theta")));
}

Json to_json(const SuperCoordMap& g) {
  return {{"m", g.m},
          {"k", g.k},
          {"degree_cap", g.degree_cap},
          {"z_image", to_json(g.z_image)},
          {"theta_image", to_json(g.theta_image)}};
}
SuperCoordMap coord_map_from_json(const Json& j) {
  int m = j.at("m").get<int>(), k = j.at("k").get<int>();
  SuperCoordMap g{m, k, j.at("degree_cap").get<int>(),
                  coordfn_from_json(j.at("z_image"), m, k),
                  coordfn_from_json(j.at("theta_image"), m, k)};
  return g;
}

Json to_json(const SubspaceFamily& f) {
  return {{"ambient_dim", f.ambient_dim}, {"m", f.m}, {"generators", to_json(f.gens)}};
}
SubspaceFamily family_from_json(const Json& j) {
  return make_family(j.at("ambient_dim").get<int>(), j.at("m").get<int>(),
                     gelt_matrix_from_json(j.at("generators")));
}

std::string to_csv(const Matrix<Rational>& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += rat_to_string(m(i, j));
    }
    out += "\n";
  }
  return out;
}

}  // namespace ssk
