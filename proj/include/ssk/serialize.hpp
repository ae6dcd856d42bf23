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

#include <json.hpp>
#include <string>

#include "ssk/hyperelliptic.hpp"
#include "ssk/second_variation.hpp"
#include "ssk/superconformal.hpp"
#include "ssk/supermatrix.hpp"
#include "ssk/symplectic.hpp"

namespace ssk {

using Json = nlohmann::json;

// Scalars and polynomials. Polynomials serialize as arrays of "num/den"
// coefficient strings, lowest degree first.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

// Grassmann elements: {"m", "k", "terms": [{"indices": [1-based], "coeff"}]}.
Json to_json(const GElt& g);
GElt gelt_from_json(const Json& j);
Json to_json(const GPoly& g);
GPoly gpoly_from_json(const Json& j);

// Matrices: nested arrays.
Json to_json(const Matrix<Rational>& m);
Matrix<Rational> rat_matrix_from_json(const Json& j);
Json to_json(const Matrix<GElt>& m);
Matrix<GElt> gelt_matrix_from_json(const Json& j);

// Supermatrices: {"row_shape": [p, q], "col_shape": [r, s], "entries": ...}.
Json to_json(const SuperMatrix& m);
SuperMatrix supermatrix_from_json(const Json& j);

// Symplectic descriptors: {"shape", "gram", "m", "k"} / {"gshape", "generators"}.
Json to_json(const SympSpace& v);
SympSpace symp_space_from_json(const Json& j);
Json subspace_to_json(const IsotropicSub& l);
IsotropicSub subspace_from_json(const SympSpace& v, const Json& j);

// Hyperelliptic data.
Json to_json(const HyperellipticConfig& cfg);
HyperellipticConfig config_from_json(const Json& j);
Json to_json(const QuadraticRelation& xi);
QuadraticRelation relation_from_json(const Json& j);
Json to_json(const ThetaCoord& y);
ThetaCoord theta_coord_from_json(const Json& j);
Json to_json(const OmegaLSection& s);
OmegaLSection omega_l_from_json(const Json& j);

// Coordinate maps: images can be carrier objects or textual expressions.
Json to_json(const CoordFn& f);
CoordFn coordfn_from_json(const Json& j, int m, int k);
Json to_json(const SuperCoordMap& g);
SuperCoordMap coord_map_from_json(const Json& j);

// Subspace families.
Json to_json(const SubspaceFamily& f);
SubspaceFamily family_from_json(const Json& j);

// CSV export for rational matrices.
std::string to_csv(const Matrix<Rational>& m);

}  // namespace ssk
