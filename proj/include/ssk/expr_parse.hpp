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

#include <string>

#include "ssk/superconformal.hpp"

namespace ssk {

/// Parses a coordinate expression in z, theta, eta1..etam into the carrier
/// ring. Grammar (EBNF):
///
///   expr    = term { ("+" | "-") term } ;
///   term    = factor { "*" factor } ;
///   factor  = atom [ "^" integer ] | "-" factor ;
///   atom    = rational | "z" | "theta" | "eta" integer | "(" expr ")" ;
///   rational = integer [ "/" integer ] ;
///
/// "θ" and "η<k>" are accepted as aliases for "theta" and "eta<k>".
CoordFn parse_coord_expr(const std::string& text, int m, int k);

/// Renders a carrier element in the same grammar.
std::string coordfn_to_string(const CoordFn& f);
std::string gpoly_to_string(const GPoly& g);

}  // namespace ssk
