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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ssk/hyperelliptic.hpp"
#include "ssk/serialize.hpp"

namespace ssk::cli {

/// Exit codes: 0 pass, 1 usage/IO error, 2 theorem-check mismatch.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;

struct ExperimentSpec {
  std::vector<int> genus;       // nonempty list
  int samples = 20;
  std::uint64_t seed = 1;
  long num_bound = 50;          // |numerator| bound of sampled rationals
  long den_bound = 8;           // denominator bound
  std::string h_mode = "monomial";  // "monomial" | "random"
};

/// Parses "4,6,8", "5..13" or "5..13:2".
std::vector<int> parse_genus_list(const std::string& text);

/// Deterministic per-row configuration sampling. Returns false (with a
/// reason) when the sampling box cannot produce distinct values.
bool sample_config(const ExperimentSpec& spec, int g, int sample_index,
                   HyperellipticConfig& cfg, std::vector<Poly>& hs,
                   std::string& reason);

/// The rank sweep: one CSV row per (genus, sample); byte-deterministic for
/// a fixed spec. Returns kMismatch if any computed rank differs from the
/// expected g-1 (odd g) or g-2 (even g).
int run_schottky(const ExperimentSpec& spec, std::ostream& out);

/// JSON-in / JSON-out subcommands: pfaffian, berezinian, massey, skew,
/// compose, factorize, second-variation. Writes a structured error object
/// to err and returns kUsage on invalid input.
int run_json_command(const std::string& command, const Json& input, std::ostream& out,
                     std::ostream& err);

}  // namespace ssk::cli
