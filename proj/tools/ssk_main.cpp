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

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ssk/cli_core.hpp"

namespace {

ssk::Json read_input(const std::string& path) {
  if (path.empty() || path == "-") return ssk::Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw ssk::InvalidSpec("cannot open input file '" + path + "'");
  return ssk::Json::parse(in);
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
  if (path.empty() || path == "-") return fn(std::cout);
  std::ofstream out(path);
  if (!out) throw ssk::InvalidSpec("cannot open output file '" + path + "'");
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact supercommutative algebra and hyperelliptic rank experiments"};
  app.require_subcommand(1);

  // schottky-rank sweep
  auto* sweep = app.add_subcommand("schottky-rank", "rank sweep over random configurations");
  std::string genus = "5,7,9,11,13";
  ssk::cli::ExperimentSpec spec;
  std::string sweep_output;
  sweep->add_option("--genus", genus, "genus list: '4,6,8' or '5..13:2'");
  sweep->add_option("--samples", spec.samples, "samples per genus");
  sweep->add_option("--seed", spec.seed, "random seed (recorded in the output)");
  sweep->add_option("--num-bound", spec.num_bound, "numerator bound of sampled rationals");
  sweep->add_option("--den-bound", spec.den_bound, "denominator bound");
  sweep->add_option("--h-mode", spec.h_mode, "'monomial' or 'random'");
  sweep->add_option("--output", sweep_output, "CSV output path ('-' = stdout)");

  // JSON-in/JSON-out commands
  struct JsonCmd {
    std::string name, help;
  };
  const std::vector<JsonCmd> json_cmds = {
      {"pfaffian", "Pfaffian (and optionally the Pfaffian adjugate) of a skew matrix"},
      {"berezinian", "Berezinian of a supermatrix"},
      {"massey", "Massey product section for a hyperelliptic configuration"},
      {"skew", "skew-symmetrized Massey operator and its rank"},
      {"compose", "compose superconformal coordinate maps"},
      {"factorize", "factor a superconformal map as S_f o T_phi"},
      {"second-variation", "tangent and second-variation data of a subspace family"},
  };
  std::string input_path, output_path;
  bool adjugate = false, flip_sign = false;
  std::string selected;
  for (const auto& c : json_cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--input", input_path, "JSON input ('-' = stdin)");
    sub->add_option("--output", output_path, "JSON output ('-' = stdout)");
    if (c.name == "pfaffian")
      sub->add_flag("--adjugate", adjugate, "include the Pfaffian adjugate");
    if (c.name == "massey")
      sub->add_flag("--flip-sign", flip_sign, "flip the global sign convention");
    sub->callback([&selected, name = c.name] { selected = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      spec.genus = ssk::cli::parse_genus_list(genus);
      return with_output(sweep_output,
                         [&](std::ostream& out) { return ssk::cli::run_schottky(spec, out); });
    }
    ssk::Json in = read_input(input_path);
    if (adjugate) in["adjugate"] = true;
    if (flip_sign) in["flip_sign"] = true;
    return with_output(output_path, [&](std::ostream& out) {
      return ssk::cli::run_json_command(selected, in, out, std::cerr);
    });
  } catch (const ssk::Error& e) {
    ssk::Json j{{"error", e.name()}, {"detail", e.what()}};
    std::cerr << j.dump(2) << "\n";
    return ssk::cli::kUsage;
  } catch (const ssk::Json::exception& e) {
    ssk::Json j{{"error", "BadInput"}, {"detail", e.what()}};
    std::cerr << j.dump(2) << "\n";
    return ssk::cli::kUsage;
  }
}
