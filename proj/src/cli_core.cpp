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

#include "ssk/cli_core.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "ssk/expr_parse.hpp"

namespace ssk::cli {

std::vector<int> parse_genus_list(const std::string& text) {
  std::vector<int> out;
  auto parse_int = [](const std::string& s) {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw InvalidSpec("bad genus token '" + s + "'");
    return v;
  };
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    int lo = parse_int(item.substr(0, dots));
    std::string rest = item.substr(dots + 2);
    int step = 1;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = parse_int(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    int hi = parse_int(rest);
    if (step <= 0 || hi < lo) throw InvalidSpec("bad genus range '" + item + "'");
    for (int g = lo; g <= hi; g += step) out.push_back(g);
  }
  if (out.empty()) throw InvalidSpec("empty genus list");
  for (int g : out)
    if (g < 3) throw InvalidSpec("genus must be >= 3");
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  // one splitmix64 round over the combination
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

bool sample_config(const ExperimentSpec& spec, int g, int sample_index,
                   HyperellipticConfig& cfg, std::vector<Poly>& hs,
                   std::string& reason) {
  Rng rng(mix(spec.seed, mix(static_cast<std::uint64_t>(g),
                             static_cast<std::uint64_t>(sample_index))));
  cfg = HyperellipticConfig{};
  cfg.g = g;
  // distinct b values from the sampling box, by rejection
  const int kMaxTries = 200;
  for (int j = 0; j < g - 1; ++j) {
    bool placed = false;
    for (int tries = 0; tries < kMaxTries && !placed; ++tries) {
      Rational cand = random_rational(rng, spec.num_bound, spec.den_bound);
      bool clash = false;
      for (const auto& prev : cfg.b) clash |= (prev == cand);
      if (!clash) {
        cfg.b.push_back(cand);
        placed = true;
      }
    }
    if (!placed) {
      reason = "b-collision: sampling box too small for " + std::to_string(g - 1) +
               " distinct values";
      return false;
    }
  }
  // branch values: ascending integers skipping the b values
  for (long v = 0; static_cast<int>(cfg.a.size()) < 2 * g + 1; ++v) {
    Rational cand(v);
    bool clash = false;
    for (const auto& bv : cfg.b) clash |= (bv == cand);
    if (!clash) cfg.a.push_back(cand);
  }
  validate_config(cfg);

  if (spec.h_mode == "monomial") {
    hs = monomial_h(g);
  } else if (spec.h_mode == "random") {
    hs.clear();
    int count = static_cast<int>(monomial_h(g).size());
    for (int i = 0; i < count; ++i) {
      std::vector<Rational> coeffs;
      for (int d = 0; d <= g - 3; ++d)
        coeffs.push_back(random_rational(rng, spec.num_bound, spec.den_bound));
      Poly h = Poly::from_coeffs(std::move(coeffs));
      if (h.is_zero()) h = Poly(Rational(1));
      hs.push_back(std::move(h));
    }
  } else {
    throw InvalidSpec("h-mode must be 'monomial' or 'random'");
  }
  return true;
}

int run_schottky(const ExperimentSpec& spec, std::ostream& out) {
  if (spec.samples <= 0) throw InvalidSpec("samples must be positive");
  if (spec.num_bound < 1 || spec.den_bound < 1)
    throw InvalidSpec("sampling bounds must be positive");

  struct Row {
    int g = 0, index = 0, rank = -1, expected = 0;
    std::string match, note;
  };
  std::vector<std::pair<int, int>> jobs;
  for (int g : spec.genus)
    for (int s = 0; s < spec.samples; ++s) jobs.emplace_back(g, s);

  std::vector<Row> rows(jobs.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto [g, idx] = jobs[i];
      Row r;
      r.g = g;
      r.index = idx;
      r.expected = (g % 2 == 1) ? g - 1 : g - 2;
      HyperellipticConfig cfg;
      std::vector<Poly> hs;
      std::string reason;
      if (!sample_config(spec, g, idx, cfg, hs, reason)) {
        r.match = "skip";
        r.note = reason;
      } else {
        r.rank = schottky_rank(cfg, hs);
        r.match = (r.rank == r.expected) ? "yes" : "no";
      }
      rows[i] = std::move(r);
    }
  };
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  std::vector<std::future<void>> futs;
  std::size_t chunk = (jobs.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(jobs.size(), lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, work, lo, hi));
  }
  for (auto& f : futs) f.get();

  out << "# ssk schottky-rank sweep\n";
  out << "# seed=" << spec.seed << " samples=" << spec.samples
      << " num_bound=" << spec.num_bound << " den_bound=" << spec.den_bound
      << " h_mode=" << spec.h_mode << "\n";
  out << "g,seed_index,rank,expected,match\n";
  int pass = 0, fail = 0, skip = 0;
  for (const auto& r : rows) {
    if (!r.note.empty()) out << "# row skipped: " << r.note << "\n";
    out << r.g << "," << r.index << ",";
    if (r.rank >= 0) out << r.rank;
    out << "," << r.expected << "," << r.match << "\n";
    if (r.match == "yes")
      ++pass;
    else if (r.match == "no")
      ++fail;
    else
      ++skip;
  }
  out << "# summary pass=" << pass << " fail=" << fail << " skip=" << skip << "\n";
  return fail == 0 ? kOk : kMismatch;
}

namespace {

Json pfaffian_command(const Json& in) {
  bool want_adjugate = in.value("adjugate", false);
  Json out;
  if (in.contains("matrix")) {
    SkewMatrix<Rational> sm(rat_matrix_from_json(in.at("matrix")));
    out["pfaffian"] = rat_to_string(pf(sm));
    if (want_adjugate) out["adjugate"] = to_json(pf_adjugate(sm));
  } else {
    SkewMatrix<GElt> sm(gelt_matrix_from_json(in.at("grassmann_matrix")));
    out["pfaffian"] = to_json(pf(sm));
    if (want_adjugate) {
      Matrix<GElt> adj = pf_adjugate(sm);
      out["adjugate"] = to_json(adj);
    }
  }
  return out;
}

Json berezinian_command(const Json& in) {
  SuperMatrix m = supermatrix_from_json(in.at("supermatrix"));
  GElt b = ber(m);
  Json out;
  out["berezinian"] = to_json(b);
  // plain rendering when the value is an ordinary scalar
  if (b.is_zero() || (b.terms().size() == 1 && b.terms().begin()->first == 0u))
    out["value"] = rat_to_string(b.constant_term());
  return out;
}

Json massey_command(const Json& in) {
  HyperellipticConfig cfg = config_from_json(in.at("config"));
  QuadraticRelation xi = relation_from_json(in.at("relation"));
  ThetaCoord y = theta_coord_from_json(in.at("y"));
  bool flip = in.value("flip_sign", false);
  OmegaLSection s = massey_m3(cfg, y, xi, flip);
  Json out = to_json(s);
  out["sym_text"] = s.sym.to_string();
  out["antisym_text"] = s.antisym.to_string();
  return out;
}

Json skew_command(const Json& in) {
  HyperellipticConfig cfg = config_from_json(in.at("config"));
  QuadraticRelation xi = relation_from_json(in.at("relation"));
  Matrix<Rational> sk = skew_part(cfg, xi);
  auto [aplus, aminus] = a_xi_matrix(cfg, xi);
  Json out;
  out["skew"] = to_json(sk);
  out["rank"] = rank_exact(sk);
  out["aplus"] = to_json(aplus);
  out["aminus"] = to_json(aminus);
  out["csv"] = to_csv(sk);
  return out;
}

Json compose_command(const Json& in) {
  const Json& maps = in.at("maps");
  if (!maps.is_array() || maps.empty()) throw InvalidSpec("need a list of maps");
  SuperCoordMap acc = coord_map_from_json(maps.at(0));
  for (std::size_t i = 1; i < maps.size(); ++i)
    acc = compose(acc, coord_map_from_json(maps.at(i)));
  PullbackForm pb = pullback_form(acc);
  Json out = to_json(acc);
  out["superconformal"] = pb.ok;
  out["lambda"] = to_json(pb.lambda);
  return out;
}

Json factorize_command(const Json& in) {
  SuperCoordMap g = coord_map_from_json(in.at("map"));
  auto [f, phi] = factorize(g);
  Json out;
  out["f"] = to_json(f);
  out["phi"] = to_json(phi);
  out["f_text"] = gpoly_to_string(f);
  out["phi_text"] = gpoly_to_string(phi);
  return out;
}

Json second_variation_command(const Json& in) {
  SubspaceFamily fam = family_from_json(in.at("family"));
  SecondVariation sv = second_variation(fam);
  Json out;
  out["domain_rows"] = sv.tangent.domain_rows;
  out["quotient_rows"] = sv.tangent.quotient_rows;
  Json tmaps = Json::array();
  for (const auto& t : sv.tangent.maps) tmaps.push_back(to_json(t));
  out["tangent_maps"] = tmaps;
  out["tangent_rows"] = sv.tangent_rows;
  out["class_rows"] = sv.class_rows;
  Json pairs = Json::array(), raw = Json::array(), classes = Json::array();
  for (std::size_t i = 0; i < sv.pairs.size(); ++i) {
    pairs.push_back({sv.pairs[i].first, sv.pairs[i].second});
    raw.push_back(to_json(sv.raw[i]));
    classes.push_back(to_json(sv.classes[i]));
  }
  out["pairs"] = pairs;
  out["raw"] = raw;
  out["classes"] = classes;
  return out;
}

}  // namespace

int run_json_command(const std::string& command, const Json& input, std::ostream& out,
                     std::ostream& err) {
  try {
    Json result;
    if (command == "pfaffian")
      result = pfaffian_command(input);
    else if (command == "berezinian")
      result = berezinian_command(input);
    else if (command == "massey")
      result = massey_command(input);
    else if (command == "skew")
      result = skew_command(input);
    else if (command == "compose")
      result = compose_command(input);
    else if (command == "factorize")
      result = factorize_command(input);
    else if (command == "second-variation")
      result = second_variation_command(input);
    else
      throw InvalidSpec("unknown command '" + command + "'");
    out << result.dump(2) << "\n";
    return kOk;
  } catch (const Error& e) {
    Json j{{"error", e.name()}, {"detail", e.what()}};
    err << j.dump(2) << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    Json j{{"error", "BadInput"}, {"detail", e.what()}};
    err << j.dump(2) << "\n";
    return kUsage;
  }
}

}  // namespace ssk::cli
