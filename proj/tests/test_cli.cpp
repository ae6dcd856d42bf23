#include <doctest.h>

#include <sstream>

#include "ssk/cli_core.hpp"

using namespace ssk;
using namespace ssk::cli;

TEST_CASE("genus list parsing") {
  CHECK(parse_genus_list("4,6,8") == std::vector<int>{4, 6, 8});
  CHECK(parse_genus_list("5..9:2") == std::vector<int>{5, 7, 9});
  CHECK(parse_genus_list("3..5") == std::vector<int>{3, 4, 5});
  CHECK_THROWS_AS(parse_genus_list(""), InvalidSpec);
  CHECK_THROWS_AS(parse_genus_list("2"), InvalidSpec);
  CHECK_THROWS_AS(parse_genus_list("9..5"), InvalidSpec);
}

TEST_CASE("schottky sweep is deterministic and passes") {
  ExperimentSpec spec;
  spec.genus = {5, 4};
  spec.samples = 3;
  spec.seed = 42;
  std::ostringstream a, b;
  CHECK(run_schottky(spec, a) == kOk);
  CHECK(run_schottky(spec, b) == kOk);
  CHECK(a.str() == b.str());  // byte-identical
  CHECK(a.str().find("g,seed_index,rank,expected,match") != std::string::npos);
  CHECK(a.str().find("# summary pass=6 fail=0 skip=0") != std::string::npos);
  CHECK(a.str().find("seed=42") != std::string::npos);
}

TEST_CASE("schottky sweep with random H") {
  ExperimentSpec spec;
  spec.genus = {5};
  spec.samples = 3;
  spec.seed = 7;
  spec.h_mode = "random";
  std::ostringstream out;
  CHECK(run_schottky(spec, out) == kOk);
}

TEST_CASE("sample_config skips impossible boxes") {
  ExperimentSpec spec;
  spec.genus = {9};
  spec.samples = 1;
  spec.num_bound = 1;  // only 3 possible values with den_bound 1: -1, 0, 1
  spec.den_bound = 1;
  HyperellipticConfig cfg;
  std::vector<Poly> hs;
  std::string reason;
  CHECK(!sample_config(spec, 9, 0, cfg, hs, reason));
  CHECK(!reason.empty());
  std::ostringstream out;
  CHECK(run_schottky(spec, out) == kOk);  // skips are not failures
  CHECK(out.str().find("skip") != std::string::npos);
}

TEST_CASE("pfaffian command") {
  Json in{{"matrix", Json::array({Json::array({"0", "1"}), Json::array({"-1", "0"})})}};
  std::ostringstream out, err;
  CHECK(run_json_command("pfaffian", in, out, err) == kOk);
  Json result = Json::parse(out.str());
  CHECK(result.at("pfaffian") == "1");

  in["adjugate"] = true;
  std::ostringstream out2;
  CHECK(run_json_command("pfaffian", in, out2, err) == kOk);
  Json r2 = Json::parse(out2.str());
  CHECK(r2.at("adjugate").at(0).at(1) == "-1");
}

TEST_CASE("berezinian command") {
  Json diag = Json::parse(R"({
    "supermatrix": {
      "row_shape": [1, 1], "col_shape": [1, 1],
      "entries": [
        [ {"m": -1, "k": 0, "terms": [{"indices": [], "coeff": "2"}]},
          {"m": -1, "k": 0, "terms": []} ],
        [ {"m": -1, "k": 0, "terms": []},
          {"m": -1, "k": 0, "terms": [{"indices": [], "coeff": "3"}]} ]
      ]
    }})");
  std::ostringstream out, err;
  CHECK(run_json_command("berezinian", diag, out, err) == kOk);
  Json result = Json::parse(out.str());
  CHECK(result.at("value") == "2/3");
}

TEST_CASE("massey command reproduces the worked instance") {
  HyperellipticConfig cfg;
  cfg.g = 3;
  for (int v = 2; v <= 8; ++v) cfg.a.push_back(Rational(v));
  cfg.b = {Rational(0), Rational(1)};
  QuadraticRelation xi;
  xi.pairs.emplace_back(Poly(Rational(1)), Poly::monomial(2));
  xi.pairs.emplace_back(Poly::monomial(2), Poly(Rational(1)));
  xi.pairs.emplace_back(Poly::monomial(1, Rational(-2)), Poly::monomial(1));
  Json in;
  in["config"] = to_json(cfg);
  in["relation"] = to_json(xi);
  in["y"] = to_json(unit_plus(cfg, 0));
  std::ostringstream out, err;
  CHECK(run_json_command("massey", in, out, err) == kOk);
  Json result = Json::parse(out.str());
  CHECK(result.at("sym") == Json::array({"0", "1"}));  // t
  CHECK(result.at("antisym") == Json::array());
}

TEST_CASE("compose and factorize commands") {
  Json maps = Json::array();
  maps.push_back({{"m", 2},
                  {"k", 3},
                  {"degree_cap", 16},
                  {"z_image", "z + theta*eta1"},
                  {"theta_image", "theta + eta1"}});
  maps.push_back({{"m", 2},
                  {"k", 3},
                  {"degree_cap", 16},
                  {"z_image", "z + theta*(eta2*z)"},
                  {"theta_image", "theta + eta2*z"}});
  Json in{{"maps", maps}};
  std::ostringstream out, err;
  CHECK(run_json_command("compose", in, out, err) == kOk);
  Json composed = Json::parse(out.str());
  CHECK(composed.at("superconformal") == true);

  Json fin{{"map", composed}};
  std::ostringstream fout;
  CHECK(run_json_command("factorize", fin, fout, err) == kOk);
}

TEST_CASE("second-variation command reports bases and classes") {
  // span(e1 + eta1 e2 + eta1 eta2 e3): tangent hits e2-bar, class on e3-bar
  Matrix<GElt> gens(3, 1);
  gens(0, 0) = GElt(Rational(1));
  gens(1, 0) = GElt::eta(1, 2, 3);
  gens(2, 0) = GElt::eta(1, 2, 3) * GElt::eta(2, 2, 3);
  Json in;
  in["family"] = to_json(make_family(3, 2, gens));
  std::ostringstream out, err;
  CHECK(run_json_command("second-variation", in, out, err) == kOk);
  Json r = Json::parse(out.str());
  CHECK(r.at("domain_rows") == Json::array({0}));
  CHECK(r.at("quotient_rows") == Json::array({1, 2}));
  CHECK(r.at("tangent_rows") == Json::array({0}));
  CHECK(r.at("class_rows") == Json::array({1}));
  CHECK(r.at("pairs") == Json::parse("[[0,1]]"));
  CHECK(r.at("classes").at(0) == Json::parse(R"([["1"]])"));
}

TEST_CASE("error paths return structured JSON and exit 1") {
  std::ostringstream out, err;
  CHECK(run_json_command("nonsense", Json::object(), out, err) == kUsage);
  Json e = Json::parse(err.str());
  CHECK(e.at("error") == "InvalidSpec");

  std::ostringstream out2, err2;
  Json bad{{"matrix", Json::array({Json::array({"0", "1"}), Json::array({"1", "0"})})}};
  CHECK(run_json_command("pfaffian", bad, out2, err2) == kUsage);
  CHECK(Json::parse(err2.str()).at("error") == "NotSkew");
}
