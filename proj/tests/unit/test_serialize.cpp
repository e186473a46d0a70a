#include "doctest.h"

#include <sstream>

#include "qcext/serialize.hpp"

using namespace qcext;

TEST_CASE("complex values") {
  CHECK(complex_from_json(Json(0.5), "x") == complex(0.5, 0.0));
  CHECK(complex_from_json(Json::parse("[0.1, -2]"), "x") == complex(0.1, -2.0));
  CHECK_THROWS_AS(complex_from_json(Json::parse("[1]"), "x"), ParameterError);
  CHECK_THROWS_AS(complex_from_json(Json("1"), "x"), ParameterError);
  CHECK(to_json(complex(1.5, -0.25)).dump() == "[1.5,-0.25]");
}

TEST_CASE("map specs") {
  const MapSpec s = map_spec_from_json(Json::parse(R"({"h": "z + 0.15*z^2", "g": "0.1*z^2", "lambda": [0.5, 0]})"));
  CHECK(s.form == "hg");
  CHECK(s.lambda == complex(0.5));
  const HarmonicMap f = build_map(s);
  CHECK(std::abs(f.value(0.5) - (0.5 + 0.0375 + 0.5 * 0.025)) < 1e-15);
  const MapSpec back = map_spec_from_json(to_json(s));
  CHECK(back.h == s.h);
  CHECK(back.g == s.g);
  CHECK(back.lambda == s.lambda);

  const MapSpec t = map_spec_from_json(Json::parse(R"({"form": "teichmuller", "h": "z", "alpha": [0.3, 0.1]})"));
  CHECK(build_map(t).form() == HarmonicMap::Form::teichmuller);
  CHECK(map_spec_from_json(to_json(t)).alpha == complex(0.3, 0.1));

  CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"h": "z", "gg": "0"})")), ParameterError);
  CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"g": "0"})")), ParameterError);
  CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"form": "teichmuller", "h": "z"})")), ParameterError);
  CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"form": "teichmuller", "h": "z", "alpha": 0.1, "g": "z"})")),
                  ParameterError);
  CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"form": "other", "h": "z"})")), ParameterError);
  try {
    MapSpec bad;
    bad.h = "z +";
    build_map(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
    CHECK(std::string(e.what()).find("map.h") != std::string::npos);
  }
  MapSpec folded;
  folded.g = "z^2";
  CHECK_THROWS_AS(build_map(folded), PointError);
}

TEST_CASE("weight specs") {
  const WeightSpec b = weight_spec_from_json(Json::parse(R"({"kind": "becker"})"));
  CHECK(b.kind == WeightKind::becker);
  const WeightSpec a = weight_spec_from_json(Json::parse(R"({"kind": "ahlfors_c", "c": [0.2, 0.1]})"));
  CHECK(a.c == complex(0.2, 0.1));
  CHECK(weight_spec_from_json(to_json(a)).c == a.c);
  CHECK_THROWS_AS(weight_spec_from_json(Json::parse(R"({"kind": "schwarzian_v"})")), ParameterError);
  CHECK_THROWS_AS(weight_spec_from_json(Json::parse(R"({"kind": "custom"})")), ParameterError);
  CHECK_THROWS_AS(weight_spec_from_json(Json::parse(R"({"kind": "becker", "x": 1})")), ParameterError);
  CHECK_THROWS_AS(weight_spec_from_json(Json::parse(R"({"kind": "custom", "sigma": "z +"})")), ParseError);
}

TEST_CASE("doubles round-trip through the text format") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.278048123456789}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("CSV preamble and columns") {
  BoundaryTrace t;
  t.theta = {0.0, 1.0};
  t.inner = {complex(1, 2), complex(3, 4)};
  t.outer = {complex(5, 6), complex(7, 8)};
  t.gap = {0.5, 0.25};
  std::ostringstream os;
  write_trace_csv(os, t, {Json{{"command", "extend"}}, false});
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == R"(# config {"command":"extend"})");
  std::getline(in, line);
  CHECK(line == "# certified false");
  std::getline(in, line);
  CHECK(line == "theta,re_in,im_in,re_out,im_out,gap");
  std::getline(in, line);
  CHECK(line == "0,1,2,5,6,0.5");
}

TEST_CASE("criterion report fields") {
  CriterionReport r;
  r.criterion = "becker";
  r.k_hat = 0.25;
  r.target_k = 0.5;
  r.pass = true;
  r.refinement.push_back({32, 128, 4000, 0.25});
  const Json j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  const std::vector<std::string> want = {"criterion", "params", "k_hat", "witness", "grid", "refinement",
                                         "omega_sup", "excluded", "first_excluded", "k", "pass"};
  CHECK(keys == want);
  CHECK(j["refinement"][0][0] == 4000);
  CHECK(j["omega_sup"].is_null());
}
