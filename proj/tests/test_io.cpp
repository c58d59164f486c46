#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "blotto/experiment.hpp"
#include "blotto/io.hpp"
#include "blotto/solver.hpp"

using blotto::GameInstance;
using blotto::json;

TEST_CASE("instance JSON round trip") {
  const std::string text = R"({
    "xA": 2.0, "xB": 3.0, "alpha": 0.25,
    "battlefields": [
      {"w": 1.0, "p": -2.0, "q": 0.5},
      {"w": 2.5, "p": 0.0, "q": 1.0}
    ]
  })";
  const GameInstance g = blotto::instance_from_string(text);
  CHECK(g.xA == 2.0);
  CHECK(g.xB == 3.0);
  CHECK(g.alpha == 0.25);
  REQUIRE(g.n() == 2);
  CHECK(g.battlefields[0].p == -2.0);

  const json j = blotto::instance_to_json(g);
  const GameInstance g2 = blotto::instance_from_json(j);
  CHECK(g2.xA == g.xA);
  CHECK(g2.alpha == g.alpha);
  CHECK(g2.battlefields[1].w == 2.5);
}

TEST_CASE("serialization keeps the orientation the instance was written in") {
  const GameInstance g(6.0, 2.0, 0.25, {{1.0, 1.5, 2.0}});
  REQUIRE(g.swapped);
  const json j = blotto::instance_to_json(g);
  CHECK(j.at("xA").get<double>() == 6.0);
  CHECK(j.at("xB").get<double>() == 2.0);
  CHECK(j.at("alpha").get<double>() == 0.25);
  CHECK(j.at("battlefields")[0].at("p").get<double>() == 1.5);
}

TEST_CASE("alpha defaults to an even tie split") {
  const GameInstance g = blotto::instance_from_string(
      R"({"xA": 1, "xB": 1, "battlefields": [{"w": 1, "p": 0, "q": 1}]})");
  CHECK(g.alpha == 0.5);
}

TEST_CASE("malformed instances are rejected") {
  CHECK_THROWS(blotto::instance_from_string("not json"));
  CHECK_THROWS(blotto::instance_from_string(R"({"xA": 1, "battlefields": []})"));
  CHECK_THROWS(blotto::instance_from_string(
      R"({"xA": 1, "xB": 1, "battlefields": []})"));
  CHECK_THROWS(blotto::instance_from_string(
      R"({"xA": 1, "xB": 1, "battlefields": [{"w": 1, "p": 0}]})"));
  // unknown fields are errors, not silently dropped
  CHECK_THROWS(blotto::instance_from_string(
      R"({"xA": 1, "xB": 1, "typo": 3, "battlefields": [{"w": 1, "p": 0, "q": 1}]})"));
  CHECK_THROWS(blotto::instance_from_string(
      R"({"xA": 1, "xB": 1, "battlefields": [{"w": 1, "p": 0, "q": 1, "x": 2}]})"));
}

TEST_CASE("solve report serialization") {
  const GameInstance g(2.0, 2.0, 0.5, {{1.0, -2.0, 0.5}, {1.0, 0.0, 1.0}});
  const auto rep = blotto::solve(g);
  REQUIRE(rep.status == blotto::SolveStatus::Solved);
  const json j = blotto::solve_report_to_json(rep, g.swapped);
  CHECK(j.at("status").get<std::string>() == "Solved");
  CHECK(j.at("swapped").get<bool>() == false);
  CHECK(j.at("kappa").size() == 2);
  CHECK(j.at("kappa")[0].get<double>() == rep.kappa->lamA);
  CHECK(j.at("gA").get<double>() <= 0.0);
  CHECK(j.at("rects").size() == rep.rect_trace.size());
  const json j2 = blotto::solve_report_to_json(rep, g.swapped, false);
  CHECK_FALSE(j2.contains("rects"));
}

TEST_CASE("marginal profile serialization") {
  const GameInstance g(2.0, 2.0, 0.5, {{1.0, -2.0, 0.5}, {1.0, 0.0, 1.0}});
  const auto prof = blotto::build_ouds(g, blotto::Kappa{3.2, 5.5});
  const json j = blotto::oud_profile_to_json(prof);
  REQUIRE(j.at("battlefields").size() == 2);
  const auto& b0 = j.at("battlefields")[0];
  CHECK(b0.contains("class"));
  CHECK(b0.at("fA").contains("atom"));
  CHECK(b0.at("fA").contains("lo"));
  CHECK(b0.at("fA").contains("hi"));
  CHECK(j.at("sumMeanA").get<double>() == Catch::Approx(prof.sum_mean_A()));
}

TEST_CASE("experiment CSV output is byte-stable") {
  const json spec_json = {
      {"template",
       {{"xA", 2.0},
        {"xB", 2.0},
        {"battlefields",
         json::array({{{"w", 1.0}, {"p", 0.0}, {"q", 1.0}},
                      {{"w", 1.0}, {"p", 0.0}, {"q", 1.0}}})}}},
      {"sweep", {{"param", "p_all"}, {"from", -1.0}, {"to", 1.0}, {"step", 0.5}}},
  };
  const auto spec = blotto::experiment_spec_from_json(spec_json);
  const std::string a = blotto::experiment_csv(blotto::run_experiment(spec));
  const std::string b = blotto::experiment_csv(blotto::run_experiment(spec));
  CHECK(a == b);
  CHECK(a.rfind("sweep,outer,lamA,lamB,gA,gB,piA,piB,classes,status\n", 0) == 0);
  // five sweep points, one outer cell
  CHECK(std::count(a.begin(), a.end(), '\n') == 6);
}

TEST_CASE("experiment spec validation") {
  CHECK_THROWS(blotto::experiment_spec_from_json(json{{"preset", "nope"}}));
  CHECK_NOTHROW(blotto::experiment_spec_from_json(json{{"preset", "fig4a"}}));
  CHECK_NOTHROW(blotto::experiment_spec_from_json(json{{"preset", "fig4b"}}));
  CHECK_NOTHROW(blotto::experiment_spec_from_json(json{{"preset", "fig5"}}));
  CHECK_THROWS(blotto::experiment_spec_from_json(
      json{{"preset", "fig4a"}, {"delta", -1.0}}));
}
