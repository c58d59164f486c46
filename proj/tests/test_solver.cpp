#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/oud.hpp"
#include "blotto/solver.hpp"

using blotto::GameInstance;
using blotto::Kappa;
using blotto::Rect;
using blotto::Residual;

namespace {

GameInstance four_battlefields() {
  return GameInstance(4.0, 4.0, 0.5,
                      {{1.0, 1.0, 1.0}, {2.0, 1.0, 1.0}, {1.0, -1.0, 1.0}, {2.0, -1.0, 1.0}});
}

GameInstance grcb2() {
  return GameInstance(2.0, 2.0, 0.5, {{1.0, -2.0, 0.5}, {1.0, 0.0, 1.0}});
}

}  // namespace

TEST_CASE("rectangle boundary parameterization") {
  const Rect r{1.0, 3.0, 2.0, 6.0};
  auto at = [&](double t) { return blotto::rect_boundary_point(r, t); };
  CHECK(at(0.0).lamA == 1.0);
  CHECK(at(0.0).lamB == 2.0);
  CHECK(at(1.0).lamA == 3.0);
  CHECK(at(1.0).lamB == 2.0);
  CHECK(at(2.0).lamA == 3.0);
  CHECK(at(2.0).lamB == 6.0);
  CHECK(at(3.0).lamA == 1.0);
  CHECK(at(3.0).lamB == 6.0);
  CHECK(at(4.0).lamA == 1.0);  // loop closes
  CHECK(at(4.0).lamB == 2.0);
  CHECK(at(0.5).lamA == 2.0);
  CHECK(r.diameter() == 4.0);
}

TEST_CASE("winding number on analytic maps") {
  auto translate = [](const Kappa& k) { return Residual{k.lamA - 1.0, k.lamB - 2.0}; };
  SECTION("simple zero inside") {
    const auto w = blotto::winding_number(translate, Rect{0.0, 3.0, 0.0, 3.0}, 1e-30);
    CHECK(w.winding == 1);
    CHECK_FALSE(w.zero_hit);
  }
  SECTION("zero outside") {
    CHECK(blotto::winding_number(translate, Rect{2.0, 3.0, 2.5, 3.0}, 1e-30).winding == 0);
    CHECK(blotto::winding_number(translate, Rect{0.0, 0.5, 0.0, 3.0}, 1e-30).winding == 0);
  }
  SECTION("double zero counts twice") {
    // complex square: exactly one preimage loop winds twice around 0
    auto square = [](const Kappa& k) {
      return Residual{k.lamA * k.lamA - k.lamB * k.lamB, 2.0 * k.lamA * k.lamB};
    };
    const auto w = blotto::winding_number(square, Rect{-1.0, 1.3, -1.1, 1.2}, 1e-30);
    CHECK(w.winding == 2);
  }
  SECTION("boundary sample at the origin reports zero_hit") {
    const auto w = blotto::winding_number(translate, Rect{1.0, 3.0, 2.0, 3.0}, 1e-9);
    CHECK(w.zero_hit);
    REQUIRE(w.zero_sample.has_value());
    CHECK(w.zero_sample->lamA == 1.0);
    CHECK(w.zero_sample->lamB == 2.0);
  }
  SECTION("discontinuous image exhausts refinement") {
    auto jump = [](const Kappa& k) {
      return Residual{1.0, k.lamA < 0.5 ? -1.0 : 1.0};
    };
    CHECK_THROWS_AS(blotto::winding_number(jump, Rect{0.0, 1.0, 0.0, 1.0}, 1e-30, 20),
                    blotto::SolverError);
  }
}

TEST_CASE("budget residual winds once around known roots") {
  const GameInstance g = four_battlefields();
  auto fn = [&](const Kappa& k) { return blotto::residual(g, k); };
  const auto w = blotto::winding_number(fn, Rect{1.0, 4.0, 1.0, 4.0}, 1e-14);
  CHECK(std::abs(w.winding) == 1);
}

TEST_CASE("solve locates the paired-head-start root") {
  const auto rep = blotto::solve(four_battlefields());
  REQUIRE(rep.status == blotto::SolveStatus::Solved);
  REQUIRE(rep.kappa.has_value());
  CHECK(rep.kappa->lamA == Catch::Approx(2.0).margin(1e-5));
  CHECK(rep.kappa->lamB == Catch::Approx(2.0).margin(1e-5));
  CHECK(rep.res->gA <= 0.0);
  CHECK(rep.res->gB <= 0.0);
  CHECK_FALSE(rep.candidate_unverified);
}

TEST_CASE("solve locates the one-sided favoritism root") {
  blotto::SolverConfig cfg;
  cfg.delta = 1e-6;
  const auto rep = blotto::solve(grcb2(), cfg);
  REQUIRE(rep.status == blotto::SolveStatus::Solved);
  const Kappa ref{2.0 + std::sqrt(4.0 / 3.0), 2.0 + std::sqrt(12.0)};
  CHECK(rep.kappa->lamA == Catch::Approx(ref.lamA).margin(1e-5));
  CHECK(rep.kappa->lamB == Catch::Approx(ref.lamB).margin(1e-5));
  const auto v = blotto::verify_delta_solution(grcb2(), *rep.kappa, 1e-5, ref);
  CHECK(v.budget_feasible);
  REQUIRE(v.within_delta.has_value());
  CHECK(*v.within_delta);
}

TEST_CASE("solve splits identical battlefields evenly") {
  std::vector<blotto::Battlefield> bs(3, {1.0, 0.0, 1.0});
  const GameInstance g(5.0, 5.0, 0.5, bs);
  const auto rep = blotto::solve(g);
  REQUIRE(rep.status == blotto::SolveStatus::Solved);
  CHECK(rep.kappa->lamA == Catch::Approx(10.0 / 3.0).margin(1e-5));
  CHECK(rep.kappa->lamB == Catch::Approx(10.0 / 3.0).margin(1e-5));
}

TEST_CASE("solve reports trivial games without searching") {
  const GameInstance g(1.0, 1.0, 0.5, {{1.0, 5.0, 1.0}, {1.0, 6.0, 1.0}});
  const auto rep = blotto::solve(g);
  CHECK(rep.status == blotto::SolveStatus::TrivialGame);
  REQUIRE(rep.trivial_winner.has_value());
  CHECK(*rep.trivial_winner == blotto::Player::A);
  CHECK(rep.rect_trace.empty());
}

TEST_CASE("solve validates its configuration") {
  blotto::SolverConfig cfg;
  cfg.delta = 0.0;
  CHECK_THROWS_AS(blotto::solve(grcb2(), cfg), std::invalid_argument);
  cfg.delta = 1e-6;
  cfg.m0 = 2.0;
  cfg.M0 = 1.0;
  CHECK_THROWS_AS(blotto::solve(grcb2(), cfg), std::invalid_argument);
}

TEST_CASE("solve trace records the boundary walk") {
  std::vector<blotto::TraceRow> trace;
  const auto rep = blotto::solve(four_battlefields(), {}, &trace);
  REQUIRE(rep.status == blotto::SolveStatus::Solved);
  REQUIRE_FALSE(trace.empty());
  CHECK(trace.front().phase.rfind("enlarge", 0) == 0);
  bool saw_bisect = false;
  for (const auto& row : trace) {
    CHECK(row.t >= 0.0);
    CHECK(row.t <= 4.0);
    if (row.phase.rfind("bisect", 0) == 0) saw_bisect = true;
  }
  CHECK(saw_bisect);
  CHECK(static_cast<long>(trace.size()) == rep.curve_samples_total);
}

TEST_CASE("rect trace shrinks to the requested diameter") {
  blotto::SolverConfig cfg;
  cfg.delta = 1e-4;
  const auto rep = blotto::solve(grcb2(), cfg);
  REQUIRE(rep.status == blotto::SolveStatus::Solved);
  REQUIRE_FALSE(rep.rect_trace.empty());
  const Rect last = rep.rect_trace.back().rect;
  CHECK(last.diameter() <= 2e-4);  // final split can come from either half
  CHECK(rep.kappa->lamA >= last.x_lo - 1e-4);
  CHECK(rep.kappa->lamB >= last.y_lo - 1e-4);
}

TEST_CASE("solve handles instances written with the stronger player first") {
  // normalization puts the poorer player in seat A; solving still works
  const GameInstance g(6.0, 3.0, 0.5, {{1.0, 0.5, 1.0}, {2.0, -0.25, 2.0}, {1.0, 0.0, 1.0}});
  REQUIRE(g.swapped);
  const auto rep = blotto::solve(g);
  CHECK(rep.status == blotto::SolveStatus::Solved);
  const auto v = blotto::verify_delta_solution(g, *rep.kappa, rep.delta);
  CHECK(v.budget_feasible);
}
