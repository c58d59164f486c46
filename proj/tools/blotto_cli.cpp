// Command-line front end: solve instances, inspect single-battlefield
// auction equilibria, evaluate payoffs, sample strategies, measure
// exploitability, and run parameter sweeps. All output is deterministic
// for a fixed command line (including --seed).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blotto/experiment.hpp"
#include "blotto/fapa.hpp"
#include "blotto/game.hpp"
#include "blotto/io.hpp"
#include "blotto/oud.hpp"
#include "blotto/solver.hpp"
#include "blotto/strategies.hpp"

namespace {

using blotto::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

blotto::GameInstance load_instance(const std::string& path) {
  return blotto::instance_from_string(read_file(path));
}

std::string trace_csv(const std::vector<blotto::TraceRow>& trace) {
  std::string out = "phase,t,curve_x,curve_y,gA,gB\n";
  for (const auto& r : trace) {
    out += r.phase;
    out += ',';
    out += fmt_g9(r.t);
    out += ',';
    out += fmt_g9(r.x);
    out += ',';
    out += fmt_g9(r.y);
    out += ',';
    out += fmt_g9(r.gA);
    out += ',';
    out += fmt_g9(r.gB);
    out += '\n';
  }
  return out;
}

// Maps a requested original-orientation player onto the normalized
// instance's players.
blotto::Player internal_player(const blotto::GameInstance& g, blotto::Player original) {
  if (!g.swapped) return original;
  return original == blotto::Player::A ? blotto::Player::B : blotto::Player::A;
}

struct CommonArgs {
  std::uint64_t seed = 0;
  double delta = 1e-6;
  std::string out_path;
};

blotto::Kappa solve_or_kappa(const blotto::GameInstance& g, double delta,
                             const std::vector<double>& kappa_opt) {
  if (!kappa_opt.empty()) {
    if (kappa_opt.size() != 2)
      throw std::invalid_argument("--kappa needs exactly two values: lamA,lamB");
    return {kappa_opt[0], kappa_opt[1]};
  }
  blotto::SolverConfig cfg;
  cfg.delta = delta;
  const blotto::SolveReport rep = blotto::solve(g, cfg);
  if (rep.status != blotto::SolveStatus::Solved)
    throw std::runtime_error(std::string("solve did not converge: ") +
                             blotto::to_string(rep.status));
  return *rep.kappa;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Equilibrium tools for two-player budgeted allocation games with "
      "head starts and effectiveness ratios"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global options after the subcommand too

  CommonArgs common;
  app.add_option("--seed", common.seed, "RNG seed shared by all sampling commands")
      ->capture_default_str();
  app.add_option("--delta", common.delta,
                 "target localization diameter for the multiplier search")
      ->capture_default_str();
  app.add_option("--out", common.out_path, "write primary output to this file (default stdout)");

  // ---- solve ----
  std::string solve_file;
  double solve_m0 = 0.0, solve_M0 = 0.0;
  std::string solve_trace_path;
  auto* cmd_solve = app.add_subcommand(
      "solve", "Find budget multipliers (lamA, lamB) making the equilibrium "
               "marginals spend both budgets; prints a solve report as JSON");
  cmd_solve->add_option("instance", solve_file, "instance JSON file")->required();
  cmd_solve->add_option("--m0", solve_m0, "initial search square lower corner (0 = auto)");
  cmd_solve->add_option("--M0", solve_M0, "initial search square upper corner (0 = auto)");
  cmd_solve->add_option("--trace", solve_trace_path,
                        "write boundary-walk samples as CSV "
                        "(columns: phase,t,curve_x,curve_y,gA,gB)");

  // ---- fapa ----
  double f_uA = 1.0, f_uB = 1.0, f_p = 0.0, f_q = 1.0, f_alpha = 0.5;
  auto* cmd_fapa = app.add_subcommand(
      "fapa", "Closed-form equilibrium of the single-prize all-pay auction "
              "with head start p and effectiveness ratio q");
  cmd_fapa->add_option("--uA", f_uA, "A's value for the prize")->required();
  cmd_fapa->add_option("--uB", f_uB, "B's value for the prize")->required();
  cmd_fapa->add_option("--p", f_p, "head start for A (negative favours B)");
  cmd_fapa->add_option("--q", f_q, "effectiveness ratio on B's bid");
  cmd_fapa->add_option("--alpha", f_alpha, "tie share for A");

  // ---- payoff ----
  std::string payoff_file;
  std::vector<double> payoff_xa, payoff_xb;
  auto* cmd_payoff = app.add_subcommand(
      "payoff", "Evaluate pure-allocation payoffs (players as written in the instance)");
  cmd_payoff->add_option("instance", payoff_file, "instance JSON file")->required();
  cmd_payoff->add_option("--xA", payoff_xa, "player A's allocation, comma separated")
      ->required()
      ->delimiter(',');
  cmd_payoff->add_option("--xB", payoff_xb, "player B's allocation, comma separated")
      ->required()
      ->delimiter(',');

  // ---- ouds ----
  std::string ouds_file;
  std::vector<double> ouds_kappa;
  auto* cmd_ouds = app.add_subcommand(
      "ouds", "Per-battlefield equilibrium marginals at given or solved multipliers");
  cmd_ouds->add_option("instance", ouds_file, "instance JSON file")->required();
  cmd_ouds->add_option("--kappa", ouds_kappa, "use these multipliers lamA,lamB instead of solving")
      ->delimiter(',');

  // ---- sample ----
  std::string sample_file, sample_kind = "gl", sample_player = "A";
  std::vector<double> sample_kappa;
  long sample_draws = 10;
  auto* cmd_sample = app.add_subcommand(
      "sample", "Draw allocations from the equilibrium strategy as CSV, one row per draw");
  cmd_sample->add_option("instance", sample_file, "instance JSON file")->required();
  cmd_sample->add_option("--kind", sample_kind, "gl (expected-budget draws) or iu (rescaled)")
      ->check(CLI::IsMember({"gl", "iu"}));
  cmd_sample->add_option("--player", sample_player, "A or B, in the instance's own orientation")
      ->check(CLI::IsMember({"A", "B"}));
  cmd_sample->add_option("--draws", sample_draws, "number of rows")->capture_default_str();
  cmd_sample->add_option("--kappa", sample_kappa, "use these multipliers instead of solving")
      ->delimiter(',');

  // ---- exploit ----
  std::string exploit_file, exploit_kind = "gl";
  double exploit_grid = 0.0;
  long exploit_samples = 4000;
  auto* cmd_exploit = app.add_subcommand(
      "exploit", "Best pure-deviation gain against the equilibrium strategy (JSON report)");
  cmd_exploit->add_option("instance", exploit_file, "instance JSON file")->required();
  cmd_exploit->add_option("--kind", exploit_kind, "strategy family to exploit: gl or iu")
      ->check(CLI::IsMember({"gl", "iu"}));
  cmd_exploit->add_option("--grid-step", exploit_grid,
                          "deviation grid step (default xA/400)");
  cmd_exploit->add_option("--samples", exploit_samples,
                          "Monte-Carlo and fitting sample count")
      ->capture_default_str();

  // ---- experiment ----
  std::string experiment_file;
  auto* cmd_experiment = app.add_subcommand(
      "experiment",
      "Run a parameter sweep described by a spec JSON and print CSV with "
      "columns sweep,outer,lamA,lamB,gA,gB,piA,piB,classes,status "
      "(numbers at 9 significant digits; failed cells keep only their "
      "status; presets: fig4a, fig4b, fig5)");
  cmd_experiment->add_option("spec", experiment_file, "experiment spec JSON file")->required();

  // ---- gen ----
  std::size_t gen_n = 4;
  bool gen_require = false;
  auto* cmd_gen = app.add_subcommand(
      "gen", "Generate a random instance (budgets 1..100, mixed head starts and ratios)");
  cmd_gen->add_option("--n", gen_n, "number of battlefields")->capture_default_str();
  cmd_gen->add_flag("--require-assumptions", gen_require,
                    "advance the seed until the instance passes the feasibility gates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!(common.delta > 0.0)) {
      std::cerr << "error: --delta must be > 0\n";
      return 1;
    }

    if (cmd_solve->parsed()) {
      const blotto::GameInstance g = load_instance(solve_file);
      blotto::SolverConfig cfg;
      cfg.delta = common.delta;
      cfg.m0 = solve_m0;
      cfg.M0 = solve_M0;
      std::vector<blotto::TraceRow> trace;
      const bool want_trace = !solve_trace_path.empty();
      const blotto::SolveReport rep = blotto::solve(g, cfg, want_trace ? &trace : nullptr);
      if (want_trace) write_output(solve_trace_path, trace_csv(trace));
      write_output(common.out_path, blotto::solve_report_to_json(rep, g.swapped).dump(2));
      if (rep.status == blotto::SolveStatus::TrivialGame) return 2;
      if (rep.status == blotto::SolveStatus::BudgetExceeded) return 3;
      return 0;
    }

    if (cmd_fapa->parsed()) {
      const blotto::FapaInstance f(f_uA, f_uB, f_p, f_q, f_alpha);
      write_output(common.out_path,
                   blotto::fapa_equilibrium_to_json(blotto::equilibrium(f)).dump(2));
      return 0;
    }

    if (cmd_payoff->parsed()) {
      const blotto::GameInstance g = load_instance(payoff_file);
      // Allocations arrive in the orientation of the file; flip them onto
      // the normalized instance if the players were swapped.
      const std::vector<double>& xa = g.swapped ? payoff_xb : payoff_xa;
      const std::vector<double>& xb = g.swapped ? payoff_xa : payoff_xb;
      blotto::PureAllocation::checked(xa, g.xA);
      blotto::PureAllocation::checked(xb, g.xB);
      const auto [pi_a, pi_b] = blotto::pure_payoffs(g, xa, xb);
      const json out = g.swapped ? json{{"piA", pi_b}, {"piB", pi_a}}
                                 : json{{"piA", pi_a}, {"piB", pi_b}};
      write_output(common.out_path, out.dump(2));
      return 0;
    }

    if (cmd_ouds->parsed()) {
      const blotto::GameInstance g = load_instance(ouds_file);
      const blotto::Kappa k = solve_or_kappa(g, common.delta, ouds_kappa);
      const blotto::OudProfile prof = blotto::build_ouds(g, k);
      const auto [pi_a, pi_b] = blotto::oud_payoffs(g, k);
      json out = blotto::oud_profile_to_json(prof);
      out["swapped"] = g.swapped;
      out["piA"] = g.swapped ? pi_b : pi_a;  // reported in the file's orientation
      out["piB"] = g.swapped ? pi_a : pi_b;
      const blotto::Residual res = blotto::residual(g, k);
      out["gA"] = res.gA;
      out["gB"] = res.gB;
      write_output(common.out_path, out.dump(2));
      return 0;
    }

    if (cmd_sample->parsed()) {
      const blotto::GameInstance g = load_instance(sample_file);
      const blotto::Kappa k = solve_or_kappa(g, common.delta, sample_kappa);
      const blotto::OudProfile prof = blotto::build_ouds(g, k);
      const blotto::Player pl = internal_player(
          g, sample_player == "A" ? blotto::Player::A : blotto::Player::B);
      const double budget = pl == blotto::Player::A ? g.xA : g.xB;
      blotto::Rng rng(common.seed);
      std::string csv;
      for (std::size_t i = 0; i < g.n(); ++i) {
        if (i) csv += ',';
        csv += "x" + std::to_string(i);
      }
      csv += '\n';
      for (long t = 0; t < sample_draws; ++t) {
        const std::vector<double> x = sample_kind == "gl"
                                          ? blotto::sample_gl(prof, pl, rng)
                                          : blotto::sample_iu(prof, pl, budget, rng);
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (i) csv += ',';
          csv += fmt_g9(x[i]);
        }
        csv += '\n';
      }
      write_output(common.out_path, csv);
      return 0;
    }

    if (cmd_exploit->parsed()) {
      const blotto::GameInstance g = load_instance(exploit_file);
      const blotto::Kappa k = solve_or_kappa(g, common.delta, {});
      const blotto::StrategyProfile sp{exploit_kind == "gl"
                                           ? blotto::StrategyKind::GlIndependent
                                           : blotto::StrategyKind::IuRescaled,
                                       blotto::build_ouds(g, k)};
      const double step = exploit_grid > 0.0 ? exploit_grid : g.xA / 400.0;
      const blotto::ExploitabilityReport rep =
          blotto::exploitability(g, sp, step, exploit_samples, common.seed);
      json out = blotto::exploitability_to_json(rep);
      out["swapped"] = g.swapped;
      out["kappa"] = {k.lamA, k.lamB};
      write_output(common.out_path, out.dump(2));
      return 0;
    }

    if (cmd_experiment->parsed()) {
      const blotto::ExperimentSpec spec =
          blotto::experiment_spec_from_json(json::parse(read_file(experiment_file)));
      const auto rows = blotto::run_experiment(spec);
      write_output(common.out_path, blotto::experiment_csv(rows));
      return 0;
    }

    if (cmd_gen->parsed()) {
      std::uint64_t seed = common.seed;
      blotto::GameInstance g = blotto::random_instance(gen_n, seed);
      while (gen_require && !blotto::check_assumptions(g).holds())
        g = blotto::random_instance(gen_n, ++seed);
      json out = blotto::instance_to_json(g);
      write_output(common.out_path, out.dump(2));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
