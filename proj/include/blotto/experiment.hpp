#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blotto/io.hpp"
#include "blotto/oud.hpp"
#include "blotto/solver.hpp"

namespace blotto {

// Parameter sweep over a family of instances. A sweep has one inner numeric
// parameter and optionally one outer parameter (numeric or categorical);
// each (outer, inner) pair produces one solved instance and one CSV row.
//
// Spec JSON:
//   {"preset": "fig4a" | "fig4b" | "fig5", "delta": 1e-6}
// or a custom family:
//   {"template": {<instance>}, "sweep": {"param": .., "values": [..]} |
//    {"param": .., "from": .., "to": .., "step": ..},
//    "outer": {"param": .., "values": [..]},       // optional
//    "delta": 1e-6}                                 // optional
//
// Sweep/outer parameters:
//   "p_all"        set every battlefield's head start to the value
//   "q_all"        set every battlefield's effectiveness ratio to the value
//   "q_mix_half"   first half of the battlefields get q = value, the rest 1/value
//   "pre_budget"   value P converts budget into head start: xA becomes
//                  template xA - P; placement is chosen by the outer
//                  "pre_allocation" value, "spread" (P/n on every
//                  battlefield) or "focus" (all of P on the most valuable
//                  battlefield, first one on ties)
struct ExperimentSpec {
  GameInstance tmpl;
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::string outer_param;               // empty: no outer dimension
  std::vector<std::string> outer_values; // categorical form; numeric stored as text
  double delta = 1e-6;
};

struct ExperimentRow {
  std::string sweep;   // formatted sweep value
  std::string outer;   // formatted outer value, empty when absent
  std::optional<Kappa> kappa;
  std::optional<Residual> res;
  std::optional<double> piA;
  std::optional<double> piB;
  std::string classes;  // ';'-joined per-battlefield labels, TA/TB for byes
  std::string status;   // Solved | TrivialGame | BudgetExceeded | Error
};

namespace detail {

inline std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Inclusive arithmetic progression. When from and to sit on the step grid,
// values are produced as (integer index) * step so that grid points like 0
// come out exact instead of accumulating.
inline std::vector<double> sweep_range(double from, double to, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("experiment sweep: step must be > 0");
  if (to < from) throw std::invalid_argument("experiment sweep: to < from");
  const long count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  const double k0 = from / step;
  const bool snapped = std::abs(k0 - std::round(k0)) < 1e-9;
  std::vector<double> vals;
  vals.reserve(count);
  for (long k = 0; k < count; ++k) {
    vals.push_back(snapped ? (std::round(k0) + static_cast<double>(k)) * step
                           : from + static_cast<double>(k) * step);
  }
  return vals;
}

inline GameInstance apply_param(GameInstance g, const std::string& param, double v) {
  if (param == "p_all") {
    for (auto& b : g.battlefields) b.p = v;
  } else if (param == "q_all") {
    if (!(v > 0.0)) throw std::invalid_argument("experiment: q_all needs a positive value");
    for (auto& b : g.battlefields) b.q = v;
  } else if (param == "q_mix_half") {
    if (!(v > 0.0)) throw std::invalid_argument("experiment: q_mix_half needs a positive value");
    const std::size_t half = g.battlefields.size() / 2;
    for (std::size_t i = 0; i < g.battlefields.size(); ++i)
      g.battlefields[i].q = i < half ? v : 1.0 / v;
  } else {
    throw std::invalid_argument("experiment: unknown sweep parameter \"" + param + "\"");
  }
  return GameInstance(g.xA, g.xB, g.alpha, g.battlefields);
}

// pre_budget: trade P of A's budget for head starts placed per `mode`.
inline GameInstance apply_pre_budget(const GameInstance& tmpl, const std::string& mode,
                                     double P) {
  if (!(P >= 0.0) || !(P < tmpl.xA))
    throw std::invalid_argument("experiment: pre_budget value must be in [0, xA)");
  std::vector<Battlefield> bfs = tmpl.battlefields;
  if (mode == "spread") {
    for (auto& b : bfs) b.p = P / static_cast<double>(bfs.size());
  } else if (mode == "focus") {
    std::size_t target = 0;
    for (std::size_t i = 1; i < bfs.size(); ++i)
      if (bfs[i].w > bfs[target].w) target = i;
    for (std::size_t i = 0; i < bfs.size(); ++i) bfs[i].p = i == target ? P : 0.0;
  } else {
    throw std::invalid_argument("experiment: pre_allocation must be spread or focus");
  }
  return GameInstance(tmpl.xA - P, tmpl.xB, tmpl.alpha, std::move(bfs));
}

}  // namespace detail

inline ExperimentSpec experiment_spec_from_json(const json& j) {
  detail::require_keys(j, {}, {"preset", "template", "sweep", "outer", "delta"},
                       "experiment spec");
  auto make_template = [](double xa, double xb, std::vector<double> w) {
    std::vector<Battlefield> bfs;
    for (double wi : w) bfs.push_back({wi, 0.0, 1.0});
    return GameInstance(xa, xb, 0.5, std::move(bfs));
  };

  std::optional<ExperimentSpec> spec;
  if (j.contains("preset")) {
    const std::string preset = j.at("preset").get<std::string>();
    if (preset == "fig4a" || preset == "fig4b") {
      ExperimentSpec s{make_template(10.0, 10.0, {1, 1, 1, 1}),
                       "p_all",
                       detail::sweep_range(-10.0, 10.0, 0.1),
                       preset == "fig4a" ? "q_all" : "q_mix_half",
                       {},
                       1e-6};
      const std::vector<double> qs = preset == "fig4a"
                                         ? std::vector<double>{0.1, 0.2, 0.5, 1, 2, 5, 10}
                                         : std::vector<double>{0.1, 0.2, 0.5};
      for (double q : qs) s.outer_values.push_back(detail::fmt_g9(q));
      spec = std::move(s);
    } else if (preset == "fig5") {
      spec = ExperimentSpec{make_template(10.0, 10.0, {1, 1, 1, 5}),
                            "pre_budget",
                            detail::sweep_range(0.0, 9.9, 0.1),
                            "pre_allocation",
                            {"spread", "focus"},
                            1e-6};
    } else {
      throw std::invalid_argument("experiment: unknown preset \"" + preset + "\"");
    }
  } else {
    if (!j.contains("template") || !j.contains("sweep"))
      throw std::invalid_argument("experiment: need \"preset\" or \"template\" + \"sweep\"");
    const json& sw = j.at("sweep");
    detail::require_keys(sw, {"param"}, {"values", "from", "to", "step"}, "sweep");
    ExperimentSpec s{instance_from_json(j.at("template")),
                     sw.at("param").get<std::string>(),
                     {},
                     "",
                     {},
                     1e-6};
    if (sw.contains("values")) {
      for (const json& v : sw.at("values")) s.sweep_values.push_back(v.get<double>());
    } else {
      s.sweep_values = detail::sweep_range(detail::number_field(sw, "from", "sweep"),
                                           detail::number_field(sw, "to", "sweep"),
                                           detail::number_field(sw, "step", "sweep"));
    }
    if (j.contains("outer")) {
      const json& out = j.at("outer");
      detail::require_keys(out, {"param", "values"}, {}, "outer");
      s.outer_param = out.at("param").get<std::string>();
      for (const json& v : out.at("values")) {
        s.outer_values.push_back(v.is_string() ? v.get<std::string>()
                                               : detail::fmt_g9(v.get<double>()));
      }
    }
    spec = std::move(s);
  }
  if (j.contains("delta")) {
    spec->delta = detail::number_field(j, "delta", "experiment spec");
    if (!(spec->delta > 0.0))
      throw std::invalid_argument("experiment: delta must be > 0");
  }
  return std::move(*spec);
}

namespace detail {

inline GameInstance instantiate(const ExperimentSpec& spec, const std::string& outer,
                                double sweep) {
  // Sweep parameters address the template as written, not the normalized
  // internal orientation.
  GameInstance g = spec.tmpl.original();
  if (spec.outer_param == "pre_allocation" || spec.sweep_param == "pre_budget") {
    if (spec.sweep_param != "pre_budget" || spec.outer_param != "pre_allocation")
      throw std::invalid_argument(
          "experiment: pre_budget sweep requires pre_allocation outer");
    return apply_pre_budget(g, outer, sweep);
  }
  if (!spec.outer_param.empty()) g = apply_param(std::move(g), spec.outer_param, std::stod(outer));
  return apply_param(std::move(g), spec.sweep_param, sweep);
}

}  // namespace detail

// Runs one swept instance. Battlefields where one player wins at zero
// allocation regardless of the opponent are removed as byes (their value
// goes to the winner, labelled TA/TB) and the remainder is solved as a
// smaller game; a game that is trivial as a whole is reported without
// solving. This mirrors how the discontinuous edges of the sweep figures
// are produced.
inline ExperimentRow run_experiment_cell(const GameInstance& g, double delta,
                                         const std::string& sweep_label,
                                         const std::string& outer_label) {
  ExperimentRow row;
  row.sweep = sweep_label;
  row.outer = outer_label;

  const double total = g.total_value();
  std::vector<std::string> labels(g.n());

  // Peel off the battlefields decided at zero allocation.
  std::vector<Battlefield> live;
  std::vector<std::size_t> live_idx;
  double pi_base = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const auto& b = g.battlefields[i];
    if (b.q * g.xB - b.p < 0.0) {
      pi_base += b.w;
      labels[i] = "TA";
    } else if ((g.xA + b.p) / b.q < 0.0) {
      labels[i] = "TB";
    } else {
      live.push_back(b);
      live_idx.push_back(i);
    }
  }

  auto join_labels = [&labels]() {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) s += ';';
      s += labels[i];
    }
    return s;
  };
  auto set_payoffs = [&](double pi_a) {
    row.piA = pi_a;
    row.piB = total - pi_a;
  };

  if (live.empty()) {
    row.status = "TrivialGame";
    row.classes = join_labels();
    set_payoffs(pi_base);
    return row;
  }

  GameInstance sub(g.xA, g.xB, g.alpha, live);
  const AssumptionStatus st = check_assumptions(sub);
  if (!st.a1_holds) {
    // One side can win every remaining battlefield outright.
    double pi_a = pi_base;
    for (std::size_t k = 0; k < live.size(); ++k) {
      const bool a_takes = st.trivial_winner == Player::A;
      labels[live_idx[k]] = a_takes ? "TA" : "TB";
      if (a_takes) pi_a += live[k].w;
    }
    row.status = "TrivialGame";
    row.classes = join_labels();
    set_payoffs(pi_a);
    return row;
  }

  SolverConfig cfg;
  cfg.delta = delta;
  SolveReport rep;
  try {
    rep = solve(sub, cfg);
  } catch (const SolverError&) {
    row.status = "Error";
    row.classes = join_labels();
    return row;
  }
  if (rep.status != SolveStatus::Solved) {
    row.status = to_string(rep.status);
    row.classes = join_labels();
    return row;
  }

  row.status = "Solved";
  row.kappa = rep.kappa;
  row.res = rep.res;
  const auto [pi_sub, _] = oud_payoffs(sub, *rep.kappa);
  set_payoffs(pi_base + pi_sub);
  for (std::size_t k = 0; k < live.size(); ++k)
    labels[live_idx[k]] = to_string(classify_battlefield(live[k], *rep.kappa));
  row.classes = join_labels();
  return row;
}

inline std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  std::vector<ExperimentRow> rows;
  const std::vector<std::string> outers =
      spec.outer_values.empty() ? std::vector<std::string>{""} : spec.outer_values;
  for (const auto& outer : outers) {
    for (double v : spec.sweep_values) {
      const std::string sweep_label = detail::fmt_g9(v);
      ExperimentRow row;
      try {
        const GameInstance g = detail::instantiate(spec, outer, v);
        row = run_experiment_cell(g, spec.delta, sweep_label, outer);
      } catch (const std::exception&) {
        row.sweep = sweep_label;
        row.outer = outer;
        row.status = "Error";
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// CSV: fixed header, one row per swept instance, '.' decimal separator,
// comma separated, LF line endings, numbers at 9 significant digits.
// Failed cells keep their sweep/outer/status fields and leave the numeric
// columns empty. Output is byte-identical across runs.
inline std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "sweep,outer,lamA,lamB,gA,gB,piA,piB,classes,status\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? detail::fmt_g9(*v) : std::string();
  };
  for (const auto& r : rows) {
    out += r.sweep;
    out += ',';
    out += r.outer;
    out += ',';
    out += r.kappa ? detail::fmt_g9(r.kappa->lamA) : std::string();
    out += ',';
    out += r.kappa ? detail::fmt_g9(r.kappa->lamB) : std::string();
    out += ',';
    out += r.res ? detail::fmt_g9(r.res->gA) : std::string();
    out += ',';
    out += r.res ? detail::fmt_g9(r.res->gB) : std::string();
    out += ',';
    out += opt(r.piA);
    out += ',';
    out += opt(r.piB);
    out += ',';
    out += r.classes;
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

}  // namespace blotto
