#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blotto/fapa.hpp"
#include "blotto/game.hpp"
#include "blotto/oud.hpp"
#include "blotto/solver.hpp"
#include "blotto/strategies.hpp"

namespace blotto {

using json = nlohmann::json;

namespace detail {

inline void require_keys(const json& j, const std::set<std::string>& required,
                         const std::set<std::string>& optional, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!required.count(key) && !optional.count(key))
      throw std::invalid_argument(std::string(what) + ": unknown field \"" + key + "\"");
  }
  for (const auto& key : required) {
    if (!j.contains(key))
      throw std::invalid_argument(std::string(what) + ": missing field \"" + key + "\"");
  }
}

inline double number_field(const json& j, const std::string& key, const char* what) {
  const json& v = j.at(key);
  if (!v.is_number())
    throw std::invalid_argument(std::string(what) + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace detail

// Instance schema: {"xA": .., "xB": .., "alpha": .., "battlefields":
// [{"w": .., "p": .., "q": ..}, ...]}. alpha may be omitted (defaults to
// 0.5); any other unknown or missing field is an error.
inline GameInstance instance_from_json(const json& j) {
  detail::require_keys(j, {"xA", "xB", "battlefields"}, {"alpha"}, "instance");
  const double xa = detail::number_field(j, "xA", "instance");
  const double xb = detail::number_field(j, "xB", "instance");
  const double alpha = j.contains("alpha") ? detail::number_field(j, "alpha", "instance") : 0.5;
  const json& arr = j.at("battlefields");
  if (!arr.is_array() || arr.empty())
    throw std::invalid_argument("instance: \"battlefields\" must be a non-empty array");
  std::vector<Battlefield> bfs;
  bfs.reserve(arr.size());
  for (const json& bj : arr) {
    detail::require_keys(bj, {"w", "p", "q"}, {}, "battlefield");
    bfs.push_back(Battlefield{detail::number_field(bj, "w", "battlefield"),
                              detail::number_field(bj, "p", "battlefield"),
                              detail::number_field(bj, "q", "battlefield")});
  }
  return GameInstance(xa, xb, alpha, std::move(bfs));
}

inline GameInstance instance_from_string(const std::string& text) {
  return instance_from_json(json::parse(text));
}

// Serializes in the orientation the instance was given in (undoes the
// internal player swap), so parse -> serialize round-trips.
inline json instance_to_json(const GameInstance& g) {
  const GameInstance orig = g.original();
  json arr = json::array();
  for (const auto& b : orig.battlefields)
    arr.push_back({{"w", b.w}, {"p", b.p}, {"q", b.q}});
  return json{{"xA", orig.xA}, {"xB", orig.xB}, {"alpha", orig.alpha},
              {"battlefields", std::move(arr)}};
}

inline json atom_uniform_to_json(const AtomUniform& d) {
  return json{{"atom", d.atom_mass}, {"lo", d.lo}, {"hi", d.hi}};
}

inline json oud_profile_to_json(const OudProfile& prof) {
  json arr = json::array();
  for (const auto& m : prof.battlefields) {
    arr.push_back({{"class", to_string(m.cls)},
                   {"fA", atom_uniform_to_json(m.fA)},
                   {"fB", atom_uniform_to_json(m.fB)},
                   {"meanA", m.meanA},
                   {"meanB", m.meanB}});
  }
  return json{{"kappa", {prof.kappa.lamA, prof.kappa.lamB}},
              {"battlefields", std::move(arr)},
              {"sumMeanA", prof.sum_mean_A()},
              {"sumMeanB", prof.sum_mean_B()}};
}

inline json fapa_equilibrium_to_json(const FapaEquilibrium& eq) {
  return json{{"regime", to_string(eq.regime)},
              {"distA", atom_uniform_to_json(eq.distA)},
              {"distB", atom_uniform_to_json(eq.distB)},
              {"payoffA", eq.payoffA},
              {"payoffB", eq.payoffB}};
}

inline json solve_report_to_json(const SolveReport& rep, bool swapped,
                                 bool include_rects = true) {
  json j;
  j["status"] = to_string(rep.status);
  j["delta"] = rep.delta;
  j["swapped"] = swapped;
  if (rep.kappa) j["kappa"] = {rep.kappa->lamA, rep.kappa->lamB};
  if (rep.res) {
    j["gA"] = rep.res->gA;
    j["gB"] = rep.res->gB;
  }
  j["enlargements"] = rep.enlargements;
  j["bisections"] = rep.bisections;
  j["curveSamples"] = rep.curve_samples_total;
  j["zeroHit"] = rep.zero_hit;
  j["candidateUnverified"] = rep.candidate_unverified;
  j["multipleZerosHint"] = rep.multiple_zeros_hint;
  if (rep.trivial_winner)
    j["trivialWinner"] = *rep.trivial_winner == Player::A ? "A" : "B";
  if (!rep.a2_violators.empty()) j["a2Violators"] = rep.a2_violators;
  if (include_rects) {
    json rects = json::array();
    for (const auto& rs : rep.rect_trace) {
      rects.push_back({{"rect", {rs.rect.x_lo, rs.rect.x_hi, rs.rect.y_lo, rs.rect.y_hi}},
                       {"winding", rs.winding},
                       {"zeroHit", rs.zero_hit}});
    }
    j["rects"] = std::move(rects);
  }
  return j;
}

inline json exploitability_to_json(const ExploitabilityReport& rep) {
  return json{{"kind", to_string(rep.kind)},
              {"brPayoff", rep.br_payoff},
              {"eqPayoff", rep.eq_payoff},
              {"epsilonHat", rep.epsilon_hat},
              {"gridStep", rep.grid_step},
              {"mcSamples", rep.mc_samples},
              {"mcStderr", rep.mc_stderr},
              {"wMin", rep.w_min},
              {"wMax", rep.w_max}};
}

}  // namespace blotto
