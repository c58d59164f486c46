#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blotto/rng.hpp"

namespace blotto {

enum class Player { A, B };

// A's share of a single battlefield given effective scores x vs y:
// full win above, loss below, alpha on an exact tie. Comparisons are exact
// floating-point comparisons on purpose; ties between continuous quantities
// are meaningful only when both sides sit on constructed common values.
inline double blotto_share(double x, double y, double alpha) {
  if (x > y) return 1.0;
  if (x == y) return alpha;
  return 0.0;
}

struct Battlefield {
  double w;  // value, > 0
  double p;  // additive head start for A (may be negative: head start for B)
  double q;  // effectiveness ratio scaling B's allocation, > 0
};

// Two-player budgeted allocation game over n battlefields. Player A wins
// battlefield i iff  xA_i > q_i * xB_i - p_i  (ties split by alpha).
//
// Instances are stored in normalized orientation with xA <= xB. When the
// input has xA > xB the constructor swaps the players; the swap transforms
// (p, q, alpha) -> (-p/q, 1/q, 1-alpha) per battlefield, preserves the win
// rule, and is recorded in `swapped` so callers can map results back. The
// transform is an involution, so `original()` recovers the input exactly.
struct GameInstance {
  double xA;
  double xB;
  double alpha;
  std::vector<Battlefield> battlefields;
  bool swapped = false;

  GameInstance(double budget_a, double budget_b, double tie_alpha,
               std::vector<Battlefield> bfs)
      : xA(budget_a), xB(budget_b), alpha(tie_alpha), battlefields(std::move(bfs)) {
    validate();
    if (xA > xB) {
      std::swap(xA, xB);
      alpha = 1.0 - alpha;
      for (auto& b : battlefields) {
        b.p = -b.p / b.q;
        b.q = 1.0 / b.q;
      }
      swapped = true;
    }
  }

  std::size_t n() const { return battlefields.size(); }

  double total_value() const {
    double s = 0.0;
    for (const auto& b : battlefields) s += b.w;
    return s;
  }

  // The instance as given before normalization.
  GameInstance original() const {
    if (!swapped) return *this;
    GameInstance g = *this;
    std::swap(g.xA, g.xB);
    g.alpha = 1.0 - g.alpha;
    for (auto& b : g.battlefields) {
      b.p = -b.p / b.q;
      b.q = 1.0 / b.q;
    }
    g.swapped = false;
    return g;
  }

 private:
  void validate() const {
    if (battlefields.empty())
      throw std::invalid_argument("GameInstance: need at least one battlefield");
    if (!(xA > 0.0) || !(xB > 0.0) || !std::isfinite(xA) || !std::isfinite(xB))
      throw std::invalid_argument("GameInstance: budgets must be positive finite");
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("GameInstance: alpha outside [0,1]");
    for (const auto& b : battlefields) {
      if (!(b.w > 0.0) || !std::isfinite(b.w))
        throw std::invalid_argument("GameInstance: battlefield value must be positive finite");
      if (!(b.q > 0.0) || !std::isfinite(b.q))
        throw std::invalid_argument("GameInstance: effectiveness ratio must be positive finite");
      if (!std::isfinite(b.p))
        throw std::invalid_argument("GameInstance: head start must be finite");
    }
  }
};

// Pure allocation for one player: nonnegative, component per battlefield,
// total within the budget up to a 1e-9 relative tolerance (exact budget
// arithmetic is not required of callers; sampling helpers do hit it).
struct PureAllocation {
  std::vector<double> x;

  static PureAllocation checked(std::vector<double> v, double budget) {
    double sum = 0.0;
    for (double xi : v) {
      if (!(xi >= 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("PureAllocation: components must be nonnegative finite");
      sum += xi;
    }
    if (sum > budget * (1.0 + 1e-9))
      throw std::invalid_argument("PureAllocation: total exceeds budget");
    return PureAllocation{std::move(v)};
  }
};

// Expected shares of the battlefield values under pure play. Constant-sum:
// the two payoffs add to the total battlefield value exactly by construction.
inline std::pair<double, double> pure_payoffs(const GameInstance& g,
                                              std::span<const double> alloc_a,
                                              std::span<const double> alloc_b) {
  if (alloc_a.size() != g.n() || alloc_b.size() != g.n())
    throw std::invalid_argument("pure_payoffs: allocation size mismatch");
  double pi_a = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const auto& b = g.battlefields[i];
    pi_a += b.w * blotto_share(alloc_a[i], b.q * alloc_b[i] - b.p, g.alpha);
  }
  return {pi_a, g.total_value() - pi_a};
}

// Feasibility gates for the mixed-equilibrium machinery.
//
// a1_holds: both aggregate conditions
//     sum_i (q_i xB - p_i) >= xA   and   sum_i (xA + p_i)/q_i >= xB
// hold. When the first fails, A can win every battlefield outright even
// against B spending the full budget everywhere (trivial_winner = A);
// symmetrically for B when the second fails.
//
// a2_violators: battlefields where one player wins with zero allocation no
// matter what, i.e. q_i xB - p_i < 0 (free win for A) or (xA + p_i)/q_i < 0
// (free win for B).
struct AssumptionStatus {
  bool a1_holds = true;
  std::vector<std::size_t> a2_violators;
  std::optional<Player> trivial_winner;

  bool holds() const { return a1_holds && a2_violators.empty(); }
};

inline AssumptionStatus check_assumptions(const GameInstance& g) {
  AssumptionStatus st;
  double sum_bound_a = 0.0;
  double sum_bound_b = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    const auto& b = g.battlefields[i];
    const double cap_a = b.q * g.xB - b.p;       // what beating B everywhere costs A here
    const double cap_b = (g.xA + b.p) / b.q;     // what beating A everywhere costs B here
    sum_bound_a += cap_a;
    sum_bound_b += cap_b;
    if (cap_a < 0.0 || cap_b < 0.0) st.a2_violators.push_back(i);
  }
  if (sum_bound_a < g.xA) {
    st.a1_holds = false;
    st.trivial_winner = Player::A;
  } else if (sum_bound_b < g.xB) {
    st.a1_holds = false;
    st.trivial_winner = Player::B;
  }
  return st;
}

// Random instance in the distribution used throughout the experiment
// tooling: integer budgets 1..100 ordered so xA <= xB; values uniform on
// (0, xA]; head starts drawn from U(0, xA), U(-xA, 0) or pinned to 0 with
// probability 1/3 each; effectiveness ratios from U(1, xA), U(1/xA, 1) or
// pinned to 1 with probability 1/3 each. alpha is fixed at 1/2.
inline GameInstance random_instance(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_instance: n must be >= 1");
  Rng rng(seed);
  double xa = static_cast<double>(rng.uniform_int(1, 100));
  double xb = static_cast<double>(rng.uniform_int(1, 100));
  if (xa > xb) std::swap(xa, xb);
  std::vector<Battlefield> bfs;
  bfs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Battlefield b;
    b.w = xa * (1.0 - rng.uniform01());  // in (0, xA]
    switch (rng.uniform_int(0, 2)) {
      case 0: b.p = rng.uniform(0.0, xa); break;
      case 1: b.p = rng.uniform(-xa, 0.0); break;
      default: b.p = 0.0; break;
    }
    switch (rng.uniform_int(0, 2)) {
      case 0: b.q = rng.uniform(1.0, xa); break;
      case 1: b.q = rng.uniform(1.0 / xa, 1.0); break;
      default: b.q = 1.0; break;
    }
    bfs.push_back(b);
  }
  return GameInstance(xa, xb, 0.5, std::move(bfs));
}

}  // namespace blotto
