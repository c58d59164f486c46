#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/oud.hpp"
#include "blotto/rng.hpp"

namespace blotto {

// GlIndependent: draw each battlefield independently from its equilibrium
// marginal; the budget binds only in expectation. IuRescaled: draw the same
// way, then rescale the vector onto the budget simplex so every realization
// is feasible for the fixed-budget game.
enum class StrategyKind { GlIndependent, IuRescaled };

inline const char* to_string(StrategyKind k) {
  return k == StrategyKind::GlIndependent ? "gl" : "iu";
}

struct StrategyProfile {
  StrategyKind kind;
  OudProfile profile;  // carries both players' marginals
};

inline const AtomUniform& marginal_of(const BattlefieldMarginals& m, Player pl) {
  return pl == Player::A ? m.fA : m.fB;
}

inline std::vector<double> sample_gl(const OudProfile& prof, Player pl, Rng& rng) {
  std::vector<double> x;
  x.reserve(prof.battlefields.size());
  for (const auto& m : prof.battlefields) x.push_back(marginal_of(m, pl).sample(rng));
  return x;
}

// Independent draws rescaled to spend the budget exactly. The last
// component absorbs the floating-point rounding of the proportional split
// (at most ~1e-12 of the budget, clamped at zero). An all-zero draw falls
// back to the even split.
inline std::vector<double> sample_iu(const OudProfile& prof, Player pl, double budget,
                                     Rng& rng) {
  std::vector<double> x = sample_gl(prof, pl, rng);
  double total = 0.0;
  for (double v : x) total += v;
  if (total == 0.0) {
    std::fill(x.begin(), x.end(), budget / static_cast<double>(x.size()));
    return x;
  }
  double spent = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    x[i] = x[i] / total * budget;
    spent += x[i];
  }
  x.back() = std::max(0.0, budget - spent);
  return x;
}

struct McPayoff {
  double mean;       // player A's expected payoff, in value units
  double std_error;  // standard error of the mean
  long draws;
};

// Pairs independent draws of the two players and averages A's pure payoff.
// Constant-sum makes B's estimate total_value - mean with the same error.
inline McPayoff mc_payoff(const GameInstance& g, const StrategyProfile& sa,
                          const StrategyProfile& sb, long draws, Rng& rng) {
  if (draws <= 0) throw std::invalid_argument("mc_payoff: draws must be positive");
  double mean = 0.0;
  double m2 = 0.0;
  for (long t = 0; t < draws; ++t) {
    const std::vector<double> xa = sa.kind == StrategyKind::GlIndependent
                                       ? sample_gl(sa.profile, Player::A, rng)
                                       : sample_iu(sa.profile, Player::A, g.xA, rng);
    const std::vector<double> xb = sb.kind == StrategyKind::GlIndependent
                                       ? sample_gl(sb.profile, Player::B, rng)
                                       : sample_iu(sb.profile, Player::B, g.xB, rng);
    const double pi = pure_payoffs(g, xa, xb).first;
    const double d = pi - mean;
    mean += d / static_cast<double>(t + 1);
    m2 += d * (pi - mean);
  }
  const double var = draws > 1 ? m2 / static_cast<double>(draws - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(draws)), draws};
}

struct BestResponse {
  std::vector<double> x;
  double payoff;
};

namespace detail {

// Exact best response for player A over allocations on the grid
// {0, step, ..., K*step}^n with sum at most K*step, by dynamic programming
// over battlefields and budget units. win(i, v) must return A's expected
// share probability of battlefield i under bid v.
template <class WinFn>
BestResponse best_response_budgeted(const GameInstance& g, double grid_step, WinFn&& win) {
  if (!(grid_step > 0.0))
    throw std::invalid_argument("best_response_gl: grid_step must be positive");
  const std::size_t n = g.n();
  const auto K = static_cast<std::size_t>(std::floor(g.xA / grid_step + 1e-9));
  if (static_cast<double>(n) * static_cast<double>(K + 1) > 1e8)
    throw std::invalid_argument(
        "best_response_gl: more than 1e8 DP cells; use a coarser grid_step");

  // value[i][j]: A's expected value on battlefield i when bidding j*step.
  std::vector<std::vector<double>> value(n, std::vector<double>(K + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= K; ++j)
      value[i][j] = g.battlefields[i].w * win(i, static_cast<double>(j) * grid_step);

  std::vector<double> dp(K + 1, 0.0);
  std::vector<std::vector<std::uint32_t>> choice(n, std::vector<std::uint32_t>(K + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> next(K + 1, -1.0);
    for (std::size_t j = 0; j <= K; ++j) {
      double best = -1.0;
      std::uint32_t arg = 0;
      for (std::size_t k = 0; k <= j; ++k) {
        const double v = dp[j - k] + value[i][k];
        if (v > best) {
          best = v;
          arg = static_cast<std::uint32_t>(k);
        }
      }
      next[j] = best;
      choice[i][j] = arg;
    }
    dp.swap(next);
  }

  BestResponse br;
  br.payoff = dp[K];
  br.x.assign(n, 0.0);
  std::size_t j = K;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t k = choice[i][j];
    br.x[i] = static_cast<double>(k) * grid_step;
    j -= k;
  }
  return br;
}

}  // namespace detail

// Best response for A against B's exact per-battlefield marginals.
inline BestResponse best_response_gl(const GameInstance& g,
                                     const std::vector<AtomUniform>& opp_b,
                                     double grid_step) {
  if (opp_b.size() != g.n())
    throw std::invalid_argument("best_response_gl: marginal count mismatch");
  return detail::best_response_budgeted(g, grid_step, [&](std::size_t i, double v) {
    const auto& b = g.battlefields[i];
    const double c = (v + b.p) / b.q;
    double wprob = opp_b[i].cdf_strict(c);
    if (c == 0.0) wprob += g.alpha * opp_b[i].atom_mass;
    return wprob;
  });
}

// Best response for A against per-battlefield empirical distributions of
// B's bids (each inner vector must be sorted ascending).
inline BestResponse best_response_vs_samples(
    const GameInstance& g, const std::vector<std::vector<double>>& opp_b_sorted,
    double grid_step) {
  if (opp_b_sorted.size() != g.n())
    throw std::invalid_argument("best_response_vs_samples: sample set count mismatch");
  return detail::best_response_budgeted(g, grid_step, [&](std::size_t i, double v) {
    const auto& s = opp_b_sorted[i];
    if (s.empty()) return 1.0;
    const auto& b = g.battlefields[i];
    const double c = (v + b.p) / b.q;
    const auto lo = std::lower_bound(s.begin(), s.end(), c) - s.begin();
    const auto hi = std::upper_bound(s.begin(), s.end(), c) - s.begin();
    const double m = static_cast<double>(s.size());
    return (static_cast<double>(lo) + g.alpha * static_cast<double>(hi - lo)) / m;
  });
}

struct ExploitabilityReport {
  StrategyKind kind;
  double br_payoff;    // A's best grid deviation against B's strategy
  double eq_payoff;    // A's Monte-Carlo payoff when both follow the profile
  double epsilon_hat;  // br_payoff - eq_payoff
  double grid_step;
  long mc_samples;
  double mc_stderr;
  double w_min;  // battlefield value range, for scale context
  double w_max;
};

// Gain of player A's best pure grid deviation over following the profile.
// For GlIndependent the deviation target is B's exact marginals; for
// IuRescaled it is the empirical per-battlefield distribution of B's
// rescaled bids fitted from `samples` draws. eq_payoff always comes from a
// fresh Monte-Carlo run of `samples` paired draws.
inline ExploitabilityReport exploitability(const GameInstance& g,
                                           const StrategyProfile& sp, double grid_step,
                                           long samples, std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("exploitability: samples must be positive");
  BestResponse br;
  if (sp.kind == StrategyKind::GlIndependent) {
    std::vector<AtomUniform> opp;
    opp.reserve(g.n());
    for (const auto& m : sp.profile.battlefields) opp.push_back(m.fB);
    br = best_response_gl(g, opp, grid_step);
  } else {
    Rng fit_rng(derive_seed(seed, 0));
    std::vector<std::vector<double>> draws(g.n());
    for (auto& d : draws) d.reserve(samples);
    for (long t = 0; t < samples; ++t) {
      const std::vector<double> xb = sample_iu(sp.profile, Player::B, g.xB, fit_rng);
      for (std::size_t i = 0; i < g.n(); ++i) draws[i].push_back(xb[i]);
    }
    for (auto& d : draws) std::sort(d.begin(), d.end());
    br = best_response_vs_samples(g, draws, grid_step);
  }

  Rng mc_rng(derive_seed(seed, 1));
  const McPayoff eq = mc_payoff(g, sp, sp, samples, mc_rng);

  ExploitabilityReport rep;
  rep.kind = sp.kind;
  rep.br_payoff = br.payoff;
  rep.eq_payoff = eq.mean;
  rep.epsilon_hat = br.payoff - eq.mean;
  rep.grid_step = grid_step;
  rep.mc_samples = samples;
  rep.mc_stderr = eq.std_error;
  rep.w_min = g.battlefields.front().w;
  rep.w_max = g.battlefields.front().w;
  for (const auto& b : g.battlefields) {
    rep.w_min = std::min(rep.w_min, b.w);
    rep.w_max = std::max(rep.w_max, b.w);
  }
  return rep;
}

}  // namespace blotto
