#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "blotto/fapa.hpp"
#include "blotto/game.hpp"

namespace blotto {

// Pair of multipliers (one per player) pricing budget in the relaxed game
// where the budget constraint binds only in expectation. Every strictly
// positive root of the residual map below induces one equilibrium profile
// of per-battlefield marginals.
struct Kappa {
  double lamA;
  double lamB;
};

// Structural class of a battlefield at a given kappa. These are exactly the
// auction regimes of fapa.hpp evaluated at battlefield stakes
// (uA, uB) = (w*lamA, w*lamB):
//   IP1..IP3 for p >= 0 mirror P1..P3, IN1..IN3 for p < 0 mirror N1..N3.
enum class IndexClass { IP1, IP2, IP3, IN1, IN2, IN3 };

inline const char* to_string(IndexClass c) {
  switch (c) {
    case IndexClass::IP1: return "IP1";
    case IndexClass::IP2: return "IP2";
    case IndexClass::IP3: return "IP3";
    case IndexClass::IN1: return "IN1";
    case IndexClass::IN2: return "IN2";
    default: return "IN3";
  }
}

inline IndexClass classify_battlefield(const Battlefield& b, const Kappa& k) {
  if (!(k.lamA > 0.0) || !(k.lamB > 0.0))
    throw std::invalid_argument("classify_battlefield: kappa must be strictly positive");
  if (b.p >= 0.0) {
    const double t = b.q * b.w * k.lamB - b.p;
    if (t <= 0.0) return IndexClass::IP1;
    if (t <= b.w * k.lamA) return IndexClass::IP2;
    return IndexClass::IP3;
  }
  const double s = b.w * k.lamA + b.p;
  if (s <= 0.0) return IndexClass::IN1;
  if (b.w * k.lamA <= b.q * b.w * k.lamB - b.p) return IndexClass::IN2;
  return IndexClass::IN3;
}

struct BattlefieldMarginals {
  IndexClass cls;
  AtomUniform fA;
  AtomUniform fB;
  double meanA;
  double meanB;
};

struct OudProfile {
  Kappa kappa;
  std::vector<BattlefieldMarginals> battlefields;

  double sum_mean_A() const {
    double s = 0.0;
    for (const auto& m : battlefields) s += m.meanA;
    return s;
  }
  double sum_mean_B() const {
    double s = 0.0;
    for (const auto& m : battlefields) s += m.meanB;
    return s;
  }
};

// Per-battlefield equilibrium marginals at multipliers kappa: battlefield i
// is the single-prize auction with stakes scaled by the own multiplier.
inline OudProfile build_ouds(const GameInstance& g, const Kappa& k) {
  if (!(k.lamA > 0.0) || !(k.lamB > 0.0))
    throw std::invalid_argument("build_ouds: kappa must be strictly positive");
  OudProfile prof;
  prof.kappa = k;
  prof.battlefields.reserve(g.n());
  for (const auto& b : g.battlefields) {
    const FapaInstance f(b.w * k.lamA, b.w * k.lamB, b.p, b.q, g.alpha);
    const FapaEquilibrium eq = equilibrium(f);
    BattlefieldMarginals m;
    m.cls = classify_battlefield(b, k);
    m.fA = eq.distA;
    m.fB = eq.distB;
    m.meanA = m.fA.mean();
    m.meanB = m.fB.mean();
    prof.battlefields.push_back(m);
  }
  return prof;
}

struct Residual {
  double gA;
  double gB;
};

// Residual of the expected-budget conditions at kappa. With
// h_i = min(q_i w_i lamB, w_i lamA + p_i) and the active sets
//   Iplus  = {i : p_i >= 0 and q_i w_i lamB > p_i}
//   Iminus = {i : p_i < 0 and w_i lamA > -p_i}
// (battlefields outside both sets have point-mass marginals and drop out):
//   gA = sum_{Iplus} (h^2 - p^2)/(2qw) + sum_{Iminus} h^2/(2qw) - xB*lamA
//   gB = sum_{Iplus} (h-p)^2/(2qw) + sum_{Iminus} ((h-p)^2 - p^2)/(2qw) - xA*lamB
// These satisfy gA = lamA * (sum_i E[fB_i] - xB) and
// gB = lamB * (sum_i E[fA_i] - xA), so roots spend both budgets exactly in
// expectation and the region {gA <= 0, gB <= 0} is the budget-feasible set.
inline Residual residual(const GameInstance& g, const Kappa& k) {
  if (!(k.lamA > 0.0) || !(k.lamB > 0.0))
    throw std::invalid_argument("residual: kappa must be strictly positive");
  double gA = 0.0;
  double gB = 0.0;
  for (const auto& b : g.battlefields) {
    const double qw = b.q * b.w;
    const double h = std::min(qw * k.lamB, b.w * k.lamA + b.p);
    if (b.p >= 0.0) {
      if (qw * k.lamB > b.p) {
        gA += (h * h - b.p * b.p) / (2.0 * qw);
        gB += (h - b.p) * (h - b.p) / (2.0 * qw);
      }
    } else {
      if (b.w * k.lamA > -b.p) {
        gA += h * h / (2.0 * qw);
        gB += ((h - b.p) * (h - b.p) - b.p * b.p) / (2.0 * qw);
      }
    }
  }
  gA -= g.xB * k.lamA;
  gB -= g.xA * k.lamB;
  return {gA, gB};
}

// Expected equilibrium payoff for A at multipliers kappa, battlefield by
// battlefield in closed form (B gets the complement of the total value).
// Equals sum_i w_i * win_prob_A(fA_i, fB_i, p_i, q_i, alpha) exactly; the
// closed form is the production path, the integral form serves as an
// independent cross-check in the tests.
inline std::pair<double, double> oud_payoffs(const GameInstance& g, const Kappa& k) {
  if (!(k.lamA > 0.0) || !(k.lamB > 0.0))
    throw std::invalid_argument("oud_payoffs: kappa must be strictly positive");
  double pi_a = 0.0;
  for (const auto& b : g.battlefields) {
    const double w = b.w, p = b.p, q = b.q;
    const double lamA = k.lamA, lamB = k.lamB;
    switch (classify_battlefield(b, k)) {
      case IndexClass::IP1:
        pi_a += p > 0.0 ? w : g.alpha * w;
        break;
      case IndexClass::IP2: {
        const double t = q * w * lamB - p;
        pi_a += w * (1.0 - q * lamB / lamA + p / (w * lamA)) +
                t * t / (2.0 * w * lamA * q * lamB);
        break;
      }
      case IndexClass::IP3:
        pi_a += w * lamA / (2.0 * q * lamB);
        break;
      case IndexClass::IN1:
        break;  // B keeps the battlefield: no contribution
      case IndexClass::IN2:
        pi_a += w * lamA / (2.0 * q * lamB) - p * p / (2.0 * w * lamA * q * lamB);
        break;
      default:  // IN3
        pi_a += w - q * lamB * w / (2.0 * lamA);
        break;
    }
  }
  return {pi_a, g.total_value() - pi_a};
}

}  // namespace blotto
