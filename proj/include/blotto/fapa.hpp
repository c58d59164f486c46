#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blotto/atom_uniform.hpp"

namespace blotto {

// All-pay auction for a single prize with an additive head start p for A and
// an effectiveness ratio q scaling B's bid: A takes the prize iff
// x_A > q*x_B - p (ties split by alpha). Payoffs are prize share times own
// value minus own bid.
struct FapaInstance {
  double uA;     // A's value for the prize, > 0
  double uB;     // B's value for the prize, > 0
  double p;      // head start for A, any sign
  double q;      // effectiveness ratio, > 0
  double alpha;  // tie share for A, in [0,1]

  FapaInstance(double ua, double ub, double pp, double qq, double a)
      : uA(ua), uB(ub), p(pp), q(qq), alpha(a) {
    if (!(uA > 0.0) || !(uB > 0.0))
      throw std::invalid_argument("FapaInstance: values must be positive");
    if (!(q > 0.0)) throw std::invalid_argument("FapaInstance: q must be positive");
    if (!std::isfinite(p)) throw std::invalid_argument("FapaInstance: p must be finite");
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::invalid_argument("FapaInstance: alpha outside [0,1]");
  }
};

// The six structural cases of the equilibrium. P-cases have p >= 0, N-cases
// p < 0. Within each sign the discriminating quantity is the opponent's
// reach: t = q*uB - p for the P side, s = (uA + p)/q for the N side.
//   P1: t <= 0       both players sit at 0; A keeps the prize.
//   P2: 0 < t <= uA  mixed; A is favoured and earns uA - t.
//   P3: t > uA       mixed; B is favoured and earns uB - (uA + p)/q.
//   N1: s <= 0       both players sit at 0; B keeps the prize.
//   N2: 0 < s <= uB  mixed; B is favoured and earns uB - s.
//   N3: s > uB       mixed; A is favoured and earns uA - q*uB + p.
// Boundary ties use exact floating-point comparisons, matching the
// inclusive bounds above.
enum class FapaRegime { P1, P2, P3, N1, N2, N3 };

inline const char* to_string(FapaRegime r) {
  switch (r) {
    case FapaRegime::P1: return "P1";
    case FapaRegime::P2: return "P2";
    case FapaRegime::P3: return "P3";
    case FapaRegime::N1: return "N1";
    case FapaRegime::N2: return "N2";
    default: return "N3";
  }
}

inline FapaRegime classify(const FapaInstance& f) {
  if (f.p >= 0.0) {
    const double t = f.q * f.uB - f.p;
    if (t <= 0.0) return FapaRegime::P1;
    if (t <= f.uA) return FapaRegime::P2;
    return FapaRegime::P3;
  }
  const double s = (f.uA + f.p) / f.q;
  if (s <= 0.0) return FapaRegime::N1;
  if (s <= f.uB) return FapaRegime::N2;
  return FapaRegime::N3;
}

struct FapaEquilibrium {
  FapaRegime regime;
  AtomUniform distA;
  AtomUniform distB;
  double payoffA;
  double payoffB;
};

// Unique mixed (or pure, in the degenerate regimes) equilibrium.
inline FapaEquilibrium equilibrium(const FapaInstance& f) {
  FapaEquilibrium eq;
  eq.regime = classify(f);
  const double uA = f.uA, uB = f.uB, p = f.p, q = f.q;
  switch (eq.regime) {
    case FapaRegime::P1: {
      // q*uB <= p: B cannot reach A's head start even by bidding the full
      // value of the prize. Both bid 0; A holds the prize at the 0-0 tie
      // (p == 0 would split by alpha but forces q*uB <= 0, impossible).
      eq.distA = AtomUniform::point_mass_at_zero();
      eq.distB = AtomUniform::point_mass_at_zero();
      const double share = p > 0.0 ? 1.0 : f.alpha;
      eq.payoffA = uA * share;
      eq.payoffB = uB * (1.0 - share);
      break;
    }
    case FapaRegime::P2: {
      const double t = q * uB - p;
      eq.distA = AtomUniform(p / (q * uB), 0.0, t);
      eq.distB = AtomUniform(1.0 - q * uB / uA + p / uA, p / q, uB);
      eq.payoffA = uA - t;
      eq.payoffB = 0.0;
      break;
    }
    case FapaRegime::P3: {
      eq.distA = AtomUniform(1.0 - uA / (q * uB), 0.0, uA);
      eq.distB = AtomUniform(0.0, p / q, (uA + p) / q);
      eq.payoffA = 0.0;
      eq.payoffB = uB - (uA + p) / q;
      break;
    }
    case FapaRegime::N1: {
      // A cannot reach B's effective head start: -p >= uA.
      eq.distA = AtomUniform::point_mass_at_zero();
      eq.distB = AtomUniform::point_mass_at_zero();
      eq.payoffA = 0.0;
      eq.payoffB = uB;
      break;
    }
    case FapaRegime::N2: {
      const double s = (uA + p) / q;
      eq.distA = AtomUniform(1.0 - (uA + p) / (q * uB), -p, uA);
      eq.distB = AtomUniform(-p / uA, 0.0, s);
      eq.payoffA = 0.0;
      eq.payoffB = uB - s;
      break;
    }
    default: {  // N3
      eq.distA = AtomUniform(0.0, -p, q * uB - p);
      eq.distB = AtomUniform(1.0 - q * uB / uA, 0.0, uB);
      eq.payoffA = uA - q * uB + p;
      eq.payoffB = 0.0;
      break;
    }
  }
  return eq;
}

// Expected payoff of a pure bid x for A against B's mixed strategy:
//   uA * [P(q*B - p < x) + alpha * P(q*B - p == x)] - x.
// The tie term can fire only at x == -p where B's atom sits.
inline double fapa_payoff_pure_A(const FapaInstance& f, const AtomUniform& distB,
                                 double x) {
  const double c = (x + f.p) / f.q;
  double win = distB.cdf_strict(c);
  if (c == 0.0) win += f.alpha * distB.atom_mass;
  return f.uA * win - x;
}

// Expected payoff of a pure bid y for B against A's mixed strategy:
//   uB * [P(A < q*y - p) + (1 - alpha) * P(A == q*y - p)] - y.
inline double fapa_payoff_pure_B(const FapaInstance& f, const AtomUniform& distA,
                                 double y) {
  const double c = f.q * y - f.p;
  double win = distA.cdf_strict(c);
  if (c == 0.0) win += (1.0 - f.alpha) * distA.atom_mass;
  return f.uB * win - y;
}

struct DeviationGap {
  double gapA;  // best grid deviation payoff for A minus equilibrium payoff
  double gapB;
};

// Scans pure deviations on the grid {0, step, 2*step, ...} capped at the
// deviator's own value (larger bids are strictly dominated) and reports the
// largest improvement over the equilibrium payoff for each player. At an
// exact equilibrium both gaps are <= 0 up to floating-point noise, for any
// grid: on-support bids tie the equilibrium payoff, all others fall short.
inline DeviationGap deviation_gap(const FapaInstance& f, const FapaEquilibrium& eq,
                                  double grid_step) {
  if (!(grid_step > 0.0)) throw std::invalid_argument("deviation_gap: step must be positive");
  double best_a = -std::numeric_limits<double>::infinity();
  for (double x = 0.0; x <= f.uA + grid_step * 0.5; x += grid_step)
    best_a = std::max(best_a, fapa_payoff_pure_A(f, eq.distB, std::min(x, f.uA)));
  double best_b = -std::numeric_limits<double>::infinity();
  for (double y = 0.0; y <= f.uB + grid_step * 0.5; y += grid_step)
    best_b = std::max(best_b, fapa_payoff_pure_B(f, eq.distA, std::min(y, f.uB)));
  return {best_a - eq.payoffA, best_b - eq.payoffB};
}

}  // namespace blotto
