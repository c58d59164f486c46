#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blotto/rng.hpp"

namespace blotto {

// Mixture of a point mass at 0 and a uniform block on [lo, hi].
// Every equilibrium marginal produced by this library lives in this family,
// so it is the single distribution type shared by all modules.
//
// Invariants: atom_mass in [0, 1]; 0 <= lo <= hi; if atom_mass < 1 then
// hi > lo (the block carries probability and must be non-degenerate); if
// atom_mass == 1 the block is unused and is pinned to lo == hi == 0.
struct AtomUniform {
  double atom_mass = 1.0;
  double lo = 0.0;
  double hi = 0.0;

  AtomUniform() = default;

  AtomUniform(double atom, double l, double h) : atom_mass(atom), lo(l), hi(h) {
    if (!(atom_mass >= 0.0 && atom_mass <= 1.0))
      throw std::invalid_argument("AtomUniform: atom_mass outside [0,1]");
    if (atom_mass < 1.0) {
      if (!(lo >= 0.0 && hi > lo))
        throw std::invalid_argument("AtomUniform: need 0 <= lo < hi when atom_mass < 1");
    } else {
      if (lo != 0.0 || hi != 0.0)
        throw std::invalid_argument("AtomUniform: point mass must have lo == hi == 0");
    }
  }

  static AtomUniform point_mass_at_zero() { return AtomUniform(); }

  // P(X <= x); right-continuous.
  double cdf(double x) const {
    if (x < 0.0) return 0.0;
    if (atom_mass >= 1.0) return 1.0;
    const double t = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    return atom_mass + (1.0 - atom_mass) * t;
  }

  // P(X < x); differs from cdf only at the atom and (measure-zero) block
  // endpoints of the continuous part, i.e. exactly at x == 0.
  double cdf_strict(double x) const {
    if (x <= 0.0) return 0.0;
    if (atom_mass >= 1.0) return 1.0;
    const double t = std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    return atom_mass + (1.0 - atom_mass) * t;
  }

  // P(X == x): nonzero only at the atom.
  double mass_at(double x) const { return x == 0.0 ? atom_mass : 0.0; }

  double mean() const {
    if (atom_mass >= 1.0) return 0.0;
    return (1.0 - atom_mass) * 0.5 * (lo + hi);
  }

  double sample(Rng& rng) const {
    const double u = rng.uniform01();
    if (u < atom_mass) return 0.0;
    return lo + rng.uniform01() * (hi - lo);
  }
};

namespace detail {

// P(U > c) for U ~ Uniform[a1, a2], as a function of the threshold c.
inline double unif_tail(double a1, double a2, double c) {
  if (c <= a1) return 1.0;
  if (c >= a2) return 0.0;
  return (a2 - c) / (a2 - a1);
}

// Integral of c -> P(U_A > c) over [c1, c2], U_A ~ Uniform[a1, a2].
// The integrand is 1 below a1, linear on [a1, a2], 0 above a2.
inline double unif_tail_integral(double a1, double a2, double c1, double c2) {
  double acc = 0.0;
  // Portion of [c1, c2] below a1 contributes its full length.
  acc += std::max(0.0, std::min(c2, a1) - c1);
  // Portion intersecting [a1, a2] contributes the trapezoid under the line.
  const double l = std::max(c1, a1);
  const double h = std::min(c2, a2);
  if (h > l) {
    const double fl = a2 - l;
    const double fh = a2 - h;
    acc += 0.5 * (fl * fl - fh * fh) / (a2 - a1);
  }
  return acc;
}

}  // namespace detail

// Exact P(A beats q*B - p) with the tie share alpha going to A:
//   win = P(A > q*B - p) + alpha * P(A == q*B - p),
// A ~ dA, B ~ dB independent. Tie probability is nonzero only when both
// atoms meet, i.e. A == 0, B == 0 and p == 0; every other coincidence has
// measure zero because the continuous parts are uniform blocks.
inline double win_prob_A(const AtomUniform& dA, const AtomUniform& dB,
                         double p, double q, double alpha) {
  if (!(q > 0.0)) throw std::invalid_argument("win_prob_A: q must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("win_prob_A: alpha outside [0,1]");

  const double aA = dA.atom_mass;
  const double aB = dB.atom_mass;
  double win = 0.0;

  // Atom vs atom: 0 vs -p.
  if (aA > 0.0 && aB > 0.0) {
    double share = 0.0;
    if (p > 0.0) share = 1.0;
    else if (p == 0.0) share = alpha;
    win += aA * aB * share;
  }
  // A at its atom vs the block of B: 0 > q*u - p  <=>  u < p/q.
  if (aA > 0.0 && aB < 1.0) {
    win += aA * (1.0 - aB) * (1.0 - detail::unif_tail(dB.lo, dB.hi, p / q));
  }
  // Block of A vs the atom of B: u > -p.
  if (aA < 1.0 && aB > 0.0) {
    win += (1.0 - aA) * aB * detail::unif_tail(dA.lo, dA.hi, -p);
  }
  // Block vs block: P(U_A > q*U_B - p), exact via the tail integral with the
  // substitution c = q*u_B - p.
  if (aA < 1.0 && aB < 1.0) {
    const double c1 = q * dB.lo - p;
    const double c2 = q * dB.hi - p;
    const double integral = detail::unif_tail_integral(dA.lo, dA.hi, c1, c2);
    win += (1.0 - aA) * (1.0 - aB) * integral / (q * (dB.hi - dB.lo));
  }
  return win;
}

}  // namespace blotto
