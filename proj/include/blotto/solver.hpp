#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/oud.hpp"

namespace blotto {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rect {
  double x_lo, x_hi, y_lo, y_hi;

  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double diameter() const { return std::max(width(), height()); }
  Kappa center() const { return {0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)}; }
};

// Counterclockwise boundary point at parameter t in [0, 4]: one unit of t
// per side, starting at (x_lo, y_lo) and walking bottom, right, top, left.
inline Kappa rect_boundary_point(const Rect& r, double t) {
  const int side = std::min(3, static_cast<int>(t));
  const double f = t - side;
  switch (side) {
    case 0: return {r.x_lo + f * r.width(), r.y_lo};
    case 1: return {r.x_hi, r.y_lo + f * r.height()};
    case 2: return {r.x_hi - f * r.width(), r.y_hi};
    default: return {r.x_lo, r.y_hi - f * r.height()};
  }
}

struct TraceRow {
  std::string phase;
  double t;
  double x;   // lamA of the boundary sample
  double y;   // lamB of the boundary sample
  double gA;
  double gB;
};

struct WindingResult {
  int winding = 0;
  bool zero_hit = false;                  // a sample landed within eps_zero of the origin
  std::optional<Kappa> zero_sample;
  std::optional<Kappa> candidate;         // first sample with gA <= 0 and gB <= 0
  std::optional<Residual> candidate_res;
  long samples = 0;
};

namespace detail {

struct BoundarySample {
  double t;
  Kappa k;
  Residual g;
};

template <class Fn>
class WindingWalk {
 public:
  WindingWalk(Fn& fn, const Rect& r, double eps_zero, int max_depth,
              std::vector<TraceRow>* trace, const std::string& phase)
      : fn_(fn), rect_(r), eps_zero_(eps_zero), max_depth_(max_depth),
        trace_(trace), phase_(phase) {}

  WindingResult run() {
    constexpr int kSeedsPerSide = 8;
    std::vector<BoundarySample> seeds;
    for (int side = 0; side < 4 && !stop_; ++side)
      for (int j = 0; j < kSeedsPerSide && !stop_; ++j)
        seeds.push_back(eval(side + static_cast<double>(j) / kSeedsPerSide));
    if (stop_) return res_;

    std::vector<BoundarySample> poly;
    poly.push_back(seeds.front());
    for (std::size_t i = 0; i + 1 <= seeds.size() && !stop_; ++i) {
      BoundarySample next = (i + 1 < seeds.size()) ? seeds[i + 1] : seeds.front();
      if (i + 1 == seeds.size()) next.t = 4.0;  // close the loop; same point as t = 0
      refine(poly, seeds[i], next, 0);
    }
    if (stop_) return res_;

    int w = 0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      const Residual& a = poly[i].g;
      const Residual& b = poly[i + 1].g;
      if (a.gA > 0.0 && b.gA > 0.0) {
        if (a.gB < 0.0 && b.gB >= 0.0) ++w;
        else if (a.gB >= 0.0 && b.gB < 0.0) --w;
      }
    }
    res_.winding = w;
    return res_;
  }

 private:
  static double norm_inf(const Residual& g) {
    return std::max(std::abs(g.gA), std::abs(g.gB));
  }

  BoundarySample eval(double t) {
    const Kappa k = rect_boundary_point(rect_, t);
    const Residual g = fn_(k);
    ++res_.samples;
    if (trace_) trace_->push_back({phase_, t, k.lamA, k.lamB, g.gA, g.gB});
    if (!res_.candidate && g.gA <= 0.0 && g.gB <= 0.0) {
      res_.candidate = k;
      res_.candidate_res = g;
    }
    if (norm_inf(g) < eps_zero_) {
      res_.zero_hit = true;
      res_.zero_sample = k;
      stop_ = true;
    }
    return {t, k, g};
  }

  // Keep the segment if the image chord is shorter than both endpoints'
  // distances to the origin; such a chord cannot sweep half a turn around
  // the origin, so sign-based crossing counts on the polygon are exact.
  // Otherwise split at the parameter midpoint.
  void refine(std::vector<BoundarySample>& poly, const BoundarySample& a,
              const BoundarySample& b, int depth) {
    if (stop_) return;
    const double chord = std::max(std::abs(a.g.gA - b.g.gA), std::abs(a.g.gB - b.g.gB));
    if (chord < std::min(norm_inf(a.g), norm_inf(b.g))) {
      poly.push_back(b);
      return;
    }
    if (depth >= max_depth_) {
      char buf[256];
      std::snprintf(buf, sizeof(buf),
                    "winding_number: refinement depth %d exceeded on boundary segment "
                    "t in [%.17g, %.17g], kappa (%.17g, %.17g) -> (%.17g, %.17g)",
                    max_depth_, a.t, b.t, a.k.lamA, a.k.lamB, b.k.lamA, b.k.lamB);
      throw SolverError(buf);
    }
    const BoundarySample mid = eval(0.5 * (a.t + b.t));
    if (stop_) return;
    refine(poly, a, mid, depth + 1);
    refine(poly, mid, b, depth + 1);
  }

  Fn& fn_;
  Rect rect_;
  double eps_zero_;
  int max_depth_;
  std::vector<TraceRow>* trace_;
  std::string phase_;
  bool stop_ = false;
  WindingResult res_;
};

}  // namespace detail

// Winding number of the image of the rectangle boundary under `fn` around
// the origin. The boundary is walked counterclockwise, sampled adaptively
// (see the chord rule above), and signed crossings of the positive-gA
// half-axis are counted: a step from {gA > 0, gB < 0} to {gA > 0, gB >= 0}
// counts +1, the reverse -1. Samples within eps_zero of the origin abort
// the walk: the boundary itself carries a root and the enclosing count is
// undefined, so the near-root sample is reported instead (zero_hit).
template <class Fn>
WindingResult winding_number(Fn&& fn, const Rect& r, double eps_zero,
                             int max_refine_depth = 48,
                             std::vector<TraceRow>* trace = nullptr,
                             const std::string& phase = "") {
  detail::WindingWalk<std::remove_reference_t<Fn>> walk(fn, r, eps_zero,
                                                        max_refine_depth, trace, phase);
  return walk.run();
}

enum class SolveStatus { Solved, TrivialGame, BudgetExceeded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "Solved";
    case SolveStatus::TrivialGame: return "TrivialGame";
    default: return "BudgetExceeded";
  }
}

struct SolverConfig {
  double delta = 1e-6;     // target rectangle diameter; must be > 0
  double m0 = 0.0;         // initial lower corner; <= 0 selects 1e-3 * min(xA, 1)
  double M0 = 0.0;         // initial upper corner; <= 0 selects 10 * xA
  int max_enlarge = 40;    // doublings of the initial square before giving up
  int max_bisect = 400;    // rectangle splits before giving up
  double eps_zero = 0.0;   // near-root threshold; <= 0 selects 1e-12 * xB * M0
  int max_refine_depth = 48;
};

struct RectStep {
  Rect rect;
  int winding;
  bool zero_hit;
};

struct SolveReport {
  SolveStatus status = SolveStatus::BudgetExceeded;
  std::optional<Kappa> kappa;
  std::optional<Residual> res;
  std::vector<RectStep> rect_trace;
  int enlargements = 0;
  int bisections = 0;
  long curve_samples_total = 0;
  bool zero_hit = false;               // accepted a boundary sample as the root
  bool candidate_unverified = false;   // fell back to the final rectangle center
  bool multiple_zeros_hint = false;    // discarded half also had nonzero winding
  std::optional<Player> trivial_winner;
  std::vector<std::size_t> a2_violators;
  double delta = 0.0;
};

// Locates a strictly positive root of the budget residual by rectangle
// dichotomy on winding numbers: grow an initial square [m, M]^2 until its
// boundary image winds around the origin, then repeatedly halve the
// rectangle along its longer side (ties split the x side), descending into
// a half whose boundary winds, preferring the lower/left half. Stops once
// the rectangle diameter is at most delta and returns a point of that
// rectangle whose residual is componentwise <= 0 (boundary sample if one
// was seen, else an 8x8 interior probe, else the center flagged
// candidate_unverified). Instances failing the feasibility gates are
// reported TrivialGame without solving.
inline SolveReport solve(const GameInstance& g, const SolverConfig& cfg = {},
                         std::vector<TraceRow>* trace = nullptr) {
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("solve: delta must be > 0");
  SolveReport rep;
  rep.delta = cfg.delta;

  const AssumptionStatus st = check_assumptions(g);
  if (!st.holds()) {
    rep.status = SolveStatus::TrivialGame;
    rep.trivial_winner = st.trivial_winner;
    rep.a2_violators = st.a2_violators;
    return rep;
  }

  double m = cfg.m0 > 0.0 ? cfg.m0 : 1e-3 * std::min(g.xA, 1.0);
  double M = cfg.M0 > 0.0 ? cfg.M0 : 10.0 * g.xA;
  if (!(m < M)) throw std::invalid_argument("solve: need m0 < M0");
  const double eps_zero = cfg.eps_zero > 0.0 ? cfg.eps_zero : 1e-12 * g.xB * M;

  auto gfn = [&g](const Kappa& k) { return residual(g, k); };
  auto finish_solved = [&rep](const Kappa& k, const Residual& r) {
    rep.status = SolveStatus::Solved;
    rep.kappa = k;
    rep.res = r;
  };
  // A boundary sample numerically indistinguishable from a root: accept it
  // outright when it is budget-feasible, otherwise keep shrinking around it.
  auto try_zero_sample = [&](const WindingResult& wr) {
    rep.zero_hit = true;
    const Residual rr = gfn(*wr.zero_sample);
    if (rr.gA <= 0.0 && rr.gB <= 0.0) {
      finish_solved(*wr.zero_sample, rr);
      return true;
    }
    return false;
  };

  Rect cur{m, M, m, M};
  WindingResult cur_win;
  int phase_idx = 0;
  for (;;) {
    cur = Rect{m, M, m, M};
    cur_win = winding_number(gfn, cur, eps_zero, cfg.max_refine_depth, trace,
                             "enlarge" + std::to_string(phase_idx++));
    rep.rect_trace.push_back({cur, cur_win.winding, cur_win.zero_hit});
    rep.curve_samples_total += cur_win.samples;
    if (cur_win.zero_hit) {
      if (try_zero_sample(cur_win)) return rep;
      break;  // descend treating the winding as nonzero
    }
    if (cur_win.winding != 0) break;
    if (rep.enlargements >= cfg.max_enlarge) {
      rep.status = SolveStatus::BudgetExceeded;
      return rep;
    }
    ++rep.enlargements;
    M *= 2.0;
    m = std::max(0.5 * m, 1e-12);
  }

  int parent_w = cur_win.zero_hit ? 0 : cur_win.winding;
  while (cur.diameter() > cfg.delta) {
    if (rep.bisections >= cfg.max_bisect) {
      rep.status = SolveStatus::BudgetExceeded;
      return rep;
    }
    ++rep.bisections;
    Rect d1 = cur, d2 = cur;
    if (cur.width() >= cur.height()) {
      const double mid = 0.5 * (cur.x_lo + cur.x_hi);
      d1.x_hi = mid;
      d2.x_lo = mid;
    } else {
      const double mid = 0.5 * (cur.y_lo + cur.y_hi);
      d1.y_hi = mid;
      d2.y_lo = mid;
    }
    const std::string phase = "bisect" + std::to_string(rep.bisections);

    WindingResult w1 = winding_number(gfn, d1, eps_zero, cfg.max_refine_depth, trace, phase);
    rep.rect_trace.push_back({d1, w1.winding, w1.zero_hit});
    rep.curve_samples_total += w1.samples;
    if (w1.zero_hit) {
      if (try_zero_sample(w1)) return rep;
      cur = d1;
      cur_win = w1;
      parent_w = 0;
      continue;
    }
    if (w1.winding != 0) {
      if (parent_w != 0 && parent_w != w1.winding) rep.multiple_zeros_hint = true;
      cur = d1;
      cur_win = w1;
      parent_w = w1.winding;
      continue;
    }

    WindingResult w2 = winding_number(gfn, d2, eps_zero, cfg.max_refine_depth, trace, phase);
    rep.rect_trace.push_back({d2, w2.winding, w2.zero_hit});
    rep.curve_samples_total += w2.samples;
    if (w2.zero_hit) {
      if (try_zero_sample(w2)) return rep;
      cur = d2;
      cur_win = w2;
      parent_w = 0;
      continue;
    }
    if (w2.winding != 0) {
      cur = d2;
      cur_win = w2;
      parent_w = w2.winding;
      continue;
    }
    // Neither half winds although the parent did: the root sits on the
    // shared edge but outside eps_zero resolution. No rectangle to descend
    // into; report the budget as exhausted.
    rep.status = SolveStatus::BudgetExceeded;
    return rep;
  }

  if (cur_win.candidate) {
    finish_solved(*cur_win.candidate, *cur_win.candidate_res);
    return rep;
  }
  for (int i = 1; i <= 8; ++i) {
    for (int j = 1; j <= 8; ++j) {
      const Kappa k{cur.x_lo + cur.width() * i / 9.0, cur.y_lo + cur.height() * j / 9.0};
      const Residual r = gfn(k);
      ++rep.curve_samples_total;
      if (r.gA <= 0.0 && r.gB <= 0.0) {
        finish_solved(k, r);
        return rep;
      }
    }
  }
  const Kappa c = cur.center();
  finish_solved(c, gfn(c));
  rep.candidate_unverified = true;
  return rep;
}

struct VerifyResult {
  bool budget_feasible;               // residual componentwise <= 0
  Residual res;
  std::optional<bool> within_delta;   // set when a reference root is supplied
};

inline VerifyResult verify_delta_solution(const GameInstance& g, const Kappa& k,
                                          double delta,
                                          const std::optional<Kappa>& reference = {}) {
  VerifyResult v{false, residual(g, k), {}};
  v.budget_feasible = v.res.gA <= 0.0 && v.res.gB <= 0.0;
  if (reference) {
    const double d = std::max(std::abs(k.lamA - reference->lamA),
                              std::abs(k.lamB - reference->lamB));
    v.within_delta = d <= delta;
  }
  return v;
}

}  // namespace blotto
