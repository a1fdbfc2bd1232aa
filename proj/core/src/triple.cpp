#include "wbglimm/triple.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wbglimm/errors.hpp"

namespace wbglimm {

namespace {

constexpr int kScanSamples = 128;
constexpr double kOrderSlack = 1e-13;

using Curve = std::function<double(double)>;
using Piece = std::function<FluidState(double, double)>;
using GrpPtr = std::shared_ptr<const GrpSolution>;

bool out_of_order(double a, double b) {
  return a > b + kOrderSlack * std::max(1.0, std::abs(b));
}

// Index of the first adjacent pair of cuts that is out of order at t, or -1.
int violated_pair(const Stage& s, double t) {
  for (std::size_t i = 0; i + 1 < s.cuts.size(); ++i) {
    if (out_of_order(s.cuts[i](t), s.cuts[i + 1](t))) return static_cast<int>(i);
  }
  return -1;
}

struct Crossing {
  double time;
  int pair;
};

// First time in (t0, t1] where the predicate `bad` switches on, located by a
// uniform scan followed by bisection.
template <class Bad>
std::optional<double> first_time(Bad bad, double t0, double t1) {
  double prev = t0;
  for (int s = 1; s <= kScanSamples; ++s) {
    const double t = t0 + (t1 - t0) * s / kScanSamples;
    if (bad(t)) {
      double lo = prev, hi = t;
      for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (bad(mid) ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = t;
  }
  return std::nullopt;
}

std::optional<Crossing> first_violation(const Stage& s, double t0, double t1) {
  auto t = first_time([&](double x) { return violated_pair(s, x) >= 0; }, t0, t1);
  if (!t) return std::nullopt;
  // The pair that breaks first; probe just past the located time.
  const double probe = std::min(t1, *t + 1e-12 * std::max(1.0, *t) + 1e-15);
  int pair = violated_pair(s, probe);
  if (pair < 0) pair = violated_pair(s, t1);
  return Crossing{*t, pair};
}

Curve edge(const GrpPtr& g, Boundary b, double t_shift) {
  return [g, b, t_shift](double t) { return g->boundary(b, t - t_shift); };
}

Piece eval(const GrpPtr& g, double t_shift) {
  return [g, t_shift](double t, double r) { return g->at(t - t_shift, r); };
}

const char* case_name(InteractionCase c) {
  switch (c) {
    case InteractionCase::SS: return "shock-shock";
    case InteractionCase::RS: return "rarefaction-shock";
    default: return "shock-rarefaction";
  }
}

}  // namespace

FluidState Stage::at(double t, double r) const {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (r < cuts[i](t)) return pieces[i](t, r);
  }
  return pieces.back()(t, r);
}

double first_interaction(const GrpSolution& left, const GrpSolution& right, double horizon) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (left.kind2() == WaveType::Null || right.kind1() == WaveType::Null) return kInf;
  const double t_max = std::min({horizon, left.horizon(), right.horizon()});
  auto gap = [&](double t) {
    return right.boundary(Boundary::LeftMinus, t) - left.boundary(Boundary::RightPlus, t);
  };
  auto t = first_time([&](double x) { return gap(x) < 0.0; }, 0.0, t_max);
  return t ? *t : kInf;
}

TripleSolution solve_triple(const SteadySolution& alpha, const SteadySolution& beta,
                            const SteadySolution& gamma, double r_s, double r_b, double horizon,
                            const GrpOptions& opt) {
  if (!(r_s < r_b)) throw DomainError("triple problem needs r_s < r_b");
  if (!(horizon > 0.0)) throw DomainError("triple problem needs a positive horizon");

  TripleSolution ts;
  ts.alpha_ = alpha;
  ts.beta_ = beta;
  ts.gamma_ = gamma;
  ts.r_s_ = r_s;
  ts.r_b_ = r_b;
  ts.horizon_ = horizon;
  GrpPtr L = std::make_shared<const GrpSolution>(solve_grp(alpha, beta, r_s, horizon, opt));
  GrpPtr R = std::make_shared<const GrpSolution>(solve_grp(beta, gamma, r_b, horizon, opt));
  ts.left_ = L;
  ts.right_ = R;

  Stage before;
  before.t_begin = 0.0;
  // Until the first interaction the two problems share β between them. A
  // Null wave may cross the other problem's wave, so the cut then follows
  // whichever curve keeps both evaluations on their own side.
  {
    auto lc = edge(L, Boundary::RightPlus, 0.0), rc = edge(R, Boundary::LeftMinus, 0.0);
    if (L->kind2() == WaveType::Null) {
      before.cuts = {[lc, rc](double t) { return std::min(lc(t), rc(t)); }};
    } else if (R->kind1() == WaveType::Null) {
      before.cuts = {[lc, rc](double t) { return std::max(lc(t), rc(t)); }};
    } else {
      before.cuts = {lc};
    }
  }
  before.pieces = {eval(L, 0.0), eval(R, 0.0)};

  const double t_f = first_interaction(*L, *R, horizon);
  ts.t_f_ = t_f;
  if (!std::isfinite(t_f)) {
    before.t_end = horizon;
    ts.stages_.push_back(std::move(before));
    return ts;
  }
  before.t_end = t_f;
  ts.stages_.push_back(std::move(before));

  const WaveType k2 = L->kind2();
  const WaveType k1 = R->kind1();
  if (k2 == WaveType::Rarefaction && k1 == WaveType::Rarefaction) {
    throw TripleError("rarefaction-rarefaction collision is not resolved", t_f);
  }
  InteractionResolution res;
  res.kind = k2 == WaveType::Shock
                 ? (k1 == WaveType::Shock ? InteractionCase::SS : InteractionCase::SR)
                 : InteractionCase::RS;
  const double r_c =
      0.5 * (L->boundary(Boundary::RightPlus, t_f) + R->boundary(Boundary::LeftMinus, t_f));
  const double rest = horizon - t_f;

  auto finish = [&](Stage& stage, double achieved) {
    stage.t_end = achieved;
    res.valid_until = achieved;
    ts.stages_.push_back(std::move(stage));
    ts.post_ = res;
    if (achieved < horizon) {
      throw TripleError(std::string("further wave interaction after the ") +
                            case_name(res.kind) + " resolution",
                        achieved);
    }
  };

  auto build = [&](const SteadySolution& a, const SteadySolution& b, double r0, double h) {
    try {
      return std::make_shared<const GrpSolution>(solve_grp(a, b, r0, h, opt));
    } catch (const Error& e) {
      throw TripleError(std::string("interaction problem failed: ") + e.what(), t_f);
    }
  };

  if (res.kind == InteractionCase::SS) {
    GrpPtr N = build(L->middle(), R->middle(), r_c, rest);
    res.grps = {N};
    Stage s;
    s.t_begin = t_f;
    s.cuts = {edge(L, Boundary::LeftPlus, 0.0), edge(N, Boundary::LeftMinus, t_f),
              edge(N, Boundary::RightPlus, t_f), edge(R, Boundary::RightMinus, 0.0)};
    s.pieces = {eval(L, 0.0), eval(N, t_f), eval(N, t_f), eval(N, t_f), eval(R, 0.0)};
    auto v = first_violation(s, t_f, horizon);
    finish(s, v ? v->time : horizon);
    return ts;
  }

  const bool rs = res.kind == InteractionCase::RS;
  // Stage 0: the shock of one problem travels through the other's fan.
  GrpPtr N0 = rs ? build(beta, R->middle(), r_c, rest) : build(L->middle(), beta, r_c, rest);
  Stage s0;
  s0.t_begin = t_f;
  int switch_pair;
  if (rs) {
    s0.cuts = {edge(L, Boundary::RightMinus, 0.0), edge(N0, Boundary::LeftMinus, t_f),
               edge(N0, Boundary::RightPlus, t_f), edge(R, Boundary::RightMinus, 0.0)};
    s0.pieces = {eval(L, 0.0), eval(L, 0.0), eval(N0, t_f), eval(N0, t_f), eval(R, 0.0)};
    switch_pair = 0;
  } else {
    s0.cuts = {edge(L, Boundary::LeftPlus, 0.0), edge(N0, Boundary::LeftMinus, t_f),
               edge(N0, Boundary::RightPlus, t_f), edge(R, Boundary::LeftPlus, 0.0)};
    s0.pieces = {eval(L, 0.0), eval(N0, t_f), eval(N0, t_f), eval(R, 0.0), eval(R, 0.0)};
    switch_pair = 2;
  }
  auto v0 = first_violation(s0, t_f, horizon);
  if (!v0) {
    res.grps = {N0};
    finish(s0, horizon);
    return ts;
  }
  if (v0->pair != switch_pair) {
    res.grps = {N0};
    finish(s0, v0->time);
    return ts;
  }
  const double t_sw = v0->time;
  s0.t_end = t_sw;
  ts.stages_.push_back(std::move(s0));
  res.switch_time = t_sw;

  // Stage 1: the shock has crossed the fan; a new problem starts at the exit.
  const double rest1 = horizon - t_sw;
  Stage s1;
  s1.t_begin = t_sw;
  if (rs) {
    const double r_sw = N0->boundary(Boundary::LeftMinus, t_sw - t_f);
    GrpPtr N1 = build(L->middle(), N0->middle(), r_sw, rest1);
    res.grps = {N0, N1};
    s1.cuts = {edge(L, Boundary::LeftPlus, 0.0), edge(N1, Boundary::LeftMinus, t_sw),
               edge(N1, Boundary::RightPlus, t_sw), edge(N0, Boundary::RightMinus, t_f),
               edge(R, Boundary::RightMinus, 0.0)};
    s1.pieces = {eval(L, 0.0),   eval(N1, t_sw), eval(N1, t_sw),
                 eval(N0, t_f),  eval(N0, t_f),  eval(R, 0.0)};
  } else {
    const double r_sw = N0->boundary(Boundary::RightPlus, t_sw - t_f);
    GrpPtr N1 = build(N0->middle(), R->middle(), r_sw, rest1);
    res.grps = {N0, N1};
    s1.cuts = {edge(L, Boundary::LeftPlus, 0.0), edge(N0, Boundary::LeftPlus, t_f),
               edge(N1, Boundary::LeftMinus, t_sw), edge(N1, Boundary::RightPlus, t_sw),
               edge(R, Boundary::RightMinus, 0.0)};
    s1.pieces = {eval(L, 0.0),   eval(N0, t_f),  eval(N0, t_f),
                 eval(N1, t_sw), eval(N1, t_sw), eval(R, 0.0)};
  }
  auto v1 = first_violation(s1, t_sw, horizon);
  finish(s1, v1 ? v1->time : horizon);
  return ts;
}

FluidState TripleSolution::at(double t, double r) const {
  const double end = stages_.empty() ? 0.0 : stages_.back().t_end;
  if (t < 0.0 || t > end * (1.0 + 1e-12)) {
    throw TripleError("triple solution evaluated outside its validity", end);
  }
  for (const Stage& s : stages_) {
    if (t <= s.t_end) return s.at(t, r);
  }
  return stages_.back().at(t, r);
}

}  // namespace wbglimm
