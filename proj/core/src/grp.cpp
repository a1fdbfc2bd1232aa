#include "wbglimm/grp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "wbglimm/errors.hpp"

namespace wbglimm {

namespace {

constexpr double kTimeSlack = 1e-12;

std::size_t segment_index(const std::vector<double>& t, double time) {
  auto it = std::upper_bound(t.begin(), t.end(), time);
  std::size_t j = static_cast<std::size_t>(it - t.begin());
  if (j == 0) return 0;
  return std::min(j - 1, t.size() - 2);
}

void check_time(const TimeCurve& c, double time) {
  if (c.t.empty()) throw DomainError("time curve is empty");
  if (time > c.t.back() * (1.0 + kTimeSlack) + kTimeSlack) {
    throw DomainError("time " + std::to_string(time) + " beyond curve end " +
                      std::to_string(c.t.back()));
  }
}

using Speed = std::function<double(double)>;

// Integrates r' = f(r), r(0) = r0 with RK4 steps whose local error is
// estimated by step doubling.
TimeCurve integrate_curve(const Speed& f, double r0, double horizon, const GrpOptions& opt) {
  TimeCurve c;
  const double dt_max = horizon / std::max(1, opt.curve_steps);
  const double tol = opt.curve_tol * std::max(1.0, std::abs(r0));
  const double dt_min = dt_max * 1e-9;

  auto rk4 = [&](double r, double h) {
    const double k1 = f(r);
    const double k2 = f(r + 0.5 * h * k1);
    const double k3 = f(r + 0.5 * h * k2);
    const double k4 = f(r + h * k3);
    return r + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  };

  double t = 0.0;
  double r = r0;
  c.t.push_back(t);
  c.r.push_back(r);
  c.drdt.push_back(f(r));
  double h = dt_max;
  while (t < horizon) {
    h = std::min(h, horizon - t);
    const double one = rk4(r, h);
    const double two = rk4(rk4(r, 0.5 * h), 0.5 * h);
    const double err = std::abs(two - one) / 15.0;
    if (err > tol && h > dt_min) {
      h *= 0.5;
      continue;
    }
    t = (horizon - t <= h) ? horizon : t + h;
    r = two;
    c.t.push_back(t);
    c.r.push_back(r);
    c.drdt.push_back(f(r));
    if (err < tol / 32.0) h = std::min(2.0 * h, dt_max);
  }
  return c;
}

// Wraps a speed evaluation so that sonic or domain failures of a flanking
// steady state surface as GrpError at the offending radius.
Speed guarded(Speed f) {
  return [f = std::move(f)](double r) {
    try {
      return f(r);
    } catch (const SonicError& e) {
      throw GrpError(std::string("boundary curve left a steady domain: ") + e.what(), r);
    } catch (const DomainError& e) {
      throw GrpError(std::string("boundary curve evaluation failed: ") + e.what(), r);
    }
  };
}

}  // namespace

double TimeCurve::at(double time) const {
  check_time(*this, time);
  if (time <= t.front()) return r.front();
  if (t.size() == 1) return r.front();
  const std::size_t j = segment_index(t, time);
  const double h = t[j + 1] - t[j];
  const double s = std::min(1.0, (time - t[j]) / h);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * r[j] + h10 * h * drdt[j] + h01 * r[j + 1] + h11 * h * drdt[j + 1];
}

double TimeCurve::slope(double time) const {
  check_time(*this, time);
  if (t.size() == 1 || time <= t.front()) return drdt.front();
  const std::size_t j = segment_index(t, time);
  const double h = t[j + 1] - t[j];
  const double s = std::min(1.0, (time - t[j]) / h);
  const double s2 = s * s;
  const double d00 = (6.0 * s2 - 6.0 * s) / h;
  const double d10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double d01 = (-6.0 * s2 + 6.0 * s) / h;
  const double d11 = 3.0 * s2 - 2.0 * s;
  return d00 * r[j] + d10 * drdt[j] + d01 * r[j + 1] + d11 * drdt[j + 1];
}

BoundaryCurves integrate_boundaries(const SteadySolution& left, const SteadySolution& middle,
                                    const SteadySolution& right, const WaveFan& trace_fan,
                                    double r0, double horizon, const GrpOptions& opt) {
  if (!(horizon > 0.0)) throw DomainError("boundary integration needs a positive horizon");
  const ModelParams& p = left.params();
  const double k = p.k;

  Speed lam_left = [&](double r) { return left.velocity(r) - k; };
  Speed lam_mid = [&](double r) { return middle.velocity(r) - k; };
  Speed mu_mid = [&](double r) { return middle.velocity(r) + k; };
  Speed mu_right = [&](double r) { return right.velocity(r) + k; };
  Speed sigma1 = [&](double r) { return shock_speed1(left.at(r), middle.at(r), p); };
  Speed sigma2 = [&](double r) { return shock_speed2(middle.at(r), right.at(r), p); };

  BoundaryCurves out;
  switch (trace_fan.wave1.type) {
    case WaveType::Rarefaction:
      out[Boundary::LeftMinus] = integrate_curve(guarded(lam_left), r0, horizon, opt);
      out[Boundary::LeftPlus] = integrate_curve(guarded(lam_mid), r0, horizon, opt);
      break;
    case WaveType::Shock:
      out[Boundary::LeftMinus] = integrate_curve(guarded(sigma1), r0, horizon, opt);
      out[Boundary::LeftPlus] = out[Boundary::LeftMinus];
      break;
    case WaveType::Null:
      out[Boundary::LeftMinus] = integrate_curve(guarded(lam_left), r0, horizon, opt);
      out[Boundary::LeftPlus] = out[Boundary::LeftMinus];
      break;
  }
  switch (trace_fan.wave2.type) {
    case WaveType::Rarefaction:
      out[Boundary::RightMinus] = integrate_curve(guarded(mu_mid), r0, horizon, opt);
      out[Boundary::RightPlus] = integrate_curve(guarded(mu_right), r0, horizon, opt);
      break;
    case WaveType::Shock:
      out[Boundary::RightMinus] = integrate_curve(guarded(sigma2), r0, horizon, opt);
      out[Boundary::RightPlus] = out[Boundary::RightMinus];
      break;
    case WaveType::Null:
      out[Boundary::RightMinus] = integrate_curve(guarded(mu_right), r0, horizon, opt);
      out[Boundary::RightPlus] = out[Boundary::RightMinus];
      break;
  }

  // Ordering check on a uniform sample of the horizon.
  constexpr int kSamples = 64;
  for (int s = 1; s <= kSamples; ++s) {
    const double t = horizon * s / kSamples;
    double prev = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < 4; ++b) {
      const double rb = out.curves[b].at(t);
      if (rb < prev - 1e-12 * std::max(1.0, std::abs(rb))) {
        throw GrpError("wave region boundaries cross at t = " + std::to_string(t), rb);
      }
      prev = rb;
    }
  }
  return out;
}

GrpSolution solve_grp(const SteadySolution& left, const SteadySolution& right, double r0,
                      double horizon, const GrpOptions& opt) {
  if (!(horizon > 0.0)) throw DomainError("solve_grp needs a positive horizon");
  if (!left.domain().contains(r0) || !right.domain().contains(r0)) {
    throw DomainError("jump radius " + std::to_string(r0) + " outside a steady domain");
  }
  const ModelParams& p = left.params();

  GrpSolution g;
  g.left_ = left;
  g.right_ = right;
  g.r0_ = r0;
  g.horizon_ = horizon;
  g.trace_fan_ = solve_riemann(left.at(r0), right.at(r0), p);

  const WaveFan& fan = g.trace_fan_;
  if (fan.wave1.type == WaveType::Null) {
    g.middle_ = left;
  } else if (fan.wave2.type == WaveType::Null) {
    g.middle_ = right;
  } else {
    try {
      g.middle_ = solve_steady_any(r0, fan.middle, p);
    } catch (const DomainError& e) {
      throw GrpError(std::string("middle steady state: ") + e.what(), r0);
    }
  }

  g.curves_ = integrate_boundaries(g.left_, g.middle_, g.right_, fan, r0, horizon, opt);

  try {
    if (fan.wave1.type == WaveType::Rarefaction) {
      g.fan1_ = solve_fan(1, g.left_, g.middle_, g.curves_, r0, horizon, opt.fan);
    }
    if (fan.wave2.type == WaveType::Rarefaction) {
      g.fan2_ = solve_fan(2, g.middle_, g.right_, g.curves_, r0, horizon, opt.fan);
    }
  } catch (const SonicError& e) {
    throw GrpError(std::string("rarefaction edge left a steady domain: ") + e.what(), e.radius());
  }
  return g;
}

int GrpSolution::region(double t, double r) const {
  if (t <= 0.0) return r < r0_ ? 0 : 4;
  if (r < curves_[Boundary::LeftMinus].at(t)) return 0;
  if (fan1_ && r < curves_[Boundary::LeftPlus].at(t)) return 1;
  if (r < curves_[Boundary::RightMinus].at(t)) return 2;
  if (fan2_ && r < curves_[Boundary::RightPlus].at(t)) return 3;
  return 4;
}

FluidState GrpSolution::at(double t, double r) const {
  if (t < 0.0 || t > horizon_ * (1.0 + kTimeSlack)) {
    throw DomainError("GRP evaluated at t = " + std::to_string(t) + " outside [0, " +
                      std::to_string(horizon_) + "]");
  }
  switch (region(t, r)) {
    case 0: return left_.at(r);
    case 1: return fan1_->at(t, r);
    case 2: return middle_.at(r);
    case 3: return fan2_->at(t, r);
    default: return right_.at(r);
  }
}

ShockTrace shock_trace(const GrpSolution& g, int family, double t) {
  const Boundary b = family == 1 ? Boundary::LeftMinus : Boundary::RightMinus;
  const TimeCurve& c = g.curves()[b];
  ShockTrace s;
  s.position = c.at(t);
  s.speed = c.slope(t);
  if (family == 1) {
    s.left = g.left().at(s.position);
    s.right = g.middle().at(s.position);
  } else {
    s.left = g.middle().at(s.position);
    s.right = g.right().at(s.position);
  }
  return s;
}

}  // namespace wbglimm
