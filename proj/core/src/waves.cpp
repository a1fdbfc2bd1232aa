#include "wbglimm/waves.hpp"

#include <algorithm>
#include <cmath>

#include "wbglimm/errors.hpp"
#include "wbglimm/roots.hpp"

namespace wbglimm {

namespace {

void require_density(double rho, const char* who) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw DomainError(std::string(who) + ": density must be positive");
}

// Composite wave curves parametrized by x = ln ρ. The 1-curve through the
// left state is a rarefaction for x < x_L and a shock for x > x_L; the
// 2-curve through the right state likewise around x_R.
struct WaveCurves {
  double xl, vl, xr, vr, k;

  double v1(double x) const {
    const double d = x - xl;
    return d <= 0.0 ? vl - k * d : vl - 2.0 * k * std::sinh(0.5 * d);
  }
  double dv1(double x) const {
    const double d = x - xl;
    return d <= 0.0 ? -k : -k * std::cosh(0.5 * d);
  }
  double v2(double x) const {
    const double d = x - xr;
    return d <= 0.0 ? vr + k * d : vr + 2.0 * k * std::sinh(0.5 * d);
  }
  double dv2(double x) const {
    const double d = x - xr;
    return d <= 0.0 ? k : k * std::cosh(0.5 * d);
  }
};

bool same_state(double x0, double v0, double x1, double v1) {
  return std::abs(x0 - x1) < kNullWaveTolerance && std::abs(v0 - v1) < kNullWaveTolerance;
}

}  // namespace

FluidState rarefaction1(double rho, const FluidState& anchor, const ModelParams& p) {
  require_density(rho, "rarefaction1");
  return {rho, anchor.v - p.k * std::log(rho / anchor.rho)};
}

FluidState rarefaction2(double rho, const FluidState& anchor, const ModelParams& p) {
  require_density(rho, "rarefaction2");
  return {rho, anchor.v + p.k * std::log(rho / anchor.rho)};
}

ShockPoint shock1(double rho, const FluidState& anchor, const ModelParams& p) {
  require_density(rho, "shock1");
  const double ratio = std::sqrt(rho / anchor.rho);
  const FluidState s{rho, anchor.v - p.k * (ratio - 1.0 / ratio)};
  return {s, s.v - p.k / ratio};
}

ShockPoint shock2(double rho, const FluidState& anchor, const ModelParams& p) {
  require_density(rho, "shock2");
  const double ratio = std::sqrt(rho / anchor.rho);
  const FluidState s{rho, anchor.v + p.k * (ratio - 1.0 / ratio)};
  return {s, s.v + p.k / ratio};
}

double phi_plus(double gamma) {
  if (gamma < 0.0 || std::isnan(gamma)) throw DomainError("phi: gamma must be nonnegative");
  if (gamma == 0.0) return 1.0;
  return 1.0 + gamma + std::sqrt(gamma * gamma + 2.0 * gamma);
}

double phi_minus(double gamma) {
  if (gamma < 0.0 || std::isnan(gamma)) throw DomainError("phi: gamma must be nonnegative");
  if (gamma == 0.0) return 1.0;
  // 1 + γ − √(γ² + 2γ) = 1/Φ+(γ); the reciprocal form avoids cancellation.
  return 1.0 / phi_plus(gamma);
}

WaveFan solve_riemann(const FluidState& left, const FluidState& right, const ModelParams& p) {
  validate_state(left);
  validate_state(right);
  const double k = p.k;
  const WaveCurves c{std::log(left.rho), left.v, std::log(right.rho), right.v, k};

  WaveFan fan;
  fan.left = left;
  fan.right = right;

  double xm;
  if (same_state(c.xl, c.vl, c.xr, c.vr)) {
    xm = c.xl;
  } else {
    // Two-rarefaction candidate is exact whenever it lies below both anchors.
    const double x_rr = (c.vl - c.vr + k * (c.xl + c.xr)) / (2.0 * k);
    if (x_rr <= std::min(c.xl, c.xr)) {
      xm = x_rr;
    } else {
      auto f = [&](double x) { return c.v1(x) - c.v2(x); };
      double lo = std::min(c.xl, c.xr);
      double hi = std::max({c.xl, c.xr, x_rr}) + 1.0;
      while (f(hi) > 0.0) hi += 2.0 * (hi - lo);
      roots::Options opt;
      opt.x_tol = 1e-15;
      xm = roots::newton_bisect(
               [&](double x, double& fx, double& dfx) {
                 fx = f(x);
                 dfx = c.dv1(x) - c.dv2(x);
               },
               lo, hi, opt)
               .x;
    }
  }
  const double vm = 0.5 * (c.v1(xm) + c.v2(xm));
  fan.middle = {std::exp(xm), vm};

  // 1-wave
  WaveDescriptor& w1 = fan.wave1;
  w1.family = 1;
  if (same_state(c.xl, c.vl, xm, vm)) {
    fan.middle = left;
    w1.type = WaveType::Null;
    w1.sigma = w1.xi_left = w1.xi_right = left.v - k;
  } else if (xm < c.xl) {
    w1.type = WaveType::Rarefaction;
    w1.xi_left = left.v - k;
    w1.xi_right = vm - k;
    w1.sigma = w1.xi_left;
  } else {
    w1.type = WaveType::Shock;
    w1.sigma = shock_speed1(left, fan.middle, p);
    w1.xi_left = w1.xi_right = w1.sigma;
  }

  // 2-wave
  const FluidState& mid = fan.middle;
  WaveDescriptor& w2 = fan.wave2;
  w2.family = 2;
  if (same_state(std::log(mid.rho), mid.v, c.xr, c.vr)) {
    w2.type = WaveType::Null;
    w2.sigma = w2.xi_left = w2.xi_right = right.v + k;
  } else if (std::log(mid.rho) < c.xr) {
    w2.type = WaveType::Rarefaction;
    w2.xi_left = mid.v + k;
    w2.xi_right = right.v + k;
    w2.sigma = w2.xi_right;
  } else {
    w2.type = WaveType::Shock;
    w2.sigma = shock_speed2(mid, right, p);
    w2.xi_left = w2.xi_right = w2.sigma;
  }
  return fan;
}

FluidState sample_fan(const WaveFan& fan, double xi, const ModelParams& p) noexcept {
  const double k = p.k;
  const WaveDescriptor& w1 = fan.wave1;
  const WaveDescriptor& w2 = fan.wave2;

  if (w1.type == WaveType::Rarefaction) {
    if (xi < w1.xi_left) return fan.left;
    if (xi <= w1.xi_right) {
      const double w_left = fan.left.v + k * std::log(fan.left.rho);
      const double v = xi + k;
      return {std::exp((w_left - v) / k), v};
    }
  } else if (xi < w1.sigma) {
    return fan.left;
  }

  if (w2.type == WaveType::Rarefaction) {
    if (xi > w2.xi_right) return fan.right;
    if (xi >= w2.xi_left) {
      const double z_right = fan.right.v - k * std::log(fan.right.rho);
      const double v = xi - k;
      return {std::exp((v - z_right) / k), v};
    }
  } else if (xi > w2.sigma) {
    return fan.right;
  }
  return fan.middle;
}

double wave_strength(const FluidState& left, const FluidState& right, const ModelParams& p) {
  const WaveFan fan = solve_riemann(left, right, p);
  const double xm = std::log(fan.middle.rho);
  return std::abs(std::log(left.rho) - xm) + std::abs(std::log(right.rho) - xm);
}

bool lax_admissible(const WaveFan& fan, int family, const ModelParams& p) noexcept {
  if (family == 1) {
    const double s = fan.wave1.sigma;
    return lambda1(fan.left, p) > s && s > lambda1(fan.middle, p);
  }
  const double s = fan.wave2.sigma;
  return lambda2(fan.middle, p) > s && s > lambda2(fan.right, p);
}

}  // namespace wbglimm
