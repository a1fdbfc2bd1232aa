#include "wbglimm/steady.hpp"

#include <cmath>
#include <string>

#include "wbglimm/errors.hpp"
#include "wbglimm/roots.hpp"

namespace wbglimm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// With x = r/rc and η = ln(|v|/k):
//   G(r, v) − G(rc, ±k) = k² [h(η) − 2 q(x)],
//   h(η) = ½(e^{2η} − 1) − η ≥ 0,   q(x) = ln x + 1/x − 1 ≥ 0.
double h_of(double eta) { return 0.5 * std::expm1(2.0 * eta) - eta; }
double dh_of(double eta) { return std::expm1(2.0 * eta); }

double q_of(double x) {
  const double d = x - 1.0;
  return std::log1p(d) - d / x;
}
double dq_of(double x) { return (x - 1.0) / (x * x); }

// Root of h(η) = c on the subsonic (η < 0) or supersonic (η > 0) branch.
double solve_eta(double c, bool subsonic) {
  if (c <= 0.0) return 0.0;
  roots::Options opt;
  opt.x_tol = 1e-16;
  auto fdf = [c](double eta, double& f, double& df) {
    f = h_of(eta) - c;
    df = dh_of(eta);
  };
  if (subsonic) {
    const double lo = -c - 1.0;
    return roots::newton_bisect(fdf, lo, 0.0, opt).x;
  }
  double hi = std::max(1.0, 0.5 * std::log(2.0 * c + 2.0) + 1.0);
  while (h_of(hi) < c) hi *= 2.0;
  return roots::newton_bisect(fdf, 0.0, hi, opt).x;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

bool is_flat(CriticalBranch b) { return b == CriticalBranch::PFlat || b == CriticalBranch::NFlat; }
int branch_sign(CriticalBranch b) {
  return (b == CriticalBranch::PFlat || b == CriticalBranch::PSharp) ? 1 : -1;
}

// Subsonic side of a critical branch at x = r/rc.
bool critical_subsonic(CriticalBranch b, double x) { return is_flat(b) ? x < 1.0 : x > 1.0; }

void require_radius(double r, const char* who) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError(std::string(who) + ": radius must be positive");
}

}  // namespace

double critical_G(const ModelParams& p) noexcept {
  const double k2 = p.k * p.k;
  return -1.5 * k2 - k2 * std::log(p.m * p.m / (4.0 * k2 * p.k));
}

double G_value(double r, double v, int sign_ref, const ModelParams& p) {
  require_radius(r, "G_value");
  const double arg = r * r * sign_ref * v;
  if (!(arg > 0.0)) throw DomainError("G_value: logarithm argument must be positive");
  return 0.5 * v * v - p.k * p.k * std::log(arg) - p.m / r;
}

double critical_S(double r, double v, const ModelParams& p) {
  require_radius(r, "critical_S");
  if (v == 0.0) throw DomainError("critical_S: v must be nonzero");
  const double eta = std::log(std::abs(v) / p.k);
  const double x = r / p.critical_radius();
  return p.k * p.k * (h_of(eta) - 2.0 * q_of(x));
}

double sonic_radius_for(double S0, bool inner, const ModelParams& p) {
  const double qs = -S0 / (2.0 * p.k * p.k);
  if (!(qs > 0.0)) return p.critical_radius();
  auto fdf = [qs](double x, double& f, double& df) {
    f = q_of(x) - qs;
    df = dq_of(x);
  };
  roots::Options opt;
  opt.x_tol = 1e-15;
  double x;
  if (inner) {
    double lo = 1.0 / (qs + 2.0);
    while (q_of(lo) < qs) lo *= 0.5;
    x = roots::newton_bisect(fdf, lo, 1.0, opt).x;
  } else {
    double hi = std::exp(qs + 2.0);
    while (q_of(hi) < qs) hi *= 2.0;
    x = roots::newton_bisect(fdf, 1.0, hi, opt).x;
  }
  return x * p.critical_radius();
}

SteadySolution solve_steady(double anchor_r, const FluidState& anchor, const ModelParams& p) {
  p.validate();
  require_radius(anchor_r, "solve_steady");
  validate_state(anchor);
  if (anchor.v == 0.0)
    throw DomainError("solve_steady: anchors with v = 0 are not supported");

  SteadySolution s;
  s.anchor_r_ = anchor_r;
  s.anchor_ = anchor;
  s.params_ = p;
  s.Q0_ = anchor_r * anchor_r * anchor.rho * anchor.v;
  s.family_.sign_v = sign_of(anchor.v);
  const double eta0 = std::log(std::abs(anchor.v) / p.k);
  s.family_.sign_sonic = sign_of(eta0);

  if (!p.with_source) {
    s.family_.tag = SteadyTag::Constant;
    s.G0_ = G_value(anchor_r, anchor.v, s.family_.sign_v, p);
    return s;
  }

  s.G0_ = G_value(anchor_r, anchor.v, s.family_.sign_v, p);
  const double x0 = anchor_r / p.critical_radius();
  s.S0_ = p.k * p.k * (h_of(eta0) - 2.0 * q_of(x0));

  if (std::abs(s.S0_) < 1e-11 * std::max(1.0, std::abs(s.G0_))) {
    s.S0_ = 0.0;
    s.family_.tag = SteadyTag::Critical;
    // Anchor exactly at the sonic point: take the flat (accelerating) curve.
    const bool subsonic = eta0 < 0.0;
    const bool flat = (x0 == 1.0 || eta0 == 0.0) ? true : (x0 < 1.0) == subsonic;
    if (s.family_.sign_v > 0)
      s.family_.critical = flat ? CriticalBranch::PFlat : CriticalBranch::PSharp;
    else
      s.family_.critical = flat ? CriticalBranch::NFlat : CriticalBranch::NSharp;
  } else if (s.S0_ > 0.0) {
    s.family_.tag = SteadyTag::GlobalSmooth;
  } else {
    s.family_.tag = SteadyTag::SonicLimited;
    const bool inner = x0 < 1.0;
    const double rs = sonic_radius_for(s.S0_, inner, p);
    s.sonic_r_ = rs;
    s.domain_ =
        inner ? Interval{0.0, std::max(rs, anchor_r)} : Interval{std::min(rs, anchor_r), kInf};
  }
  return s;
}

SteadySolution solve_static(double anchor_r, double rho, const ModelParams& p) {
  p.validate();
  require_radius(anchor_r, "solve_static");
  validate_state({rho, 0.0});
  SteadySolution s;
  s.anchor_r_ = anchor_r;
  s.anchor_ = {rho, 0.0};
  s.params_ = p;
  s.family_.tag = p.with_source ? SteadyTag::Static : SteadyTag::Constant;
  s.family_.sign_v = 0;
  s.family_.sign_sonic = -1;
  s.G0_ = -kInf;
  s.S0_ = kInf;
  s.Q0_ = 0.0;
  return s;
}

SteadySolution solve_steady_any(double anchor_r, const FluidState& anchor, const ModelParams& p) {
  if (anchor.v == 0.0) return solve_static(anchor_r, anchor.rho, p);
  return solve_steady(anchor_r, anchor, p);
}

SteadySolution make_critical(CriticalBranch branch, double Q0, const ModelParams& p) {
  p.validate();
  const int sign = branch_sign(branch);
  if (!(sign * Q0 > 0.0))
    throw DomainError("make_critical: mass flux sign must match the branch");
  const double rc = p.critical_radius();
  SteadySolution s;
  s.anchor_r_ = rc;
  s.anchor_ = {Q0 / (rc * rc * sign * p.k), sign * p.k};
  s.params_ = p;
  s.Q0_ = Q0;
  s.family_.tag = SteadyTag::Critical;
  s.family_.sign_v = sign;
  s.family_.sign_sonic = 0;
  s.family_.critical = branch;
  s.G0_ = critical_G(p);
  s.S0_ = 0.0;
  return s;
}

CriticalBranch matching_critical_branch(const SteadySolution& s) noexcept {
  if (s.family().critical) return *s.family().critical;
  const double x0 = s.anchor_r() / s.params().critical_radius();
  const bool subsonic = s.family().sign_sonic < 0;
  const bool flat = (x0 < 1.0) == subsonic;
  if (s.family().sign_v >= 0) return flat ? CriticalBranch::PFlat : CriticalBranch::PSharp;
  return flat ? CriticalBranch::NFlat : CriticalBranch::NSharp;
}

bool SteadySolution::subsonic_at(double r) const noexcept {
  if (family_.critical) return critical_subsonic(*family_.critical, r / params_.critical_radius());
  return family_.sign_sonic < 0;
}

double SteadySolution::velocity(double r) const {
  if (r == anchor_r_) return anchor_.v;
  require_radius(r, "eval_steady");
  const double tol = 1e-12 * std::max(1.0, r);
  if (r < domain_.lo - tol || r > domain_.hi + tol)
    throw SonicError("eval_steady: radius outside the steady domain", r,
                     sonic_r_.value_or(domain_.lo));

  switch (family_.tag) {
    case SteadyTag::Constant:
      return anchor_.v;
    case SteadyTag::Static:
      return 0.0;
    default:
      break;
  }
  const ModelParams& p = params_;
  const double x = r / p.critical_radius();
  if (family_.critical && x == 1.0) return family_.sign_v * p.k;
  const double c = 2.0 * q_of(x) + S0_ / (p.k * p.k);
  const double eta = solve_eta(c, subsonic_at(r));
  return family_.sign_v * p.k * std::exp(eta);
}

FluidState SteadySolution::at(double r) const {
  if (r == anchor_r_) return anchor_;
  const double v = velocity(r);
  switch (family_.tag) {
    case SteadyTag::Constant:
      return anchor_;
    case SteadyTag::Static: {
      const ModelParams& p = params_;
      return {anchor_.rho * std::exp(p.m / (p.k * p.k) * (1.0 / r - 1.0 / anchor_r_)), 0.0};
    }
    default:
      return {Q0_ / (r * r * v), v};
  }
}

double eval_critical(CriticalBranch branch, double r, const ModelParams& p) {
  p.validate();
  require_radius(r, "eval_critical");
  const int sign = branch_sign(branch);
  const double x = r / p.critical_radius();
  if (x == 1.0) return sign * p.k;
  const double eta = solve_eta(2.0 * q_of(x), critical_subsonic(branch, x));
  return sign * p.k * std::exp(eta);
}

FluidState steady_shock_conjugate(const FluidState& s, const ModelParams& p) {
  validate_state(s);
  const double k = p.k;
  const bool admissible = (s.v > -k && s.v < 0.0) || s.v > k;
  if (!admissible)
    throw DomainError("steady_shock_conjugate: v_L must lie in (-k, 0) or (k, inf)");
  return {s.rho * s.v * s.v / (k * k), k * k / s.v};
}

bool equivalent(const SteadySolution& a, const SteadySolution& b, double tol) noexcept {
  const SteadyFamily& fa = a.family();
  const SteadyFamily& fb = b.family();
  if (fa.tag != fb.tag || fa.sign_v != fb.sign_v) return false;
  switch (fa.tag) {
    case SteadyTag::Constant: {
      const FluidState& sa = a.anchor_state();
      const FluidState& sb = b.anchor_state();
      return std::abs(std::log(sa.rho / sb.rho)) <= tol &&
             std::abs(sa.v - sb.v) <= tol * std::max(1.0, std::abs(sa.v));
    }
    case SteadyTag::Static: {
      const FluidState sb = b.at(a.anchor_r());
      return std::abs(std::log(a.anchor_state().rho / sb.rho)) <= tol;
    }
    case SteadyTag::Critical:
      if (fa.critical != fb.critical) return false;
      break;
    default:
      if (fa.sign_sonic != fb.sign_sonic) return false;
      if ((a.domain().lo > 0.0) != (b.domain().lo > 0.0)) return false;
      break;
  }
  const double scale = std::max(1.0, std::abs(a.G0()));
  return std::abs(a.Q0() - b.Q0()) <= tol * std::abs(a.Q0()) &&
         std::abs(a.S0() - b.S0()) <= tol * scale;
}

}  // namespace wbglimm
