#pragma once

#include <limits>
#include <optional>

#include "wbglimm/model.hpp"

namespace wbglimm {

enum class SteadyTag {
  GlobalSmooth,  ///< defined on (0, ∞), never sonic
  Critical,      ///< passes through (m/2k², ±k)
  SonicLimited,  ///< defined up to a sonic radius on one side of m/2k²
  Static,        ///< hydrostatic v ≡ 0 (arises only inside the evolution)
  Constant,      ///< source switched off: steady states are constant
};

/// The four critical curves. Flat curves are subsonic inside m/2k² and
/// supersonic outside; sharp curves the reverse. P: v > 0, N: v < 0.
enum class CriticalBranch { PFlat, PSharp, NFlat, NSharp };

struct SteadyFamily {
  SteadyTag tag = SteadyTag::GlobalSmooth;
  int sign_v = 1;      ///< sgn v
  int sign_sonic = -1; ///< sgn(|v| − k) at the anchor
  std::optional<CriticalBranch> critical;
};

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double r) const noexcept { return r >= lo && r <= hi; }
  bool contains(double a, double b) const noexcept { return a >= lo && b <= hi; }
};

/// Branch-resolved solution of the static system through an anchor point.
/// Immutable after construction; evaluation is pure.
class SteadySolution {
public:
  double anchor_r() const noexcept { return anchor_r_; }
  const FluidState& anchor_state() const noexcept { return anchor_; }
  const ModelParams& params() const noexcept { return params_; }
  const SteadyFamily& family() const noexcept { return family_; }
  SteadyTag tag() const noexcept { return family_.tag; }
  /// Bernoulli-type constant G(r₀, v₀); −∞ for the static family.
  double G0() const noexcept { return G0_; }
  /// G0 − G(m/2k², ±k); zero exactly for critical solutions.
  double S0() const noexcept { return S0_; }
  /// Mass flux r²ρv.
  double Q0() const noexcept { return Q0_; }
  const Interval& domain() const noexcept { return domain_; }
  std::optional<double> sonic_radius() const noexcept { return sonic_r_; }

  /// State at radius r. Throws SonicError outside the domain.
  FluidState at(double r) const;
  /// Velocity only; same contract as at().
  double velocity(double r) const;

  bool covers(double lo, double hi) const noexcept { return domain_.contains(lo, hi); }

private:
  friend SteadySolution solve_steady(double, const FluidState&, const ModelParams&);
  friend SteadySolution solve_static(double, double, const ModelParams&);
  friend SteadySolution make_critical(CriticalBranch, double, const ModelParams&);
  friend SteadySolution solve_steady_any(double, const FluidState&, const ModelParams&);

  bool subsonic_at(double r) const noexcept;

  double anchor_r_ = 1.0;
  FluidState anchor_;
  ModelParams params_;
  SteadyFamily family_;
  double G0_ = 0.0;
  double S0_ = 0.0;
  double Q0_ = 0.0;
  Interval domain_;
  std::optional<double> sonic_r_;
};

/// G(r, v) = ½v² − k² ln(r² sgn(v₀) v) − m/r. Throws DomainError if the
/// logarithm's argument is not positive.
double G_value(double r, double v, int sign_ref, const ModelParams& p);

/// S(r, v) = G(r, v) − G(m/2k², ±k), computed in a cancellation-free form.
double critical_S(double r, double v, const ModelParams& p);

/// G(m/2k², ±k) = −3/2 k² − k² ln(m²/4k³).
double critical_G(const ModelParams& p) noexcept;

/// Classifies and constructs the steady solution through (r, s). Requires
/// r > 0, ρ > 0 and v ≠ 0.
SteadySolution solve_steady(double anchor_r, const FluidState& anchor, const ModelParams& p);

/// Hydrostatic solution ρ(r) = ρ₀ exp((m/k²)(1/r − 1/r₀)), v ≡ 0.
SteadySolution solve_static(double anchor_r, double rho, const ModelParams& p);

/// solve_steady, falling back to solve_static when v is exactly zero.
SteadySolution solve_steady_any(double anchor_r, const FluidState& anchor, const ModelParams& p);

/// Critical steady solution on `branch` carrying mass flux Q0 (sign must
/// match the branch).
SteadySolution make_critical(CriticalBranch branch, double Q0, const ModelParams& p);

/// Critical branch sharing sgn v and the sub/supersonic character of the
/// solution on the anchor's side of m/2k².
CriticalBranch matching_critical_branch(const SteadySolution& s) noexcept;

inline FluidState eval_steady(const SteadySolution& s, double r) { return s.at(r); }

/// Velocity on a critical branch at r.
double eval_critical(CriticalBranch branch, double r, const ModelParams& p);

/// Zero-speed shock partner of s: v_R = k²/v_L, ρ_R = ρ_L v_L²/k².
/// Requires v_L ∈ (−k, 0) ∪ (k, ∞).
FluidState steady_shock_conjugate(const FluidState& s, const ModelParams& p);

/// Same family, branch and constants to relative tolerance `tol`.
bool equivalent(const SteadySolution& a, const SteadySolution& b, double tol = 1e-12) noexcept;

/// Sonic radius bracketed on one side of m/2k²: solves G(r, ±k) = G0 i.e.
/// q(r/rc) = −S0/2k². `inner` selects the root below m/2k².
double sonic_radius_for(double S0, bool inner, const ModelParams& p);

}  // namespace wbglimm
