#pragma once

#include <cmath>

#include "wbglimm/model.hpp"

namespace wbglimm {

enum class WaveType { Null, Shock, Rarefaction };

/// One of the two waves of a homogeneous Riemann fan.
struct WaveDescriptor {
  WaveType type = WaveType::Null;
  int family = 1;
  /// Shock speed (also the speed of a Null wave, where head = tail).
  double sigma = 0.0;
  /// Head and tail slopes of a rarefaction, xi_left ≤ xi_right.
  double xi_left = 0.0;
  double xi_right = 0.0;

  double slowest() const noexcept { return type == WaveType::Rarefaction ? xi_left : sigma; }
  double fastest() const noexcept { return type == WaveType::Rarefaction ? xi_right : sigma; }
};

/// Self-similar solution of the homogeneous Riemann problem.
struct WaveFan {
  FluidState left;
  FluidState middle;
  FluidState right;
  WaveDescriptor wave1;
  WaveDescriptor wave2;
};

struct ShockPoint {
  FluidState state;
  double sigma;
};

// Curve evaluators. They are total on ρ > 0 and do not check admissibility.

/// 1-rarefaction curve through `anchor`: v − v_L = −k ln(ρ/ρ_L).
FluidState rarefaction1(double rho, const FluidState& anchor, const ModelParams& p);
/// 2-rarefaction curve through `anchor`: v − v_R = k ln(ρ/ρ_R).
FluidState rarefaction2(double rho, const FluidState& anchor, const ModelParams& p);
/// 1-shock curve from the left state `anchor`, with its speed.
ShockPoint shock1(double rho, const FluidState& anchor, const ModelParams& p);
/// 2-shock curve from the right state `anchor`, with its speed.
ShockPoint shock2(double rho, const FluidState& anchor, const ModelParams& p);

/// Φ±(γ) = 1 + γ(1 ± √(1 + 2/γ)), with Φ±(0) = 1. Throws DomainError for γ < 0.
double phi_plus(double gamma);
double phi_minus(double gamma);

/// σ1 = v − k√(ρ_L/ρ), evaluated with the post-shock state `right`.
inline double shock_speed1(const FluidState& left, const FluidState& right, const ModelParams& p) {
  return right.v - p.k * std::sqrt(left.rho / right.rho);
}

/// σ2 = v + k√(ρ_R/ρ), evaluated with the pre-shock state `left`.
inline double shock_speed2(const FluidState& left, const FluidState& right, const ModelParams& p) {
  return left.v + p.k * std::sqrt(right.rho / left.rho);
}

/// Exact entropic solution of the homogeneous Riemann problem.
WaveFan solve_riemann(const FluidState& left, const FluidState& right, const ModelParams& p);

/// Evaluates the fan at the self-similar slope xi = (r − r0)/t.
FluidState sample_fan(const WaveFan& fan, double xi, const ModelParams& p) noexcept;

/// |ln ρ_L − ln ρ_M| + |ln ρ_R − ln ρ_M|.
double wave_strength(const FluidState& left, const FluidState& right, const ModelParams& p);

/// Lax inequalities for the shock descriptor of `fan`'s given family.
bool lax_admissible(const WaveFan& fan, int family, const ModelParams& p) noexcept;

/// Below these differences in (ln ρ, v) a wave is classified as Null.
inline constexpr double kNullWaveTolerance = 1e-13;

}  // namespace wbglimm
