#pragma once

#include <utility>

namespace wbglimm {

/// Black-hole mass m and isothermal sound speed k. Units are abstract: m and
/// k fix every length, time and velocity scale of the problem.
struct ModelParams {
  double m = 1.0;
  double k = 1.0;
  /// When false, the geometric source term is switched off and the model
  /// reduces to the homogeneous isothermal system. Steady states then become
  /// constant states. Used to check reductions against the classical solver.
  bool with_source = true;

  /// Radius m/(2k²) at which the critical steady curves become sonic.
  double critical_radius() const noexcept { return m / (2.0 * k * k); }

  /// Throws DomainError unless m > 0 and k > 0.
  void validate() const;
};

/// Pointwise unknown (ρ, v).
struct FluidState {
  double rho = 1.0;
  double v = 0.0;

  friend bool operator==(const FluidState&, const FluidState&) = default;
};

/// Riemann-invariant coordinates w = v + k ln ρ, z = v − k ln ρ.
struct InvariantPoint {
  double w = 0.0;
  double z = 0.0;
};

struct Eigenvalues {
  double lambda;  ///< v − k
  double mu;      ///< v + k
};

struct Flux {
  double mass;      ///< ρv
  double momentum;  ///< ρ(v² + k²)
};

struct Source {
  double mass;
  double momentum;
};

Eigenvalues eigenvalues(const FluidState& s, const ModelParams& p) noexcept;

inline double lambda1(const FluidState& s, const ModelParams& p) noexcept { return s.v - p.k; }
inline double lambda2(const FluidState& s, const ModelParams& p) noexcept { return s.v + p.k; }

/// Throws DomainError for ρ ≤ 0 or non-finite input.
InvariantPoint to_invariants(const FluidState& s, const ModelParams& p);
FluidState from_invariants(const InvariantPoint& q, const ModelParams& p) noexcept;

Flux flux(const FluidState& s, const ModelParams& p) noexcept;

/// Geometric source at radius r. Throws DomainError for r ≤ 0.
Source source(double r, const FluidState& s, const ModelParams& p);

/// Source projected on the invariants: dw/dt along μ-characteristics and
/// dz/dt along λ-characteristics.
struct InvariantSource {
  double w;
  double z;
};
InvariantSource invariant_source(double r, double v, const ModelParams& p) noexcept;

/// max(|σ[ρ] − [ρv]|, |σ[ρv] − [ρ(v²+k²)]|) for the jump left → right.
double rankine_hugoniot_residual(const FluidState& left, const FluidState& right,
                                 double sigma, const ModelParams& p) noexcept;

/// Throws DomainError if ρ is not a positive finite number or v is not finite.
void validate_state(const FluidState& s);

}  // namespace wbglimm
