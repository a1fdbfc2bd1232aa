#include "wbglimm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wbglimm/errors.hpp"

namespace wbglimm {

void ModelParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("model: mass m must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("model: sound speed k must be positive");
}

void validate_state(const FluidState& s) {
  if (!(s.rho > 0.0) || !std::isfinite(s.rho))
    throw DomainError("state: density must be positive, got " + std::to_string(s.rho));
  if (!std::isfinite(s.v)) throw DomainError("state: velocity is not finite");
}

Eigenvalues eigenvalues(const FluidState& s, const ModelParams& p) noexcept {
  return {s.v - p.k, s.v + p.k};
}

InvariantPoint to_invariants(const FluidState& s, const ModelParams& p) {
  validate_state(s);
  const double klog = p.k * std::log(s.rho);
  return {s.v + klog, s.v - klog};
}

FluidState from_invariants(const InvariantPoint& q, const ModelParams& p) noexcept {
  return {std::exp((q.w - q.z) / (2.0 * p.k)), 0.5 * (q.w + q.z)};
}

Flux flux(const FluidState& s, const ModelParams& p) noexcept {
  return {s.rho * s.v, s.rho * (s.v * s.v + p.k * p.k)};
}

Source source(double r, const FluidState& s, const ModelParams& p) {
  if (!(r > 0.0)) throw DomainError("source: radius must be positive");
  if (!p.with_source) return {0.0, 0.0};
  return {-2.0 / r * s.rho * s.v, -2.0 / r * s.rho * s.v * s.v - p.m / (r * r) * s.rho};
}

InvariantSource invariant_source(double r, double v, const ModelParams& p) noexcept {
  if (!p.with_source) return {0.0, 0.0};
  const double gravity = -p.m / (r * r);
  const double geometric = 2.0 * p.k * v / r;
  return {gravity - geometric, gravity + geometric};
}

double rankine_hugoniot_residual(const FluidState& left, const FluidState& right,
                                 double sigma, const ModelParams& p) noexcept {
  const Flux fl = flux(left, p);
  const Flux fr = flux(right, p);
  const double mass = sigma * (right.rho - left.rho) - (fr.mass - fl.mass);
  const double mom =
      sigma * (right.rho * right.v - left.rho * left.v) - (fr.momentum - fl.momentum);
  return std::max(std::abs(mass), std::abs(mom));
}

}  // namespace wbglimm
