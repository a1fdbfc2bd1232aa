#pragma once

#include <cstdint>

namespace wbglimm {

/// Binary radical inverse of n (van der Corput sequence), in [0, 1).
double radical_inverse2(std::uint64_t n) noexcept;

/// Equidistributed sequence on (−1, 1): θ_n = 2φ(n + offset) − 1, n ≥ 1.
/// θ₁, θ₂, θ₃ = 0, −½, ½ for offset 0.
class Sampler {
public:
  explicit Sampler(std::uint64_t offset = 0) noexcept : offset_(offset) {}

  double theta(std::uint64_t n) const noexcept { return 2.0 * radical_inverse2(n + offset_) - 1.0; }
  std::uint64_t offset() const noexcept { return offset_; }

private:
  std::uint64_t offset_;
};

/// r = r_min + (θ + j)·Δr, clamped to [r_min, r_max].
double sample_point(double theta, long j, double dr, double r_min, double r_max) noexcept;

}  // namespace wbglimm
