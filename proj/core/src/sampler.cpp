#include "wbglimm/sampler.hpp"

#include <algorithm>

namespace wbglimm {

double radical_inverse2(std::uint64_t n) noexcept {
  double result = 0.0;
  double scale = 0.5;
  while (n != 0) {
    if (n & 1u) result += scale;
    scale *= 0.5;
    n >>= 1;
  }
  return result;
}

double sample_point(double theta, long j, double dr, double r_min, double r_max) noexcept {
  const double r = r_min + (theta + static_cast<double>(j)) * dr;
  return std::clamp(r, r_min, r_max);
}

}  // namespace wbglimm
