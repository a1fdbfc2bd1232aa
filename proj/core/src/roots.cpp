#include "wbglimm/roots.hpp"

#include <cmath>
#include <utility>

#include "wbglimm/errors.hpp"

namespace wbglimm::roots {

Result newton_bisect(const ValueAndSlope& fdf, double lo, double hi, const Options& opt) {
  if (lo > hi) std::swap(lo, hi);
  double flo = 0.0, fhi = 0.0, d = 0.0;
  fdf(lo, flo, d);
  fdf(hi, fhi, d);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0.0) == (fhi > 0.0))
    throw DomainError("newton_bisect: root not bracketed");

  // Orient so that f(a) < 0 < f(b).
  double a = flo < 0.0 ? lo : hi;
  double b = flo < 0.0 ? hi : lo;

  double x = 0.5 * (lo + hi);
  double fx = 0.0, dfx = 0.0;
  fdf(x, fx, dfx);
  double prev_step = std::abs(hi - lo);
  double step = prev_step;

  for (int it = 1; it <= opt.max_iterations; ++it) {
    if (fx == 0.0 || std::abs(fx) <= opt.f_tol) return {x, fx, it};
    if (fx < 0.0) a = x; else b = x;

    const double newton = dfx != 0.0 ? x - fx / dfx : x;
    const double blo = std::min(a, b), bhi = std::max(a, b);
    const bool inside = dfx != 0.0 && newton > blo && newton < bhi;
    const bool fast = std::abs(fx / (dfx != 0.0 ? dfx : 1.0)) < 0.5 * std::abs(prev_step);
    double next;
    if (inside && fast) {
      next = newton;
    } else {
      next = 0.5 * (a + b);
    }
    prev_step = step;
    step = next - x;
    x = next;
    fdf(x, fx, dfx);
    const double width = std::abs(b - a);
    const double x_scale = opt.x_tol * (1.0 + std::abs(x));
    if (std::abs(step) <= x_scale || width <= x_scale)
      return {x, fx, it};
  }
  throw ConvergenceError("newton_bisect: no convergence", opt.max_iterations, std::abs(fx));
}

Result bisect(const std::function<double(double)>& f, double lo, double hi, const Options& opt) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0.0) == (fhi > 0.0)) throw DomainError("bisect: root not bracketed");
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0 || std::abs(hi - lo) <= opt.x_tol * (1.0 + std::abs(mid)))
      return {mid, fm, it};
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisect: no convergence", opt.max_iterations, std::abs(hi - lo));
}

bool expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    int max_expansions) {
  double flo = f(lo), fhi = f(hi);
  for (int i = 0; i < max_expansions; ++i) {
    if ((flo > 0.0) != (fhi > 0.0) || flo == 0.0 || fhi == 0.0) return true;
    const double width = hi - lo;
    if (std::abs(flo) < std::abs(fhi)) {
      lo -= width;
      flo = f(lo);
    } else {
      hi += width;
      fhi = f(hi);
    }
  }
  return false;
}

}  // namespace wbglimm::roots
