#pragma once

#include <functional>

namespace wbglimm::roots {

struct Options {
  double x_tol = 1e-14;   ///< absolute tolerance on the bracket width / step
  double f_tol = 0.0;     ///< stop when |f| ≤ f_tol
  int max_iterations = 200;
};

struct Result {
  double x;
  double f;
  int iterations;
};

/// f and its derivative at x.
using ValueAndSlope = std::function<void(double x, double& f, double& df)>;

/// Newton iteration safeguarded by bisection on a sign-changing bracket
/// [lo, hi]. Newton steps that leave the bracket or fail to halve the
/// residual fall back to bisection. Throws ConvergenceError after
/// max_iterations, DomainError if the bracket does not change sign.
Result newton_bisect(const ValueAndSlope& f, double lo, double hi, const Options& opt = {});

/// Plain bisection; used where no derivative is available and as a test oracle.
Result bisect(const std::function<double(double)>& f, double lo, double hi,
              const Options& opt = {});

/// Widens [lo, hi] on the side with the larger |f| until f changes sign,
/// doubling the width each time. Returns false after max_expansions.
bool expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    int max_expansions = 200);

}  // namespace wbglimm::roots
