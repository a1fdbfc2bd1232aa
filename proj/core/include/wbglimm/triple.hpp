#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "wbglimm/grp.hpp"
#include "wbglimm/steady.hpp"

namespace wbglimm {

enum class InteractionCase { SS, RS, SR };

/// One time stage of a piecewise solution: regions separated by ordered
/// curves cut[0] ≤ cut[1] ≤ …, each region with its own evaluator.
struct Stage {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<std::function<double(double)>> cuts;
  std::vector<std::function<FluidState(double, double)>> pieces;

  FluidState at(double t, double r) const;
};

/// Wave interaction resolved after the first collision.
struct InteractionResolution {
  InteractionCase kind = InteractionCase::SS;
  /// GRPs created by the resolution: one for SS; stage 0 and stage 1 for RS/SR.
  std::vector<std::shared_ptr<const GrpSolution>> grps;
  /// Stage switch time for RS/SR (NaN for SS).
  double switch_time = std::numeric_limits<double>::quiet_NaN();
  /// End of validity of the resolution (T_ss, T_rs or T_sr).
  double valid_until = std::numeric_limits<double>::infinity();
};

class TripleSolution {
public:
  const SteadySolution& alpha() const noexcept { return alpha_; }
  const SteadySolution& beta() const noexcept { return beta_; }
  const SteadySolution& gamma() const noexcept { return gamma_; }
  double r_s() const noexcept { return r_s_; }
  double r_b() const noexcept { return r_b_; }
  const GrpSolution& left_grp() const noexcept { return *left_; }
  const GrpSolution& right_grp() const noexcept { return *right_; }
  /// First interaction time, +∞ when the waves do not meet before the horizon.
  double first_interaction_time() const noexcept { return t_f_; }
  const std::optional<InteractionResolution>& resolution() const noexcept { return post_; }
  double horizon() const noexcept { return horizon_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }

  FluidState at(double t, double r) const;

private:
  friend TripleSolution solve_triple(const SteadySolution&, const SteadySolution&,
                                     const SteadySolution&, double, double, double,
                                     const GrpOptions&);

  SteadySolution alpha_, beta_, gamma_;
  double r_s_ = 0.0, r_b_ = 0.0;
  std::shared_ptr<const GrpSolution> left_, right_;
  double t_f_ = std::numeric_limits<double>::infinity();
  std::optional<InteractionResolution> post_;
  double horizon_ = 0.0;
  std::vector<Stage> stages_;
};

/// Earliest t ≤ horizon where the left problem's outermost 2-wave edge meets
/// the right problem's innermost 1-wave edge; +∞ if none. Null waves never
/// interact.
double first_interaction(const GrpSolution& left, const GrpSolution& right, double horizon);

/// Requires r_s < r_b. Throws TripleError when a further interaction occurs
/// before the horizon or the pair of colliding waves is rarefaction–rarefaction.
TripleSolution solve_triple(const SteadySolution& alpha, const SteadySolution& beta,
                            const SteadySolution& gamma, double r_s, double r_b, double horizon,
                            const GrpOptions& opt = {});

inline FluidState eval_triple(const TripleSolution& ts, double t, double r) { return ts.at(t, r); }

}  // namespace wbglimm
