#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wbglimm/model.hpp"
#include "wbglimm/steady.hpp"
#include "wbglimm/waves.hpp"

namespace wbglimm {

/// A curve r(t) stored with its slope at each node; evaluated by cubic
/// Hermite interpolation.
struct TimeCurve {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> drdt;

  double at(double time) const;
  double slope(double time) const;
  double end_time() const noexcept { return t.empty() ? 0.0 : t.back(); }
};

enum class Boundary : int { LeftMinus = 0, LeftPlus = 1, RightMinus = 2, RightPlus = 3 };

/// The four wave-region boundaries r_LM⁻ ≤ r_LM⁺ ≤ r_MR⁻ ≤ r_MR⁺.
struct BoundaryCurves {
  std::array<TimeCurve, 4> curves;

  const TimeCurve& operator[](Boundary b) const { return curves[static_cast<int>(b)]; }
  TimeCurve& operator[](Boundary b) { return curves[static_cast<int>(b)]; }
};

struct FanOptions {
  int characteristics = 64;
  /// Smallest initial slope spacing (relative to k); weak fans use fewer
  /// characteristics, down to the two edges.
  double min_spacing = 1e-4;
  /// First lattice time as a fraction of the horizon; before it the fan is
  /// evaluated from the homogeneous self-similar profile.
  double start_fraction = 1e-8;
  /// Geometric growth of lattice time steps, capped at horizon/max_steps.
  double growth = 1.05;
  int max_steps = 128;
};

struct GrpOptions {
  FanOptions fan;
  /// Initial boundary-curve step is horizon/curve_steps; steps are halved
  /// until the Richardson estimate is below curve_tol·r0.
  int curve_steps = 64;
  double curve_tol = 1e-10;
};

/// Generalized rarefaction field: a lattice of characteristics of the fan's
/// family, labelled by their initial slope θ, each carrying its radius and
/// both Riemann invariants at every lattice time.
class GeneralizedFan {
public:
  int family() const noexcept { return family_; }
  double r0() const noexcept { return r0_; }
  double theta_min() const noexcept { return theta_.front(); }
  double theta_max() const noexcept { return theta_.back(); }
  std::size_t characteristics() const noexcept { return theta_.size(); }
  const std::vector<double>& theta() const noexcept { return theta_; }
  const std::vector<double>& times() const noexcept { return times_; }

  /// Characteristic positions at lattice time n, stored as r − r0.
  std::span<const double> offsets(std::size_t n) const { return row(d_, n); }
  std::span<const double> w(std::size_t n) const { return row(w_, n); }
  std::span<const double> z(std::size_t n) const { return row(z_, n); }

  /// State at (t, r); r is clamped to the fan edges at time t.
  FluidState at(double t, double r) const;

  /// Homogeneous self-similar profile h(θ) of the fan at t = 0+.
  FluidState self_similar(double theta) const noexcept;

private:
  friend GeneralizedFan solve_fan(int, const SteadySolution&, const SteadySolution&,
                                  const BoundaryCurves&, double, double, const FanOptions&);

  std::span<const double> row(const std::vector<double>& a, std::size_t n) const {
    return {a.data() + n * theta_.size(), theta_.size()};
  }

  int family_ = 1;
  double r0_ = 1.0;
  ModelParams params_;
  SteadySolution inner_, outer_;
  TimeCurve inner_edge_, outer_edge_;
  double invariant0_ = 0.0;  // w_L⁰ for a 1-fan, z_R⁰ for a 2-fan
  std::vector<double> theta_;
  std::vector<double> times_;
  std::vector<double> d_, w_, z_;
};

/// Solution of the generalized Riemann problem: steady states left, middle,
/// right joined by generalized 1- and 2-waves. Immutable after construction.
class GrpSolution {
public:
  const SteadySolution& left() const noexcept { return left_; }
  const SteadySolution& middle() const noexcept { return middle_; }
  const SteadySolution& right() const noexcept { return right_; }
  double r0() const noexcept { return r0_; }
  double horizon() const noexcept { return horizon_; }
  const ModelParams& params() const noexcept { return left_.params(); }

  /// Homogeneous Riemann fan of the traces at r0.
  const WaveFan& trace_fan() const noexcept { return trace_fan_; }
  WaveType kind1() const noexcept { return trace_fan_.wave1.type; }
  WaveType kind2() const noexcept { return trace_fan_.wave2.type; }

  const BoundaryCurves& curves() const noexcept { return curves_; }
  double boundary(Boundary b, double t) const { return curves_[b].at(t); }

  const GeneralizedFan* fan1() const noexcept { return fan1_ ? &*fan1_ : nullptr; }
  const GeneralizedFan* fan2() const noexcept { return fan2_ ? &*fan2_ : nullptr; }

  /// Region index 0..4: left, 1-fan, middle, 2-fan, right.
  int region(double t, double r) const;

  FluidState at(double t, double r) const;

private:
  friend GrpSolution solve_grp(const SteadySolution&, const SteadySolution&, double, double,
                               const GrpOptions&);

  SteadySolution left_, middle_, right_;
  double r0_ = 1.0;
  double horizon_ = 0.0;
  WaveFan trace_fan_;
  BoundaryCurves curves_;
  std::optional<GeneralizedFan> fan1_, fan2_;
};

/// Integrates the boundary ODEs of the wave regions on [0, horizon].
BoundaryCurves integrate_boundaries(const SteadySolution& left, const SteadySolution& middle,
                                    const SteadySolution& right, const WaveFan& trace_fan,
                                    double r0, double horizon, const GrpOptions& opt = {});

/// Builds the generalized rarefaction of `family` between the steady states
/// `inner` (left of the fan) and `outer` (right of the fan).
GeneralizedFan solve_fan(int family, const SteadySolution& inner, const SteadySolution& outer,
                         const BoundaryCurves& curves, double r0, double horizon,
                         const FanOptions& opt = {});

/// Requires r0 inside both steady domains and horizon > 0.
GrpSolution solve_grp(const SteadySolution& left, const SteadySolution& right, double r0,
                      double horizon, const GrpOptions& opt = {});

inline FluidState eval_grp(const GrpSolution& g, double t, double r) { return g.at(t, r); }

/// Two-sided states and speed of a generalized shock of `family` at time t.
struct ShockTrace {
  FluidState left;
  FluidState right;
  double position;
  double speed;
};
ShockTrace shock_trace(const GrpSolution& g, int family, double t);

}  // namespace wbglimm
