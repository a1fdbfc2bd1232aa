#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "wbglimm/grp.hpp"
#include "wbglimm/model.hpp"
#include "wbglimm/sampler.hpp"
#include "wbglimm/steady.hpp"

namespace wbglimm {

struct GridSpec {
  double r_min = 1.0;
  double r_max = 5.0;
  double dr = 0.02;
  double cfl = 0.45;
  double t_end = 1.0;

  /// Number of mesh intervals; (r_max − r_min)/dr rounded to the nearest integer.
  long intervals() const;
  double node(long i) const noexcept { return r_min + static_cast<double>(i) * dr; }
  void validate() const;
};

struct GlimmOptions {
  /// GRP settings used inside one time step (horizon = Δt).
  GrpOptions grp = [] {
    GrpOptions g;
    g.fan.characteristics = 16;
    g.fan.start_fraction = 1e-4;
    g.fan.growth = 1.3;
    g.fan.max_steps = 16;
    g.curve_steps = 4;
    return g;
  }();
  /// Trace jumps below this size in |Δ ln ρ| + |Δv| are not discontinuities.
  double jump_tolerance = 1e-12;
  /// Spacing of the samples used for TV of the smooth pieces, as a fraction of Δr.
  double tv_resolution = 0.25;
  /// Δt halvings allowed when a cell problem fails.
  int max_halvings = 40;
};

/// Piece of the piecewise-steady field on [lo, hi].
struct Segment {
  double lo;
  double hi;
  std::shared_ptr<const SteadySolution> steady;
};

struct Discontinuity {
  double r;
  std::size_t left;  ///< index of the segment on the left
  double strength;   ///< |Δ ln ρ| + |Δv| of the traces
};

struct GlimmState {
  double t = 0.0;
  std::uint64_t n = 0;
  /// Cells of level n are centred on nodes with parity (n + 1) mod 2.
  std::vector<Segment> segments;

  FluidState at(double r) const;
  const Segment& segment_at(double r) const;
};

/// Jumps between consecutive segments larger than `tolerance`.
std::vector<Discontinuity> discontinuities(const GlimmState& s, double tolerance = 1e-12);

using InitialData = std::function<FluidState(double)>;

/// Piecewise-steady approximation of `data`, anchored at the centres of the
/// level-0 cells, with sonic splicing. Neighbouring anchors that yield the
/// same steady solution are merged into one segment.
GlimmState init_approximation(const InitialData& data, const GridSpec& grid, const ModelParams& p,
                              const GlimmOptions& opt = {});

struct StepInfo {
  double dt = 0.0;
  int halvings = 0;
  int grp_cells = 0;
  int triple_cells = 0;
};

/// Advances one Glimm step of at most dt_limit (CFL-limited).
StepInfo step(GlimmState& state, const GridSpec& grid, const ModelParams& p, const Sampler& sampler,
              double dt_limit, const GlimmOptions& opt = {});

enum class Field { LnRho, Velocity };

/// Jumps plus sampled variation of the smooth pieces.
double total_variation(const GlimmState& s, Field field, double resolution);

struct TvRecord {
  std::uint64_t n;
  double t;
  double dt;
  double tv_lnrho;
  double tv_v;
  double max_abs_v;
  double min_rho;
  double max_rho;
};

struct TvLog {
  std::vector<TvRecord> records;

  /// max over steps of (TV_{n+1} − TV_n)⁺/Δt for ln ρ.
  double fitted_C() const;
  /// max over steps of (TV_{n+1} − TV_n)/(TV_n Δt) for ln ρ, floored at 0.
  double fitted_C1() const;
  /// TV(t_n) ≤ TV(0)·exp(C1·t_n) at every record (relative slack 1e-12).
  bool envelope_holds(double C1) const;
};

TvRecord measure(const GlimmState& s, double dt, double resolution);

struct Snapshot {
  double t;
  std::vector<double> r;
  std::vector<FluidState> u;
  /// Radii of the discontinuities at t.
  std::vector<double> jumps;
};

struct RunResult {
  GlimmState state;
  TvLog tv;
  std::vector<Snapshot> snapshots;
  int grp_cells = 0;
  int triple_cells = 0;
};

/// Steps from 0 to grid.t_end, logging TV every step and taking snapshots on
/// `output_r` at each time in `snapshot_times` (the final time is always
/// included).
RunResult run(const InitialData& data, const GridSpec& grid, const ModelParams& p,
              std::uint64_t seed_offset, const std::vector<double>& output_r,
              std::vector<double> snapshot_times = {}, const GlimmOptions& opt = {});

}  // namespace wbglimm
