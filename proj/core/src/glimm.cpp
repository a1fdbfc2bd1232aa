#include "wbglimm/glimm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wbglimm/errors.hpp"
#include "wbglimm/triple.hpp"

namespace wbglimm {

namespace {

using SteadyPtr = std::shared_ptr<const SteadySolution>;

struct Cell {
  double lo;
  double hi;
  SteadyPtr steady;
};

bool same_steady(const SteadyPtr& a, const SteadyPtr& b) {
  return a == b || equivalent(*a, *b);
}

// Replaces the part of each cell beyond its steady state's sonic point by the
// neighbouring cell's steady state when that one covers it, else by the
// critical solution sharing its signs; then merges equal neighbours.
std::vector<Segment> splice_and_merge(const std::vector<Cell>& cells, const ModelParams& p) {
  std::vector<Segment> out;
  auto push = [&](double lo, double hi, const SteadyPtr& s) {
    if (!(hi > lo)) return;
    if (!out.empty() && same_steady(out.back().steady, s)) {
      out.back().hi = hi;
      return;
    }
    out.push_back({lo, hi, s});
  };
  auto filler = [&](std::size_t k, bool left_side, double lo, double hi) -> SteadyPtr {
    if (left_side && k > 0 && cells[k - 1].steady->covers(lo, hi)) return cells[k - 1].steady;
    if (!left_side && k + 1 < cells.size() && cells[k + 1].steady->covers(lo, hi))
      return cells[k + 1].steady;
    const SteadySolution& s = *cells[k].steady;
    return std::make_shared<const SteadySolution>(
        make_critical(matching_critical_branch(s), s.Q0(), p));
  };
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Cell& c = cells[k];
    const Interval& d = c.steady->domain();
    if (d.lo > c.lo) {
      push(c.lo, d.lo, filler(k, true, c.lo, d.lo));
      push(d.lo, c.hi, c.steady);
    } else if (d.hi < c.hi) {
      push(c.lo, d.hi, c.steady);
      push(d.hi, c.hi, filler(k, false, d.hi, c.hi));
    } else {
      push(c.lo, c.hi, c.steady);
    }
  }
  return out;
}

double max_speed(const GlimmState& s, const GridSpec& grid, const ModelParams& p) {
  double smax = 0.0;
  auto include = [&](const FluidState& u) { smax = std::max(smax, std::abs(u.v) + p.k); };
  const long n = grid.intervals();
  for (long i = 0; i <= n; ++i) include(s.at(std::min(grid.node(i), grid.r_max)));
  for (const Segment& seg : s.segments) {
    include(seg.steady->at(seg.lo));
    include(seg.steady->at(seg.hi));
  }
  return smax;
}

SteadyPtr reanchor(double r, const FluidState& u, const ModelParams& p) {
  return std::make_shared<const SteadySolution>(solve_steady_any(r, u, p));
}

struct Advance {
  std::vector<Segment> segments;
  int grp_cells = 0;
  int triple_cells = 0;
};

Advance advance(const GlimmState& st, const GridSpec& grid, const ModelParams& p, double theta,
                double dt, double smax, const GlimmOptions& opt) {
  const std::vector<Discontinuity> jumps = discontinuities(st, opt.jump_tolerance);
  const double window = std::min(0.95 * grid.dr, 2.0 * smax * dt);
  const long n_int = grid.intervals();
  const long parity = static_cast<long>((st.n + 2) % 2);

  Advance out;
  std::vector<Cell> cells;
  for (long i = parity; i <= n_int; i += 2) {
    const double c = std::min(grid.node(i), grid.r_max);
    const double lo = std::max(grid.node(i - 1), grid.r_min);
    const double hi = std::min(grid.node(i + 1), grid.r_max);
    const double rs = std::clamp(sample_point(theta, i, grid.dr, grid.r_min, grid.r_max), lo, hi);

    std::vector<const Discontinuity*> near;
    for (const Discontinuity& d : jumps) {
      if (std::abs(d.r - rs) <= window) near.push_back(&d);
    }

    SteadyPtr chosen;
    try {
      if (near.empty()) {
        chosen = st.segment_at(rs).steady;
      } else if (near.size() == 1) {
        const Discontinuity& d = *near.front();
        const SteadyPtr& a = st.segments[d.left].steady;
        const SteadyPtr& b = st.segments[d.left + 1].steady;
        const GrpSolution g = solve_grp(*a, *b, d.r, dt, opt.grp);
        for (const TimeCurve& curve : g.curves().curves) {
          if (std::abs(curve.at(dt) - d.r) >= grid.dr) {
            throw GrpError("wave left its cell within one step", curve.at(dt));
          }
        }
        ++out.grp_cells;
        switch (g.region(dt, rs)) {
          case 0: chosen = a; break;
          case 4: chosen = b; break;
          case 2:
            if (equivalent(g.middle(), *a)) chosen = a;
            else if (equivalent(g.middle(), *b)) chosen = b;
            else chosen = std::make_shared<const SteadySolution>(g.middle());
            break;
          default: chosen = reanchor(rs, g.at(dt, rs), p); break;
        }
      } else if (near.size() == 2) {
        const Discontinuity& d1 = *near[0];
        const Discontinuity& d2 = *near[1];
        const TripleSolution ts =
            solve_triple(*st.segments[d1.left].steady, *st.segments[d1.left + 1].steady,
                         *st.segments[d2.left + 1].steady, d1.r, d2.r, dt, opt.grp);
        ++out.triple_cells;
        chosen = reanchor(rs, ts.at(dt, rs), p);
      } else {
        throw Error("more than two discontinuities in the domain of dependence");
      }
    } catch (const Error& e) {
      throw GrpError(std::string("cell centred at ") + std::to_string(c) + ": " + e.what(), rs);
    }
    cells.push_back({lo, hi, std::move(chosen)});
  }
  out.segments = splice_and_merge(cells, p);
  return out;
}

void sample_segment(const Segment& seg, double resolution,
                    const std::function<void(double, const FluidState&)>& f) {
  const double len = seg.hi - seg.lo;
  const long m = std::max(1L, static_cast<long>(std::ceil(len / resolution)));
  for (long q = 0; q <= m; ++q) {
    const double r =
        q == m ? seg.hi : seg.lo + len * static_cast<double>(q) / static_cast<double>(m);
    f(r, seg.steady->at(r));
  }
}

}  // namespace

long GridSpec::intervals() const {
  return std::lround((r_max - r_min) / dr);
}

void GridSpec::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw DomainError("grid needs 0 < r_min < r_max");
  if (!(dr > 0.0) || dr > r_max - r_min) throw DomainError("grid needs 0 < dr <= r_max - r_min");
  if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("grid cfl must lie in (0, 1)");
  if (!(t_end >= 0.0)) throw DomainError("grid t_end must be non-negative");
  const double n = (r_max - r_min) / dr;
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
    throw DomainError("grid dr must divide r_max - r_min");
  }
}

const Segment& GlimmState::segment_at(double r) const {
  if (segments.empty()) throw DomainError("empty Glimm state");
  auto it = std::lower_bound(segments.begin(), segments.end(), r,
                             [](const Segment& s, double x) { return s.hi < x; });
  if (it == segments.end()) --it;
  return *it;
}

FluidState GlimmState::at(double r) const { return segment_at(r).steady->at(r); }

std::vector<Discontinuity> discontinuities(const GlimmState& s, double tolerance) {
  std::vector<Discontinuity> out;
  for (std::size_t k = 0; k + 1 < s.segments.size(); ++k) {
    const Segment& a = s.segments[k];
    const Segment& b = s.segments[k + 1];
    if (a.steady == b.steady) continue;
    const FluidState ua = a.steady->at(a.hi);
    const FluidState ub = b.steady->at(a.hi);
    const double strength = std::abs(std::log(ua.rho / ub.rho)) + std::abs(ua.v - ub.v);
    if (strength > tolerance) out.push_back({a.hi, k, strength});
  }
  return out;
}

GlimmState init_approximation(const InitialData& data, const GridSpec& grid, const ModelParams& p,
                              const GlimmOptions&) {
  grid.validate();
  p.validate();
  const long n_int = grid.intervals();
  std::vector<Cell> cells;
  for (long i = 1; i <= n_int; i += 2) {
    const double c = std::min(grid.node(i), grid.r_max);
    const double lo = std::max(grid.node(i - 1), grid.r_min);
    const double hi = std::min(grid.node(i + 1), grid.r_max);
    const FluidState u = data(c);
    validate_state(u);
    if (std::abs(u.v) < 1e-10 * p.k) {
      throw DomainError("initial velocity vanishes at r=" + std::to_string(c));
    }
    SteadyPtr s = std::make_shared<const SteadySolution>(solve_steady(c, u, p));
    if (!cells.empty() && equivalent(*cells.back().steady, *s)) s = cells.back().steady;
    cells.push_back({lo, hi, std::move(s)});
  }
  if (cells.empty()) {
    throw DomainError("grid has no cells");
  }
  GlimmState st;
  st.segments = splice_and_merge(cells, p);
  return st;
}

StepInfo step(GlimmState& state, const GridSpec& grid, const ModelParams& p, const Sampler& sampler,
              double dt_limit, const GlimmOptions& opt) {
  const double smax = max_speed(state, grid, p);
  double dt = std::min(grid.cfl * grid.dr / smax, dt_limit);
  if (!(dt > 0.0)) throw DomainError("non-positive time step");
  const double theta = sampler.theta(state.n + 1);
  const double dt_floor = 1e-12 * std::max(grid.t_end, grid.dr);

  StepInfo info;
  for (;;) {
    try {
      Advance a = advance(state, grid, p, theta, dt, smax, opt);
      state.segments = std::move(a.segments);
      state.t += dt;
      state.n += 1;
      info.dt = dt;
      info.grp_cells = a.grp_cells;
      info.triple_cells = a.triple_cells;
      return info;
    } catch (const Error& e) {
      if (info.halvings >= opt.max_halvings || dt * 0.5 < dt_floor) {
        throw Error("Glimm step " + std::to_string(state.n + 1) + " at t=" +
                    std::to_string(state.t) + " failed: " + e.what());
      }
      dt *= 0.5;
      ++info.halvings;
    }
  }
}

double total_variation(const GlimmState& s, Field field, double resolution) {
  double tv = 0.0;
  bool have = false;
  double prev = 0.0;
  for (const Segment& seg : s.segments) {
    sample_segment(seg, resolution, [&](double, const FluidState& u) {
      const double f = field == Field::LnRho ? std::log(u.rho) : u.v;
      if (have) tv += std::abs(f - prev);
      prev = f;
      have = true;
    });
  }
  return tv;
}

TvRecord measure(const GlimmState& s, double dt, double resolution) {
  TvRecord rec{s.n, s.t, dt, 0.0, 0.0, 0.0, std::numeric_limits<double>::infinity(), 0.0};
  bool have = false;
  double prev_l = 0.0, prev_v = 0.0;
  for (const Segment& seg : s.segments) {
    sample_segment(seg, resolution, [&](double, const FluidState& u) {
      const double l = std::log(u.rho);
      if (have) {
        rec.tv_lnrho += std::abs(l - prev_l);
        rec.tv_v += std::abs(u.v - prev_v);
      }
      prev_l = l;
      prev_v = u.v;
      have = true;
      rec.max_abs_v = std::max(rec.max_abs_v, std::abs(u.v));
      rec.min_rho = std::min(rec.min_rho, u.rho);
      rec.max_rho = std::max(rec.max_rho, u.rho);
    });
  }
  return rec;
}

double TvLog::fitted_C() const {
  double c = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const double dt = records[k].dt;
    if (dt > 0.0) c = std::max(c, (records[k].tv_lnrho - records[k - 1].tv_lnrho) / dt);
  }
  return c;
}

double TvLog::fitted_C1() const {
  double c = 0.0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    const double dt = records[k].dt;
    const double tv = records[k - 1].tv_lnrho;
    if (dt > 0.0 && tv > 0.0) c = std::max(c, (records[k].tv_lnrho - tv) / (tv * dt));
  }
  return c;
}

bool TvLog::envelope_holds(double C1) const {
  if (records.empty()) return true;
  const double tv0 = records.front().tv_lnrho;
  for (const TvRecord& r : records) {
    if (r.tv_lnrho > tv0 * std::exp(C1 * r.t) * (1.0 + 1e-12) + 1e-14) return false;
  }
  return true;
}

RunResult run(const InitialData& data, const GridSpec& grid, const ModelParams& p,
              std::uint64_t seed_offset, const std::vector<double>& output_r,
              std::vector<double> snapshot_times, const GlimmOptions& opt) {
  RunResult res;
  res.state = init_approximation(data, grid, p, opt);
  const double resolution = opt.tv_resolution * grid.dr;
  res.tv.records.push_back(measure(res.state, 0.0, resolution));

  snapshot_times.push_back(grid.t_end);
  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()),
                       snapshot_times.end());
  auto snapshot = [&] {
    Snapshot s{res.state.t, output_r, {}, {}};
    s.u.reserve(output_r.size());
    for (double r : output_r) s.u.push_back(res.state.at(r));
    for (const Discontinuity& d : discontinuities(res.state, opt.jump_tolerance)) {
      s.jumps.push_back(d.r);
    }
    res.snapshots.push_back(std::move(s));
  };

  const Sampler sampler(seed_offset);
  std::size_t next = 0;
  const double slack = 1e-12 * std::max(1.0, grid.t_end);
  while (next < snapshot_times.size() && snapshot_times[next] <= slack) {
    snapshot();
    ++next;
  }
  while (res.state.t < grid.t_end - slack) {
    const double target = std::min(grid.t_end, snapshot_times[next]);
    const StepInfo info = step(res.state, grid, p, sampler, target - res.state.t, opt);
    res.grp_cells += info.grp_cells;
    res.triple_cells += info.triple_cells;
    res.tv.records.push_back(measure(res.state, info.dt, resolution));
    if (std::abs(res.state.t - target) <= slack) {
      res.state.t = target;
      snapshot();
      ++next;
    }
  }
  return res;
}

}  // namespace wbglimm
