#include <algorithm>
#include <cmath>
#include <string>

#include "wbglimm/errors.hpp"
#include "wbglimm/grp.hpp"

namespace wbglimm {

namespace {

struct Row {
  std::vector<double> d, w, z;
};

FluidState from_wz(double w, double z, double k) {
  return {std::exp((w - z) / (2.0 * k)), 0.5 * (w + z)};
}

void set_edge(Row& row, std::size_t i, const SteadySolution& s, double r0, double k,
              bool own_only, int family) {
  const FluidState u = s.at(r0 + row.d[i]);
  const double w = u.v + k * std::log(u.rho);
  const double z = u.v - k * std::log(u.rho);
  if (!own_only || family == 2) row.w[i] = w;
  if (!own_only || family == 1) row.z[i] = z;
}

}  // namespace

FluidState GeneralizedFan::self_similar(double theta) const noexcept {
  const double k = params_.k;
  theta = std::clamp(theta, theta_.front(), theta_.back());
  if (family_ == 1) {
    const double v = theta + k;
    return {std::exp((invariant0_ - v) / k), v};
  }
  const double v = theta - k;
  return {std::exp((v - invariant0_) / k), v};
}

GeneralizedFan solve_fan(int family, const SteadySolution& inner, const SteadySolution& outer,
                         const BoundaryCurves& curves, double r0, double horizon,
                         const FanOptions& opt) {
  if (family != 1 && family != 2) throw DomainError("fan family must be 1 or 2");
  if (!(horizon > 0.0)) throw DomainError("fan needs a positive horizon");
  const ModelParams& p = inner.params();
  const double k = p.k;

  GeneralizedFan f;
  f.family_ = family;
  f.r0_ = r0;
  f.params_ = p;
  f.inner_ = inner;
  f.outer_ = outer;
  f.inner_edge_ = curves[family == 1 ? Boundary::LeftMinus : Boundary::RightMinus];
  f.outer_edge_ = curves[family == 1 ? Boundary::LeftPlus : Boundary::RightPlus];

  const FluidState in0 = inner.at(r0);
  const FluidState out0 = outer.at(r0);
  const double sign = family == 1 ? -1.0 : 1.0;
  const double th_lo = in0.v + sign * k;
  const double th_hi = out0.v + sign * k;
  if (!(th_hi > th_lo)) throw GrpError("rarefaction fan has non-positive width", r0);
  const double spacing = std::max(opt.min_spacing, 0.0) * k;
  std::size_t n_char = static_cast<std::size_t>(std::max(2, opt.characteristics));
  if (spacing > 0.0) {
    const double fit = std::ceil((th_hi - th_lo) / spacing) + 1.0;
    n_char = std::min(n_char, static_cast<std::size_t>(std::max(2.0, fit)));
  }
  const std::size_t last = n_char - 1;
  f.invariant0_ = family == 1 ? in0.v + k * std::log(in0.rho) : out0.v - k * std::log(out0.rho);
  f.theta_.resize(n_char);
  for (std::size_t i = 0; i < n_char; ++i) {
    f.theta_[i] = th_lo + (th_hi - th_lo) * static_cast<double>(i) / static_cast<double>(last);
  }

  // Lattice times: geometric from t_start, capped at horizon/max_steps.
  const double t_start = std::max(opt.start_fraction, 1e-14) * horizon;
  const double dt_cap = horizon / std::max(1, opt.max_steps);
  f.times_.push_back(std::min(t_start, horizon));
  while (f.times_.back() < horizon) {
    const double t = f.times_.back();
    const double dt = std::min((opt.growth - 1.0) * t, dt_cap);
    f.times_.push_back(horizon - t <= dt * (1.0 + 1e-9) ? horizon : t + dt);
  }

  // Edge characteristics are advanced like interior ones so the lattice
  // cannot cross itself numerically; only their states come from the
  // adjacent steady solutions. The transported invariant is imposed on the
  // inflow edge alone; on the outflow edge it comes out of the sweep.
  auto apply_edges = [&](Row& row) {
    set_edge(row, 0, inner, r0, k, family == 2, family);
    set_edge(row, last, outer, r0, k, family == 1, family);
  };

  Row cur{std::vector<double>(n_char), std::vector<double>(n_char), std::vector<double>(n_char)};
  {
    const double t = f.times_.front();
    for (std::size_t i = 0; i < n_char; ++i) {
      const FluidState u = f.self_similar(f.theta_[i]);
      cur.d[i] = f.theta_[i] * t;
      cur.w[i] = u.v + k * std::log(u.rho);
      cur.z[i] = u.v - k * std::log(u.rho);
    }
    apply_edges(cur);
  }
  auto store = [&](const Row& row) {
    f.d_.insert(f.d_.end(), row.d.begin(), row.d.end());
    f.w_.insert(f.w_.end(), row.w.begin(), row.w.end());
    f.z_.insert(f.z_.end(), row.z.begin(), row.z.end());
  };
  store(cur);

  // Own invariant (z for family 1, w for family 2) rides the characteristic;
  // the other one crosses the fan at relative speed ±2k and is advanced by an
  // implicit upwind sweep, which stays stable as the fan width → 0.
  std::vector<double> speed(n_char), s_own(n_char), s_tr(n_char);
  auto rates = [&](const Row& row) {
    for (std::size_t i = 0; i < n_char; ++i) {
      const double v = 0.5 * (row.w[i] + row.z[i]);
      const InvariantSource src = invariant_source(r0 + row.d[i], v, p);
      speed[i] = v + sign * k;
      s_own[i] = family == 1 ? src.z : src.w;
      s_tr[i] = family == 1 ? src.w : src.z;
    }
  };
  auto own = [&](Row& row) -> std::vector<double>& { return family == 1 ? row.z : row.w; };
  auto tr = [&](Row& row) -> std::vector<double>& { return family == 1 ? row.w : row.z; };

  auto sweep = [&](Row& to, const std::vector<double>& src_dt, double dt,
                   const std::vector<double>& tr_from) {
    std::vector<double>& out = tr(to);
    if (family == 1) {
      for (std::size_t i = 1; i <= last; ++i) {
        const double a = 2.0 * k * dt / (to.d[i] - to.d[i - 1]);
        out[i] = (tr_from[i] + src_dt[i] + a * out[i - 1]) / (1.0 + a);
      }
    } else {
      for (std::size_t i = last; i-- > 0;) {
        const double a = 2.0 * k * dt / (to.d[i + 1] - to.d[i]);
        out[i] = (tr_from[i] + src_dt[i] + a * out[i + 1]) / (1.0 + a);
      }
    }
  };

  auto check_order = [&](const Row& row, double t) {
    for (std::size_t i = 0; i + 1 < n_char; ++i) {
      if (!(row.d[i + 1] > row.d[i])) {
        throw GrpError("characteristics cross in rarefaction fan at t = " + std::to_string(t),
                       r0 + row.d[i]);
      }
    }
  };

  std::vector<double> src_dt(n_char);
  for (std::size_t n = 0; n + 1 < f.times_.size(); ++n) {
    const double t1 = f.times_[n + 1];
    const double dt = t1 - f.times_[n];
    rates(cur);
    const std::vector<double> speed0 = speed, own0 = s_own, tr0 = s_tr;

    Row pred = cur;
    for (std::size_t i = 0; i < n_char; ++i) pred.d[i] = cur.d[i] + dt * speed0[i];
    for (std::size_t i = 1; i < last; ++i) {
      own(pred)[i] = own(cur)[i] + dt * own0[i];
    }
    apply_edges(pred);
    check_order(pred, t1);
    for (std::size_t i = 0; i < n_char; ++i) src_dt[i] = dt * tr0[i];
    sweep(pred, src_dt, dt, tr(cur));

    rates(pred);
    Row next = cur;
    for (std::size_t i = 0; i < n_char; ++i) {
      next.d[i] = cur.d[i] + 0.5 * dt * (speed0[i] + speed[i]);
    }
    for (std::size_t i = 1; i < last; ++i) {
      own(next)[i] = own(cur)[i] + 0.5 * dt * (own0[i] + s_own[i]);
    }
    apply_edges(next);
    check_order(next, t1);
    for (std::size_t i = 0; i < n_char; ++i) src_dt[i] = 0.5 * dt * (tr0[i] + s_tr[i]);
    sweep(next, src_dt, dt, tr(cur));

    cur = std::move(next);
    store(cur);
  }
  return f;
}

FluidState GeneralizedFan::at(double t, double r) const {
  const double k = params_.k;
  const double r_in = inner_edge_.at(t);
  const double r_out = outer_edge_.at(t);
  if (r <= r_in) return inner_.at(r_in);
  if (r >= r_out) return outer_.at(r_out);
  if (t < times_.front()) return self_similar((r - r0_) / t);

  const std::size_t n_char = theta_.size();
  const std::size_t last = n_char - 1;
  std::size_t n = static_cast<std::size_t>(
      std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
  n = n == 0 ? 0 : n - 1;
  double alpha = 0.0;
  if (n + 1 >= times_.size()) {
    n = times_.size() - 1;
  } else {
    alpha = (t - times_[n]) / (times_[n + 1] - times_[n]);
  }
  const std::size_t n1 = std::min(n + 1, times_.size() - 1);

  auto lerp = [&](const std::vector<double>& a, std::size_t i) {
    return (1.0 - alpha) * a[n * n_char + i] + alpha * a[n1 * n_char + i];
  };
  auto invariants_at = [&](const SteadySolution& s, double radius, double& w, double& z) {
    const FluidState u = s.at(radius);
    w = u.v + k * std::log(u.rho);
    z = u.v - k * std::log(u.rho);
  };

  const double x = r - r0_;
  double d_lo = r_in - r0_;
  double w_lo = 0.0, z_lo = 0.0;
  invariants_at(inner_, r_in, w_lo, z_lo);
  for (std::size_t i = 1; i <= last; ++i) {
    double d_hi, w_hi, z_hi;
    if (i == last) {
      d_hi = r_out - r0_;
      invariants_at(outer_, r_out, w_hi, z_hi);
    } else {
      d_hi = lerp(d_, i);
      w_hi = lerp(w_, i);
      z_hi = lerp(z_, i);
    }
    if (x <= d_hi || i == last) {
      const double span = d_hi - d_lo;
      const double s = span > 0.0 ? std::clamp((x - d_lo) / span, 0.0, 1.0) : 0.0;
      return from_wz(w_lo + s * (w_hi - w_lo), z_lo + s * (z_hi - z_lo), k);
    }
    d_lo = d_hi;
    w_lo = w_hi;
    z_lo = z_hi;
  }
  return outer_.at(r_out);
}

}  // namespace wbglimm
