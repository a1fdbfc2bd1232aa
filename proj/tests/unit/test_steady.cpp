#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wbglimm/errors.hpp"
#include "wbglimm/steady.hpp"

using namespace wbglimm;

namespace {

const ModelParams kUnit{1.0, 1.0};

void expect_conserved(const SteadySolution& s, double r) {
  const FluidState u = s.at(r);
  const oracle::SteadyResidual res =
      oracle::steady_residual(r, u, s.anchor_r(), s.anchor_state(), s.params());
  EXPECT_LT(res.mass, 1e-10) << "r=" << r;
  EXPECT_LT(res.energy, 1e-10) << "r=" << r;
}

// Bisection root of S(r, ·) = 0 on the given velocity bracket.
double critical_velocity_oracle(double r, double lo, double hi, const ModelParams& p) {
  const double gc = oracle::bernoulli_G(p.m / (2.0 * p.k * p.k), p.k, p);
  auto f = [&](double v) { return oracle::bernoulli_G(r, v, p) - gc; };
  const bool rising = f(hi) > f(lo);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0.0) == rising ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Steady, GValue) {
  EXPECT_NEAR(G_value(0.5, 1.0, 1, kUnit), -1.5 + std::log(4.0), 1e-14);
  EXPECT_NEAR(critical_G(kUnit), -1.5 + std::log(4.0), 1e-14);
  EXPECT_NEAR(critical_S(0.5, 1.0, kUnit), 0.0, 1e-15);
  EXPECT_THROW(G_value(1.0, -1.0, 1, kUnit), DomainError);

  // Stationary in v at ±k and in r at m/2k².
  const ModelParams p{1.3, 0.7};
  const double h = 1e-5;
  const double dv = (G_value(2.0, p.k + h, 1, p) - G_value(2.0, p.k - h, 1, p)) / (2 * h);
  EXPECT_NEAR(dv, 0.0, 1e-9);
  const double rc = p.critical_radius();
  const double dr = (G_value(rc + h, 0.4, 1, p) - G_value(rc - h, 0.4, 1, p)) / (2 * h);
  EXPECT_NEAR(dr, 0.0, 1e-9);
}

TEST(Steady, Classification) {
  EXPECT_EQ(solve_steady(0.5, {3.0, 1.0}, kUnit).tag(), SteadyTag::Critical);
  EXPECT_EQ(solve_steady(0.5, {3.0, -1.0}, kUnit).tag(), SteadyTag::Critical);
  EXPECT_EQ(solve_steady(2.0, {1.0, 3.0}, kUnit).tag(), SteadyTag::GlobalSmooth);

  const SteadySolution s = solve_steady(2.0, {1.0, 1.05}, kUnit);
  ASSERT_EQ(s.tag(), SteadyTag::SonicLimited);
  ASSERT_TRUE(s.sonic_radius().has_value());
  const double rs = *s.sonic_radius();
  EXPECT_GT(rs, 0.5);
  EXPECT_LT(rs, 2.0);
  EXPECT_NEAR(rs, oracle::sonic_radius(2.0, {1.0, 1.05}, kUnit, false), 1e-10);
  EXPECT_EQ(s.domain().lo, rs);
  EXPECT_TRUE(std::isinf(s.domain().hi));
  EXPECT_NEAR(std::abs(s.at(rs).v), 1.0, 1e-8);
  EXPECT_NEAR(G_value(rs, 1.0, 1, kUnit) - s.G0(), 0.0, 1e-10);
  EXPECT_THROW(s.at(0.5 * (0.5 + rs)), SonicError);

  ModelParams flat = kUnit;
  flat.with_source = false;
  const SteadySolution c = solve_steady(2.0, {1.0, 0.3}, flat);
  EXPECT_EQ(c.tag(), SteadyTag::Constant);
  EXPECT_EQ(c.at(4.0), (FluidState{1.0, 0.3}));

  EXPECT_THROW(solve_steady(2.0, {1.0, 0.0}, kUnit), DomainError);
  EXPECT_EQ(solve_steady_any(2.0, {1.0, 0.0}, kUnit).tag(), SteadyTag::Static);
}

TEST(Steady, SonicErrorCarriesRadius) {
  const SteadySolution s = solve_steady(2.0, {1.0, 1.05}, kUnit);
  try {
    s.at(0.6);
    FAIL() << "expected SonicError";
  } catch (const SonicError& e) {
    EXPECT_EQ(e.radius(), 0.6);
    EXPECT_EQ(e.sonic_radius(), *s.sonic_radius());
  }
}

TEST(Steady, AnchorIsReproduced) {
  const FluidState u{1.7, -0.3};
  const SteadySolution s = solve_steady(2.5, u, kUnit);
  EXPECT_EQ(s.at(2.5), u);
}

TEST(Steady, ConservationAndSignsOverRandomAnchors) {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> lr(std::log(0.2), std::log(8.0)), unit(0.0, 1.0);
  for (const ModelParams& p : {kUnit, ModelParams{2.0, 0.5}, ModelParams{0.3, 1.7}}) {
    for (int a = 0; a < 60; ++a) {
      const double r0 = std::exp(lr(g));
      const FluidState u0 = oracle::random_state(g, 2.0, 3.0 * p.k);
      if (std::abs(u0.v) < 1e-3) continue;
      const SteadySolution s = solve_steady(r0, u0, p);
      const double lo = std::max(s.domain().lo, 0.05);
      const double hi = std::min(s.domain().hi, 20.0);
      for (int i = 0; i < 50; ++i) {
        const double r = lo * std::pow(hi / lo, unit(g));
        expect_conserved(s, r);
        const FluidState u = s.at(r);
        EXPECT_EQ(u.v > 0, u0.v > 0);
        if (s.tag() != SteadyTag::Critical && std::abs(std::abs(u.v) - p.k) > 1e-6 * p.k) {
          EXPECT_EQ(std::abs(u.v) > p.k, std::abs(u0.v) > p.k);
        }
      }
    }
  }
}

TEST(Steady, VelocitySatisfiesTheOde) {
  const ModelParams p{1.0, 1.0};
  const SteadySolution s = solve_steady(3.0, {1.0, 0.05}, p);
  const SteadySolution t = solve_steady(2.0, {1.0, 3.0}, p);
  for (const SteadySolution* sol : {&s, &t}) {
    for (double r : {0.3, 0.8, 1.5, 2.7, 4.0, 9.0}) {
      const double v = sol->velocity(r);
      if (std::abs(v * v - p.k * p.k) < 0.01 * p.k * p.k) continue;
      const double h = 1e-5 * r;
      const double fd = (sol->velocity(r + h) - sol->velocity(r - h)) / (2 * h);
      const double exact = v / (r * r) * (2 * p.k * p.k * r - p.m) / (v * v - p.k * p.k);
      EXPECT_NEAR(fd, exact, 1e-5 * std::abs(exact) + 1e-12);
    }
  }
}

TEST(Steady, CriticalBranches) {
  const ModelParams p{2.0, 0.5};
  const double rc = p.critical_radius();
  EXPECT_NEAR(eval_critical(CriticalBranch::PFlat, rc, p), p.k, 1e-12);
  EXPECT_NEAR(eval_critical(CriticalBranch::PSharp, rc, p), p.k, 1e-12);
  EXPECT_NEAR(eval_critical(CriticalBranch::NFlat, rc, p), -p.k, 1e-12);
  EXPECT_NEAR(eval_critical(CriticalBranch::NSharp, rc, p), -p.k, 1e-12);

  // Inside: N♯ < −k < N♭ < 0 < P♭ < k < P♯; the flat and sharp labels swap outside.
  const double r_in = p.m / (4 * p.k * p.k);
  const double pf = eval_critical(CriticalBranch::PFlat, r_in, p);
  const double ps = eval_critical(CriticalBranch::PSharp, r_in, p);
  const double nf = eval_critical(CriticalBranch::NFlat, r_in, p);
  const double ns = eval_critical(CriticalBranch::NSharp, r_in, p);
  EXPECT_LT(ns, -p.k);
  EXPECT_GT(nf, -p.k);
  EXPECT_LT(nf, 0.0);
  EXPECT_GT(pf, 0.0);
  EXPECT_LT(pf, p.k);
  EXPECT_GT(ps, p.k);
  EXPECT_NEAR(pf, critical_velocity_oracle(r_in, 1e-12, p.k, p), 1e-10);
  EXPECT_NEAR(ps, critical_velocity_oracle(r_in, p.k, 50.0, p), 1e-10);

  const double r_out = p.m / (p.k * p.k);
  EXPECT_GT(eval_critical(CriticalBranch::PFlat, r_out, p), p.k);
  EXPECT_LT(eval_critical(CriticalBranch::PSharp, r_out, p), p.k);
  EXPECT_NEAR(eval_critical(CriticalBranch::PFlat, r_out, p),
              critical_velocity_oracle(r_out, p.k, 50.0, p), 1e-10);
}

TEST(Steady, CriticalSlopeAtSonicPoint) {
  const ModelParams p{1.0, 1.0};
  const double rc = p.critical_radius();
  auto d = [&](double h) { return (eval_critical(CriticalBranch::PFlat, rc + h, p) - p.k) / h; };
  const double h = 1e-4;
  EXPECT_NEAR(2 * d(h / 2) - d(h), 2.0, 1e-6);
  EXPECT_NEAR(2 * d(-h / 2) - d(-h), 2.0, 1e-6);
}

TEST(Steady, ShockConjugate) {
  const FluidState r = steady_shock_conjugate({1.0, 2.0}, kUnit);
  EXPECT_NEAR(r.rho, 4.0, 1e-15);
  EXPECT_NEAR(r.v, 0.5, 1e-15);
  EXPECT_THROW(steady_shock_conjugate({1.0, 1.0}, kUnit), DomainError);
  EXPECT_THROW(steady_shock_conjugate({1.0, 0.5}, kUnit), DomainError);

  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> vl(1.0001, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const FluidState l{1.3, vl(g)};
    const FluidState c = steady_shock_conjugate(l, kUnit);
    EXPECT_NEAR(l.rho * l.v, c.rho * c.v, 1e-14 * l.rho * l.v);
    EXPECT_NEAR(l.rho * (1 + l.v * l.v), c.rho * (1 + c.v * c.v),
                1e-13 * l.rho * (1 + l.v * l.v));
  }
}

TEST(Steady, Equivalence) {
  const SteadySolution a = solve_steady(3.0, {1.0, 0.05}, kUnit);
  const SteadySolution b = solve_steady(2.0, a.at(2.0), kUnit);
  EXPECT_TRUE(equivalent(a, b));
  const SteadySolution c = solve_steady(3.0, {1.1, 0.05}, kUnit);
  EXPECT_FALSE(equivalent(a, c));
}

TEST(Steady, CriticalCompanion) {
  const SteadySolution s = solve_steady(2.0, {1.0, 1.05}, kUnit);
  const CriticalBranch b = matching_critical_branch(s);
  const SteadySolution c = make_critical(b, s.Q0(), kUnit);
  EXPECT_EQ(c.tag(), SteadyTag::Critical);
  EXPECT_NEAR(c.Q0(), s.Q0(), 1e-14);
  // Outside rc the companion is supersonic with v > 0, like s.
  EXPECT_GT(c.velocity(3.0), 1.0);
  expect_conserved(c, 0.2);
  expect_conserved(c, 7.0);
}
