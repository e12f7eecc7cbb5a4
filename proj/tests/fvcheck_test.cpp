#include <gtest/gtest.h>

#include <cmath>

#include "ecg/fvcheck.hpp"

namespace ecg {
namespace {

const PressureParams kDamBreak = make_ecg(0.5, 0.5, 2, 0.5);

TEST(Grid, Validation) {
  GridConfig g;
  EXPECT_NO_THROW(validate(g));
  g.cells = 1;
  EXPECT_THROW(validate(g), Error);
  g = {};
  g.cfl = 1.2;
  EXPECT_THROW(validate(g), Error);
  g = {};
  g.x_lo = 0.5;
  EXPECT_THROW(validate(g), Error);
  g = {};
  g.t_end = 0.0;
  EXPECT_THROW(validate(g), Error);
}

TEST(Grid, SchemeNames) {
  for (Scheme s : {Scheme::GodunovExact, Scheme::LaxFriedrichs, Scheme::LocalLaxFriedrichs})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_THROW(parse_scheme("upwind"), Error);
}

TEST(Evolve, ConstantDataStaysConstant) {
  GridConfig g;
  g.cells = 100;
  for (Scheme s : {Scheme::GodunovExact, Scheme::LaxFriedrichs, Scheme::LocalLaxFriedrichs}) {
    g.scheme = s;
    const auto snap = evolve(kDamBreak, {1.3, 0.2}, {1.3, 0.2}, g);
    ASSERT_EQ(snap.cells.size(), 100u);
    for (const auto& c : snap.cells) {
      EXPECT_NEAR(c.rho, 1.3, 1e-13);
      EXPECT_NEAR(c.m, 1.3 * 0.2, 1e-13);
    }
    EXPECT_NEAR(snap.time, g.t_end, 1e-15);
  }
}

TEST(Evolve, CflBoundHolds) {
  GridConfig g;
  g.cells = 200;
  const auto snap = evolve(kDamBreak, {2, 0}, {1, 0}, g);
  EXPECT_LE(snap.max_cfl, g.cfl + 1e-12);
  EXPECT_GT(snap.steps, 0);
}

TEST(Evolve, ConservesMass) {
  GridConfig g;
  for (Scheme s : {Scheme::GodunovExact, Scheme::LaxFriedrichs, Scheme::LocalLaxFriedrichs}) {
    g.scheme = s;
    const auto snap = evolve(kDamBreak, {2, 0}, {1, 0}, g);
    EXPECT_LE(mass_conservation_error(snap), 1e-12) << to_string(s);
  }
}

TEST(Evolve, DomainTooSmall) {
  GridConfig g;
  g.t_end = 2.0;
  try {
    evolve(kDamBreak, {2, 0}, {1, 0}, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainTooSmall);
  }
}

TEST(Evolve, GodunovFallsBackAtDeltaInterfaces) {
  GridConfig g;
  g.cells = 200;
  g.t_end = 0.5;
  const auto snap = evolve(make_transport(), {1, 1}, {1, -1}, g);
  EXPECT_GT(snap.fallback_interfaces, 0);
  EXPECT_FALSE(snap.notices.empty());
}

TEST(Compare, ProjectionOfExactHasNoError) {
  GridConfig g;
  g.cells = 200;
  const auto sol = solve(kDamBreak, {2, 0}, {1, 0});
  auto snap = evolve(kDamBreak, {2, 0}, {1, 0}, g);
  const auto exact = project_exact(sol, snap);
  const auto e = l1_error(exact, sol);
  EXPECT_LE(e.rho, 1e-14);
  EXPECT_LE(e.momentum, 1e-14);
}

TEST(Compare, DeltaComparisonRejected) {
  GridConfig g;
  g.cells = 100;
  const auto sol = solve(make_transport(), {1, 1}, {1, -1});
  const auto snap = evolve(make_transport(), {1, 1}, {1, -1}, g);
  EXPECT_THROW(l1_error(snap, sol), Error);
}

TEST(Compare, RefinementConverges) {
  GridConfig g;
  const auto st = refinement_study(kDamBreak, {2, 0}, {1, 0}, g, {200, 400, 800, 1600});
  ASSERT_EQ(st.rows.size(), 4u);
  EXPECT_TRUE(st.strictly_decreasing);
  EXPECT_GE(st.order, 0.7);
  for (const auto& r : st.rows) EXPECT_LE(r.mass_error, 1e-12);
}

TEST(Compare, RefinementDeterministic) {
  GridConfig g;
  const auto a = refinement_study(kDamBreak, {2, 0}, {1, 0}, g, {100, 200});
  const auto b = refinement_study(kDamBreak, {2, 0}, {1, 0}, g, {100, 200});
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].error.rho, b.rows[i].error.rho);
}

TEST(Concentration, TransportDeltaMass) {
  GridConfig g;
  g.cells = 1600;
  g.t_end = 1.0;
  g.scheme = Scheme::LaxFriedrichs;
  const auto sol = solve(make_transport(), {1, 1}, {1, -1});
  const auto snap = evolve(make_transport(), {1, 1}, {1, -1}, g);
  const auto c = measure_concentration(snap, sol, 0.1);
  EXPECT_DOUBLE_EQ(c.target_weight, 2.0);
  EXPECT_LE(c.relative_error, 0.1);
  EXPECT_NEAR(c.baseline_mass, 0.2, 1e-12);
}

TEST(Concentration, RusanovWindowHoldsUnderRefinement) {
  // The fraction of the delta weight inside a fixed number of cells does not
  // decay as the grid is refined.
  const auto sol = solve(make_transport(), {1, 1}, {1, -1});
  double prev = 0.0;
  for (int cells : {200, 400, 800, 1600}) {
    GridConfig g;
    g.cells = cells;
    g.t_end = 1.0;
    g.scheme = Scheme::LocalLaxFriedrichs;
    const auto snap = evolve(make_transport(), {1, 1}, {1, -1}, g);
    const double frac = measure_concentration(snap, sol, 5 * snap.dx).excess_mass / 2.0;
    if (prev > 0.0) {
      EXPECT_GE(frac, prev - 1e-3) << cells;
    }
    EXPECT_GT(frac, 0.99);
    prev = frac;
  }
}

TEST(Concentration, RequiresDelta) {
  GridConfig g;
  g.cells = 100;
  const auto sol = solve(kDamBreak, {2, 0}, {1, 0});
  const auto snap = evolve(kDamBreak, {2, 0}, {1, 0}, g);
  EXPECT_THROW(measure_concentration(snap, sol, 0.1), Error);
}

}  // namespace
}  // namespace ecg
