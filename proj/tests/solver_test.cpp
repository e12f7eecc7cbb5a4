#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ecg/solver.hpp"
#include "support.hpp"

namespace ecg {
namespace {

std::vector<WaveKind> kinds(const RiemannSolution& s) {
  std::vector<WaveKind> k;
  for (const auto& seg : s.segments) k.push_back(seg.kind);
  return k;
}

void expect_tiling(const RiemannSolution& s) {
  ASSERT_FALSE(s.segments.empty());
  EXPECT_EQ(s.segments.front().xi_lo, -INFINITY);
  EXPECT_EQ(s.segments.back().xi_hi, INFINITY);
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    EXPECT_LE(s.segments[i].xi_lo, s.segments[i].xi_hi);
    if (i > 0) {
      EXPECT_EQ(s.segments[i - 1].xi_hi, s.segments[i].xi_lo);
    }
  }
  EXPECT_EQ(std::get<State>(s.segments.front().payload), s.left);
  EXPECT_EQ(std::get<State>(s.segments.back().payload), s.right);
}

TEST(SolveEcg, ConstantData) {
  const auto s = solve_ecg(make_ecg(1, 1, 2, 0.5), {1, 0}, {1, 0});
  ASSERT_EQ(s.segments.size(), 1u);
  EXPECT_EQ(s.segments[0].kind, WaveKind::Constant);
}

TEST(SolveEcg, SymmetricCompression) {
  const auto p = make_ecg(0.1, 0.1, 2, 0.5);
  const auto s = solve_ecg(p, {1, 1}, {1, -1});
  expect_tiling(s);
  EXPECT_EQ(s.region, "S1S2");
  ASSERT_TRUE(s.intermediate);
  EXPECT_EQ(s.intermediate->u, 0.0);
  EXPECT_NEAR(s.intermediate->rho, 3.7601459353093424597, 1e-10);
  EXPECT_NEAR(s.segments[1].xi_lo, -0.36229968394331487572, 1e-10);
  EXPECT_DOUBLE_EQ(s.segments[3].xi_lo, -s.segments[1].xi_lo);
}

TEST(SolveEcg, SymmetricExpansion) {
  const auto p = make_ecg(0.1, 0.1, 2, 0.5);
  const auto s = solve_ecg(p, {1, 0}, {1, 5});
  expect_tiling(s);
  EXPECT_EQ(s.region, "R1R2");
  EXPECT_NEAR(s.intermediate->rho, 0.055776209322076621204, 1e-10);
  EXPECT_NEAR(s.intermediate->u, 2.5, 1e-12);
  // Sampling exactly at the fan's trailing edge reproduces the intermediate state.
  const double xi = eigenvalues(p, *s.intermediate).lambda1;
  const auto m = sample(s, xi);
  EXPECT_NEAR(m.state.rho, s.intermediate->rho, 1e-8);
  EXPECT_NEAR(m.state.u, s.intermediate->u, 1e-8);
}

TEST(SolveEcg, RarefactionShockOracle) {
  const auto s = solve_ecg(make_ecg(0.5, 0.5, 2, 0.5), {2, 0}, {1, 0});
  EXPECT_EQ(s.region, "R1S2");
  EXPECT_NEAR(s.intermediate->rho, 1.4441712160237873762, 1e-10);
  EXPECT_NEAR(s.intermediate->u, 0.43904930557016761237, 1e-10);
  EXPECT_EQ(kinds(s), (std::vector{WaveKind::Constant, WaveKind::RarefactionFan, WaveKind::Constant,
                                   WaveKind::Shock, WaveKind::Constant}));
}

TEST(SolveEcg, SingleWaveOnCurve) {
  const auto p = make_ecg(0.4, 0.3, 2, 0.5);
  const State l{2, 0.3};
  const State r{0.8, rarefaction_u(p, WaveFamily::One, l, 0.8)};
  const auto s = solve_ecg(p, l, r);
  EXPECT_EQ(s.region, "boundary:R1");
  EXPECT_EQ(kinds(s), (std::vector{WaveKind::Constant, WaveKind::RarefactionFan, WaveKind::Constant}));
}

TEST(SolveGcg, SymmetricDelta) {
  const auto s = solve_gcg(make_gcg(0.01, 1), {1, 1}, {1, -1});
  const auto* d = s.delta();
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->sigma, 0.0);
  EXPECT_EQ(d->weight_rate, 2.0);
  EXPECT_TRUE(d->entropy_ok);
  EXPECT_DOUBLE_EQ(delta_weight_at(s, 2.0), 4.0);
  EXPECT_EQ(delta_weight_at(s, 0.0), 0.0);
  EXPECT_EQ(s.region, "V");
}

TEST(SolveGcg, AsymmetricDelta) {
  const auto p = make_gcg(0.001, 1);
  const State l{2, 1}, r{1, -1};
  const auto s = solve_gcg(p, l, r);
  const auto* d = s.delta();
  ASSERT_NE(d, nullptr);
  EXPECT_NEAR(d->sigma, 0.1716612649825693129, 1e-14);
  EXPECT_NEAR(d->weight_rate, 2.8283387350174306871, 1e-14);
  EXPECT_LE(std::abs(gcg_delta_quadratic(p, l, r, d->sigma)), 1e-12);
  // Generalized jump conditions: w' = sigma [rho] - [rho u] and
  // (w u_delta)' = sigma [rho u] - [rho u^2 - B / rho^alpha].
  const double jr = r.rho - l.rho, jm = r.rho * r.u - l.rho * l.u;
  const double jf = r.rho * r.u * r.u - p.B / r.rho - (l.rho * l.u * l.u - p.B / l.rho);
  EXPECT_NEAR(d->weight_rate, d->sigma * jr - jm, 1e-10);
  EXPECT_NEAR(d->weight_rate * d->sigma, d->sigma * jm - jf, 1e-10);
}

TEST(SolveGcg, RegionOneContacts) {
  const auto s = solve_gcg(make_gcg(1, 1), {1, 0}, {1, 3});
  EXPECT_EQ(s.region, "I");
  EXPECT_NEAR(s.intermediate->rho, 0.4, 1e-12);
  EXPECT_NEAR(s.intermediate->u, 1.5, 1e-12);
  EXPECT_EQ(kinds(s), (std::vector{WaveKind::Constant, WaveKind::Contact, WaveKind::Constant, WaveKind::Contact,
                                   WaveKind::Constant}));
}

TEST(SolveGcg, GenuinelyNonlinearWaves) {
  const auto s = solve_gcg(make_gcg(1, 0.5), {1, 0}, {1, 3});
  EXPECT_EQ(s.region, "I");
  EXPECT_EQ(s.segments[1].kind, WaveKind::RarefactionFan);
  expect_tiling(s);
}

TEST(SolveTransport, Cases) {
  const auto d1 = solve_transport({1, 1}, {1, -1});
  EXPECT_EQ(d1.delta()->sigma, 0.0);
  EXPECT_EQ(d1.delta()->weight_rate, 2.0);
  EXPECT_DOUBLE_EQ(delta_weight_at(d1, 1.0), 2.0);

  const auto d2 = solve_transport({4, 2}, {1, -1});
  EXPECT_EQ(d2.delta()->sigma, 1.0);
  EXPECT_EQ(d2.delta()->weight_rate, 6.0);
  EXPECT_TRUE(d2.delta()->entropy_ok);

  const auto v = solve_transport({1, -1}, {1, 1});
  EXPECT_EQ(v.region, "vacuum");
  const auto in = sample(v, 0.3);
  EXPECT_TRUE(in.in_vacuum);
  EXPECT_EQ(in.state, (State{0.0, 0.3}));
  EXPECT_THROW(delta_weight_at(v, 1.0), Error);

  const auto c = solve_transport({1, 2}, {3, 2});
  EXPECT_EQ(c.region, "contact");
  EXPECT_EQ(c.segments[1].kind, WaveKind::Contact);
}

TEST(Sample, FarFieldAndFlags) {
  const auto s = solve_ecg(make_ecg(0.1, 0.1, 2, 0.5), {1, 1}, {1, -1});
  EXPECT_EQ(sample(s, -1e10).state, s.left);
  EXPECT_EQ(sample(s, 1e10).state, s.right);
  const auto on = sample(s, s.segments[1].xi_lo);
  EXPECT_TRUE(on.on_shock);
  EXPECT_EQ(on.state, s.left);
  const auto d = sample(solve_transport({1, 1}, {1, -1}), 0.0);
  EXPECT_TRUE(d.on_delta);
}

class RandomProblems : public ::testing::Test {
 protected:
  testing::Draws draws{99};
};

TEST_F(RandomProblems, SolutionsAreWellFormed) {
  for (int i = 0; i < 300; ++i) {
    const auto p = draws.ecg_params();
    const State l = draws.state(), r = draws.state();
    const auto s = solve_ecg(p, l, r);
    expect_tiling(s);
    double last = -INFINITY;
    for (const auto& seg : s.segments) {
      if (seg.kind == WaveKind::Constant) continue;
      EXPECT_GT(seg.xi_lo, last);
      last = seg.xi_hi;
      if (const auto* f = std::get_if<Fan>(&seg.payload)) {
        const auto head = sample(s, seg.xi_lo + 1e-14 * (1 + std::abs(seg.xi_lo)));
        EXPECT_NEAR(head.state.rho, f->head.rho, 1e-8);
        const auto mid = sample(s, 0.5 * (seg.xi_lo + seg.xi_hi));
        const auto e = eigenvalues(p, mid.state);
        EXPECT_NEAR(f->family == WaveFamily::One ? e.lambda1 : e.lambda2, 0.5 * (seg.xi_lo + seg.xi_hi), 1e-9);
        EXPECT_NEAR(rarefaction_u(p, f->family, f->head, f->tail.rho), f->tail.u, 1e-8);
      }
      if (const auto* j = std::get_if<Jump>(&seg.payload)) {
        const auto fam = j == nullptr ? WaveFamily::One : (seg.xi_lo < s.intermediate->u ? WaveFamily::One : WaveFamily::Two);
        EXPECT_TRUE(lax_check(p, fam, j->left, j->right, j->speed));
      }
    }
  }
}

TEST_F(RandomProblems, CompressionIntermediateOnBothShockCurves) {
  for (int i = 0; i < 100; ++i) {
    const auto p = draws.ecg_params();
    const State l = draws.state();
    const State r{draws.log_uniform(0.2, 5), l.u - draws.uniform(3.0, 6.0)};
    const auto s = solve_ecg(p, l, r);
    if (s.region != "S1S2") continue;
    const auto m = *s.intermediate;
    EXPECT_NEAR(m.u, shock_u(p, WaveFamily::One, l, m.rho), 1e-9);
    EXPECT_NEAR(m.u, backward_two_curve_u(p, r, m.rho), 1e-9);
  }
}

TEST_F(RandomProblems, SampleJumpsOnlyAtDeclaredSpeeds) {
  for (int i = 0; i < 30; ++i) {
    const auto p = draws.ecg_params();
    const auto s = solve_ecg(p, draws.state(), draws.state());
    std::vector<double> jumps;
    for (const auto& seg : s.segments)
      if (seg.is_point()) jumps.push_back(seg.xi_lo);
    const double lo = s.segments.size() > 1 ? s.segments[1].xi_lo - 1 : -1;
    const double hi = s.segments.size() > 1 ? s.segments[s.segments.size() - 2].xi_hi + 1 : 1;
    const int N = 400;
    State prev = sample(s, lo).state;
    for (int k = 1; k <= N; ++k) {
      const double a = lo + (hi - lo) * (k - 1) / N, b = lo + (hi - lo) * k / N;
      const State cur = sample(s, b).state;
      const double gap = std::abs(cur.rho - prev.rho) + std::abs(cur.u - prev.u);
      if (gap > 0.2) {
        bool declared = false;
        for (double j : jumps) declared |= (a < j && j <= b);
        EXPECT_TRUE(declared) << "unexpected jump on (" << a << ", " << b << "]";
      }
      prev = cur;
    }
  }
}

}  // namespace
}  // namespace ecg
