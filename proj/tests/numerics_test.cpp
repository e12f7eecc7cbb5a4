#include <gtest/gtest.h>

#include <cmath>

#include "ecg/numerics.hpp"
#include "ecg/waves.hpp"
#include "support.hpp"

namespace ecg {
namespace {

TEST(Integrate, PolynomialsAreExact) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-12);
  // K15 integrates degree 22 exactly on a single panel.
  EXPECT_NEAR(integrate([](double x) { return std::pow(x, 21); }, 0.0, 1.0), 1.0 / 22.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0), 9.0 - 3.0 + 3.0, 1e-12);
}

TEST(Integrate, ChaplyginIntegrand) {
  auto f = [](double r) { return std::pow(r, -2.0); };
  EXPECT_NEAR(integrate(f, 0.5, 1.0), 1.0, 1e-10);
  EXPECT_NEAR(integrate([](double) { return std::sqrt(3.0); }, 1.0, 2.0), std::sqrt(3.0), 1e-10);
}

TEST(Integrate, EmptyAndReversedIntervals) {
  EXPECT_EQ(integrate([](double x) { return x; }, 2.0, 2.0), 0.0);
  EXPECT_THROW(integrate([](double x) { return x; }, 2.0, 1.0), Error);
}

TEST(Integrate, BudgetExhaustionCarriesEstimate) {
  ToleranceConfig tol{1e-14, 1e-14, 3};
  try {
    integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, tol);
    FAIL() << "expected accuracy error";
  } catch (const AccuracyError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Accuracy);
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
  }
}

TEST(ToleranceConfig, RejectsSubEpsilon) {
  EXPECT_THROW(validate(ToleranceConfig{1e-17, 1e-10, 10}), Error);
  EXPECT_THROW(validate(ToleranceConfig{1e-12, 1e-10, 0}), Error);
}

TEST(FindRoot, Basic) {
  EXPECT_NEAR(find_root([](double x) { return x - 2.0; }, 0.0, 5.0), 2.0, 1e-12);
  EXPECT_NEAR(find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(find_root([](double x) { return x; }, -1.0, 1.0), 0.0, 1e-12);
}

TEST(FindRoot, EndpointTieReturnsEndpoint) {
  EXPECT_EQ(find_root([](double x) { return x - 1.0; }, 1.0, 3.0), 1.0);
  EXPECT_EQ(find_root([](double x) { return x - 3.0; }, 1.0, 3.0), 3.0);
}

TEST(FindRoot, NoSignChange) {
  try {
    find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Bracket);
  }
}

TEST(FindRoot, StaysInsideBracket) {
  testing::Draws d;
  for (int i = 0; i < 200; ++i) {
    const double lo = d.uniform(-5, 0), hi = d.uniform(0.1, 5);
    const double c = d.uniform(lo, hi);
    const double k = d.uniform(0.5, 8);
    auto f = [&](double x) { return std::tanh(k * (x - c)) + 0.1 * (x - c) * (x - c) * (x - c); };
    const double x = find_root(f, lo, hi);
    EXPECT_GE(x, lo);
    EXPECT_LE(x, hi);
    EXPECT_NEAR(x, c, 1e-9);
  }
}

TEST(ExpandBracket, UpAndDown) {
  auto [lo, hi] = expand_bracket([](double x) { return x - 100.0; }, 1.0, Direction::Up);
  EXPECT_LE(lo, 100.0);
  EXPECT_GE(hi, 100.0);
  auto [lo2, hi2] = expand_bracket([](double x) { return x - 1e-9; }, 1.0, Direction::Down);
  EXPECT_LE(lo2, 1e-9);
  EXPECT_GE(hi2, 1e-9);
}

TEST(ExpandBracket, DoublingCount) {
  int calls = 0;
  auto f = [&](double x) {
    ++calls;
    return 1e6 - x;
  };
  auto [lo, hi] = expand_bracket(f, 1.0, Direction::Up);
  EXPECT_LE(lo, 1e6);
  EXPECT_GE(hi, 1e6);
  EXPECT_LE(calls - 1, 21);
}

TEST(ExpandBracket, RunsOutOfRange) {
  try {
    expand_bracket([](double) { return 1.0; }, 1.0, Direction::Up);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoRootInRange);
  }
  EXPECT_THROW(expand_bracket([](double) { return 1.0; }, 1.0, Direction::Down), Error);
}

// Closed-form rarefaction integrals against the log-space quadrature.
TEST(RarefactionOracles, ChaplyginClosedForm) {
  testing::Draws d(11);
  for (int i = 0; i < 50; ++i) {
    const double B = d.uniform(0.01, 1.0), alpha = 1.0 - d.uniform(0.0, 0.99);
    const PressureParams p{Model::GCG, 0.0, B, 1.0, alpha};
    const double a = d.log_uniform(0.05, 10), b = d.log_uniform(0.05, 10);
    const double k = 0.5 * (alpha + 1.0);
    const double exact = 2.0 * std::sqrt(alpha * B) / (alpha + 1.0) * (std::pow(a, -k) - std::pow(b, -k));
    EXPECT_NEAR(rarefaction_integral_quadrature(p, a, b), exact, 1e-8);
  }
}

TEST(RarefactionOracles, PolytropicClosedForms) {
  testing::Draws d(12);
  for (int i = 0; i < 50; ++i) {
    const double A = d.uniform(0.01, 1.0), n = d.uniform(1.0, 3.0);
    const PressureParams p{Model::ECG, A, 0.0, n, 0.5};
    const double a = d.log_uniform(0.05, 10), b = d.log_uniform(0.05, 10);
    const double exact = 2.0 * std::sqrt(A * n) / (n - 1.0) * (std::pow(b, 0.5 * (n - 1)) - std::pow(a, 0.5 * (n - 1)));
    EXPECT_NEAR(rarefaction_integral_quadrature(p, a, b), exact, 1e-8);

    const PressureParams iso{Model::ECG, A, 0.0, 1.0, 0.5};
    EXPECT_NEAR(rarefaction_integral_quadrature(iso, a, b), std::sqrt(A) * std::log(b / a), 1e-8);
  }
}

}  // namespace
}  // namespace ecg
