#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "freshcov/errors.hpp"
#include "freshcov/policies.hpp"
#include "freshcov/scenario.hpp"
#include "freshcov/rng.hpp"

using namespace freshcov;

namespace {

std::vector<SensorView> views(std::size_t n, bool can_act = true) {
  std::vector<SensorView> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i].id = i;
    v[i].battery = 50.0;
    v[i].can_act = can_act;
  }
  return v;
}

}  // namespace

TEST(Policy, FullProbabilityIsAllEdge) {
  auto p = make_policy(PolicySpec::probability(1.0, 1.0));
  std::mt19937_64 rng(1);
  const auto v = views(10);
  const auto d = decide(*p, {0, v}, rng);
  for (auto a : d.applied) EXPECT_EQ(a, Action::Edge);
}

TEST(Policy, ZeroSensingIsAlwaysIdle) {
  auto p = make_policy(PolicySpec::probability(0.0, 0.7));
  std::mt19937_64 rng(1);
  const auto v = views(10);
  for (int r = 0; r < 100; ++r) {
    for (auto a : decide(*p, {r, v}, rng).applied) EXPECT_EQ(a, Action::Idle);
  }
}

TEST(Policy, AlwaysModeFixesComputeMode) {
  auto p = make_policy(PolicySpec::always(ComputeMode::Local, 0.5));
  std::mt19937_64 rng(2);
  const auto v = views(10);
  int sensed = 0;
  for (int r = 0; r < 1000; ++r) {
    for (auto a : decide(*p, {r, v}, rng).applied) {
      EXPECT_NE(a, Action::Edge);
      sensed += a == Action::Local;
    }
  }
  EXPECT_NEAR(sensed / 10000.0, 0.5, 0.03);
}

TEST(Policy, DecisionFrequencies) {
  auto p = make_policy(PolicySpec::probability(0.5, 0.5));
  std::mt19937_64 rng(3);
  const auto v = views(1);
  std::array<int, 3> count{};
  const int n = 100000;
  for (int r = 0; r < n; ++r) ++count[static_cast<int>(decide(*p, {r, v}, rng).applied[0])];
  const std::array<double, 3> expect{0.25, 0.25, 0.5};
  for (int k = 0; k < 3; ++k) {
    const double sd = std::sqrt(expect[k] * (1 - expect[k]) / n);
    EXPECT_NEAR(count[k] / static_cast<double>(n), expect[k], 4 * sd) << k;
  }
}

TEST(Policy, DecisionsIndependentAcrossRoundsAndSensors) {
  // Chi-square test of independence on consecutive decisions, 4 degrees of freedom.
  auto p = make_policy(PolicySpec::probability(0.6, 0.4));
  std::mt19937_64 rng(4);
  const auto v = views(2);
  std::array<std::array<double, 3>, 3> rounds{}, sensors{};
  int prev = -1;
  for (int r = 0; r < 50000; ++r) {
    const auto a = decide(*p, {r, v}, rng).applied;
    const int a0 = static_cast<int>(a[0]), a1 = static_cast<int>(a[1]);
    if (prev >= 0) rounds[prev][a0] += 1;
    sensors[a0][a1] += 1;
    prev = a0;
  }
  auto chi2 = [](const std::array<std::array<double, 3>, 3>& t) {
    std::array<double, 3> row{}, col{};
    double total = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        row[i] += t[i][j];
        col[j] += t[i][j];
        total += t[i][j];
      }
    }
    double x = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double e = row[i] * col[j] / total;
        x += (t[i][j] - e) * (t[i][j] - e) / e;
      }
    }
    return x;
  };
  EXPECT_LT(chi2(rounds), 18.47);  // p = 0.001
  EXPECT_LT(chi2(sensors), 18.47);
}

TEST(Policy, NeverActsWithoutEnergy) {
  auto p = make_policy(PolicySpec::probability(1.0, 0.5));
  std::mt19937_64 rng(5);
  const auto v = views(4, false);
  const auto d = decide(*p, {0, v}, rng);
  for (auto a : d.applied) EXPECT_EQ(a, Action::Idle);
  EXPECT_EQ(d.illegal, 4);
}

TEST(Policy, ExternalPassThroughWithCoercion) {
  auto p = make_policy(PolicySpec::external(), [](const RoundContext&) {
    return std::vector<Action>{Action::Edge, Action::Local, Action::Idle};
  });
  std::mt19937_64 rng(6);
  auto v = views(3);
  v[1].can_act = false;
  const auto d = decide(*p, {0, v}, rng);
  EXPECT_EQ(d.applied, (std::vector<Action>{Action::Edge, Action::Idle, Action::Idle}));
  EXPECT_EQ(d.requested[1], Action::Local);
  EXPECT_EQ(d.illegal, 1);
  EXPECT_THROW(make_policy(PolicySpec::external()), ContractViolation);
}

TEST(Policy, SpecValidation) {
  EXPECT_THROW(PolicySpec::probability(1.2, 0.5).validate(), ParameterError);
  EXPECT_THROW(PolicySpec::probability(0.5, -0.1).validate(), ParameterError);
  EXPECT_EQ(PolicySpec::always(ComputeMode::Edge).describe(), "always-EC(p_s=1)");
  EXPECT_EQ(action_from_int(1), Action::Local);
  EXPECT_FALSE(action_from_int(3).has_value());
  EXPECT_STREQ(to_string(Action::Idle), "IDLE");
}

TEST(Cic, RadiusAndRatio) {
  const auto c = default_correlation();
  const double r = cic_radius(c, 8, 0.01);
  EXPECT_NEAR(r, 77.8, 0.05);
  const auto grid = CoverageGrid::rectangle(250, 250);
  const std::vector<Point2> s{{125, 125}, {20, 20}};
  const bool none[2] = {false, false};
  const bool one[2] = {true, false};
  EXPECT_EQ(cic_coverage_ratio(grid, s, none, r), 0.0);
  EXPECT_NEAR(cic_coverage_ratio(grid, s, one, r), 0.3043, 0.02 * 0.3043);
  EXPECT_NEAR(std::numbers::pi * r * r / 62500.0, 0.3043, 5e-4);
}
