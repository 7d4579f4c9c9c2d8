#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "thermoshift/gibbs.hpp"

namespace ts = thermoshift;

namespace {

const char* kTable = "table:p=1:000=0.3,001=-0.2,010=0.7,100=0.1,101=-0.4";

ts::TailOptions tight(const ts::Potential& f) { return {ts::minimal_tail_depth(f, 1e-12), 1e-9}; }

struct Case {
  std::string beta;
  std::string f;
};

class KernelLaws : public ::testing::TestWithParam<Case> {};

}  // namespace

TEST(Kernel, TwoPointRowMatchesOracle) {
  // Golden mean, f(x) = x(0), L = {0}, x = 0: weights 1/(1+e) and e/(1+e).
  auto space = ts::ShiftSpace::parse("golden");
  auto row = ts::kernel_row(space, ts::Potential::coordinate(0, 2), ts::FinitePoint::zero(), ts::Window(0, 0));
  ASSERT_EQ(row.support.size(), 2u);
  EXPECT_NEAR(row.weight_of(ts::FinitePoint::zero()), 0.2689414213699951, 1e-15);
  EXPECT_NEAR(row.weight_of(ts::FinitePoint::single(0, 1)), 0.7310585786300049, 1e-15);
  EXPECT_EQ(row.slack, 0.0);
}

TEST(Kernel, ForcedCoordinateGivesPointMass) {
  auto space = ts::ShiftSpace::parse("golden");
  ts::FinitePoint x(ts::Window(-1, 1), {1, 0, 1});
  auto row = ts::kernel_row(space, ts::Potential::coordinate(0, 2), x, ts::Window(0, 0));
  ASSERT_EQ(row.support.size(), 1u);
  EXPECT_DOUBLE_EQ(row.weights[0], 1.0);
}

TEST(Kernel, RejectsPointsOutsideTheSpace) {
  auto space = ts::ShiftSpace::parse("golden");
  ts::FinitePoint x(ts::Window(-2, -1), {1, 1});
  EXPECT_THROW(ts::kernel_row(space, ts::Potential::coordinate(0, 2), x, ts::Window(0, 0)), ts::Error);
}

TEST(Kernel, TailTruncationIsReported) {
  auto space = ts::ShiftSpace::parse("golden");
  auto f = ts::Potential::geometric(1.0, 0.9, 2);
  try {
    ts::kernel_row(space, f, ts::FinitePoint::zero(), ts::Window(0, 0), {4, 1e-9});
    FAIL();
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::TailTruncation);
  }
  EXPECT_NO_THROW(ts::kernel_row(space, f, ts::FinitePoint::zero(), ts::Window(0, 0), tight(f)));
}

TEST(Kernel, MinimalTailDepthMeetsTolerance) {
  auto f = ts::Potential::geometric(1.0, 0.5, 2);
  std::size_t d = ts::minimal_tail_depth(f, 1e-9);
  EXPECT_LE(f.tail_bound(d), 1e-9);
  EXPECT_GT(f.tail_bound(d - 1), 1e-9);
  EXPECT_EQ(ts::minimal_tail_depth(ts::Potential::coordinate(3, 2), 1e-9), 3u);
}

TEST(Kernel, LogSumExpIsStable) {
  EXPECT_NEAR(ts::log_sum_exp({1000.0, 1000.0}), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR(ts::log_sum_exp({-1000.0, -1000.0}), -1000.0 + std::log(2.0), 1e-12);
}

TEST_P(KernelLaws, RowsAreProbabilityVectorsOnTheClass) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  ts::Window L(0, 1);
  for (const auto& x : space.points_on(ts::Window(-3, 4))) {
    auto row = ts::kernel_row(space, f, x, L, tight(f));
    double total = 0.0;
    for (double w : row.weights) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_EQ(row.support, space.conjugacy_set(x, L));
    EXPECT_GT(row.weight_of(x), 0.0);
  }
}

TEST_P(KernelLaws, RowsAreConstantOnClasses) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  ts::Window L(-1, 0);
  for (const auto& x : space.points_on(ts::Window(-3, 3))) {
    auto row = ts::kernel_row(space, f, x, L, tight(f));
    for (const auto& y : row.support) {
      auto other = ts::kernel_row(space, f, y, L, tight(f));
      EXPECT_EQ(other.weights, row.weights);  // bit-identical
    }
  }
}

TEST_P(KernelLaws, LogRatiosAreBirkhoffDifferences) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  ts::Window L(0, 1);
  for (const auto& x : space.points_on(ts::Window(-2, 3))) {
    auto row = ts::kernel_row(space, f, x, L, tight(f));
    for (std::size_t i = 0; i < row.support.size(); ++i) {
      auto c = ts::birkhoff_difference(f, row.support[0], row.support[i], L, tight(f));
      EXPECT_NEAR(row.log_weights[i] - row.log_weights[0], c.value, 1e-10);
    }
  }
}

TEST_P(KernelLaws, ConsistencyOfNestedWindows) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  ts::PointFunction phi = [](const ts::FinitePoint& y) { return y.at(0) + 0.5 * y.at(1) * y.at(-1) + 0.25 * y.at(2); };
  auto points = space.points_on(ts::Window(-3, 4));
  for (const auto& [L, L2] : {std::pair{ts::Window(0, 0), ts::Window(-1, 1)}, std::pair{ts::Window(0, 1), ts::Window(-1, 2)}}) {
    double gap = ts::consistency_check(space, f, phi, L, L2, points, tight(f));
    EXPECT_LE(gap, 1e-10) << ts::to_string(L) << " in " << ts::to_string(L2);
  }
  EXPECT_THROW(ts::consistency_check(space, f, phi, ts::Window(0, 2), ts::Window(0, 1), points), ts::Error);
}

INSTANTIATE_TEST_SUITE_P(Systems, KernelLaws,
                         ::testing::Values(Case{"golden", "coord:0"}, Case{"golden", kTable},
                                           Case{"golden", "decay:geom:1,0.5"}, Case{"rational:5/2", "coord:1"},
                                           Case{"rational:5/2", "scale:-0.7:decay:geom:1,0.3"},
                                           Case{"rational:7/3", "zero"}),
                         [](const auto& info) { return "S" + std::to_string(info.index); });

TEST(Probe, GoldenMeanHasRadiusOneWitness) {
  auto space = ts::ShiftSpace::parse("golden");
  auto res = ts::weak_dependence_probe(space, ts::Window(0, 0), 2, 3);
  ASSERT_TRUE(res.witness);
  EXPECT_EQ(*res.witness, ts::Window(-1, 1));
  EXPECT_FALSE(res.violation);
  ASSERT_EQ(res.tried.size(), 1u);
  EXPECT_FALSE(res.tried[0].violated);
}

TEST(Probe, FiveHalvesViolatesAtSmallRadii) {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  auto res = ts::weak_dependence_probe(space, ts::Window(0, 0), 2, 4);
  EXPECT_FALSE(res.witness);
  ASSERT_TRUE(res.violation);
  const auto& v = *res.violation;
  ts::Window lbar = ts::Window(0, 0).extended(2);
  // Same collar, different block sets, and v separates them.
  EXPECT_EQ(v.x.project(ts::Window(-2, -1)), v.x_prime.project(ts::Window(-2, -1)));
  EXPECT_EQ(v.x.project(ts::Window(1, 2)), v.x_prime.project(ts::Window(1, 2)));
  auto a = space.class_blocks(v.x, ts::Window(0, 0));
  auto b = space.class_blocks(v.x_prime, ts::Window(0, 0));
  bool in_a = std::find(a.begin(), a.end(), v.v) != a.end();
  bool in_b = std::find(b.begin(), b.end(), v.v) != b.end();
  EXPECT_NE(in_a, in_b);
  EXPECT_EQ(res.tried.back().extended, lbar);
}

TEST(Probe, IsDeterministic) {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  auto a = ts::weak_dependence_probe(space, ts::Window(0, 0), 2, 3);
  auto b = ts::weak_dependence_probe(space, ts::Window(0, 0), 2, 3);
  ASSERT_TRUE(a.violation && b.violation);
  EXPECT_EQ(a.violation->x, b.violation->x);
  EXPECT_EQ(a.violation->x_prime, b.violation->x_prime);
  EXPECT_EQ(a.violation->v, b.violation->v);
}

TEST(Probe, BudgetAndArguments) {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  EXPECT_THROW(ts::weak_dependence_probe(space, ts::Window(0, 0), 0, 3), ts::Error);
  try {
    ts::weak_dependence_probe(space, ts::Window(0, 0), 2, 10, 1000);
    FAIL();
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::BudgetExceeded);
  }
}
