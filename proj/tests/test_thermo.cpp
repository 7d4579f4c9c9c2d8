#include <gtest/gtest.h>

#include <cmath>

#include "thermoshift/oracle.hpp"
#include "thermoshift/thermo.hpp"

namespace ts = thermoshift;

namespace {

const char* kTable = "table:p=1:000=0.3,001=-0.2,010=0.7,100=0.1,101=-0.4";

struct Case {
  std::string beta;
  std::string f;
};

class DynamicProgram : public ::testing::TestWithParam<Case> {};

}  // namespace

TEST(Partition, GoldenCountsAndRestricted) {
  auto space = ts::ShiftSpace::parse("golden");
  auto zero = ts::Potential::zero(2);
  EXPECT_NEAR(ts::partition_function(space, zero, ts::Window(0, 2)), std::log(5.0), 1e-14);
  EXPECT_NEAR(ts::restricted_partition(space, zero, ts::Window(0, 2)), std::log(2.0), 1e-14);
}

TEST(Partition, SingletonCoordinate) {
  auto space = ts::ShiftSpace::parse("golden");
  EXPECT_NEAR(ts::partition_function(space, ts::Potential::coordinate(0, 2), ts::Window(0, 0)), 1.3132616875182228,
              1e-14);
}

TEST(Partition, RejectsEmptyVolume) {
  auto space = ts::ShiftSpace::parse("golden");
  EXPECT_THROW(ts::VolumeDP(space.language(), ts::Potential::zero(2), 0), ts::Error);
}

TEST_P(DynamicProgram, MatchesEnumeration) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  for (std::size_t len = 1; len <= 8; ++len) {
    ts::Window L(0, static_cast<ts::Coord>(len) - 1);
    EXPECT_NEAR(ts::partition_function(space, f, L), ts::partition_function_enumerated(space, f, L), 1e-10) << len;
  }
}

TEST_P(DynamicProgram, FiniteVolumeMeasureIsNormalizedGibbs) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  ts::Window L(0, 5);
  auto mu = ts::finite_volume_measure(space, f, L);
  EXPECT_NEAR(mu.total(), 1.0, 1e-12);
  EXPECT_EQ(mu.weights.size(), static_cast<std::size_t>(space.language().count(L.length()).get_ui()));
  double log_z = ts::partition_function(space, f, L);
  for (const auto& [w, p] : mu.weights)
    EXPECT_NEAR(std::log(p), ts::birkhoff(f, ts::FinitePoint(L, w), L) - log_z, 1e-10);
}

TEST_P(DynamicProgram, PinnedMarginalsAgreeWithTheMeasure) {
  auto space = ts::ShiftSpace::parse(GetParam().beta);
  auto f = ts::Potential::parse(GetParam().f, space.alphabet_size());
  ts::Window L(0, 6);
  auto mu = ts::finite_volume_measure(space, f, L);
  ts::VolumeDP dp(space.language(), f, L.length());
  ts::Window sub(2, 4);
  auto marginal = mu.marginal(sub);
  for (const auto& [u, p] : marginal.weights) EXPECT_NEAR(std::exp(dp.log_pinned(2, u) - dp.log_partition()), p, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Systems, DynamicProgram,
                         ::testing::Values(Case{"golden", "zero"}, Case{"golden", "coord:0"}, Case{"golden", "coord:2"},
                                           Case{"golden", kTable}, Case{"golden", "decay:geom:1,0.5"},
                                           Case{"rational:5/2", "coord:-1"}, Case{"rational:5/2", "decay:geom:-0.5,0.7"},
                                           Case{"rational:7/3", "shift:0.3:scale:2:coord:0"}),
                         [](const auto& info) { return "S" + std::to_string(info.index); });

TEST(Pressure, GoldenFrozenValue) {
  auto space = ts::ShiftSpace::parse("golden");
  auto seq = ts::pressure_estimate(space, ts::Potential::zero(2), 12);
  ASSERT_EQ(seq.values.size(), 12u);
  ASSERT_EQ(seq.cauchy_gaps.size(), 11u);
  EXPECT_NEAR(seq.values.back(), 0.4875200128158971, 1e-13);
}

TEST(Pressure, ApproachesTheTransferMatrixEigenvalue) {
  auto space = ts::ShiftSpace::parse("golden");
  auto f = ts::Potential::parse(kTable, 2);
  auto seq = ts::pressure_estimate(space, f, 40);
  double target = ts::oracle::MarkovOracle(space.language(), f).log_eigenvalue();
  EXPECT_NEAR(seq.values.back(), target, 0.02);
  EXPECT_LT(std::abs(seq.values.back() - target), std::abs(seq.values[9] - target));
}

TEST(Pressure, AddingAConstantShiftsIt) {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  auto f = ts::Potential::coordinate(0, 3);
  auto a = ts::pressure_estimate(space, f, 6);
  auto b = ts::pressure_estimate(space, f.shifted(0.75), 6);
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(b.values[i] - a.values[i], 0.75, 1e-12);
}

TEST(Cesaro, GoldenMarginalNearParry) {
  auto space = ts::ShiftSpace::parse("golden");
  auto nu = ts::cesaro_equilibrium(space, ts::Potential::zero(2), 24, ts::Window(0, 0));
  EXPECT_NEAR(nu.weight({1}), 0.276393202250021, 0.01);
  EXPECT_NEAR(nu.total(), 1.0, 1e-12);
}

TEST(Cesaro, ConvergesToTheMarkovMeasure) {
  auto space = ts::ShiftSpace::parse("golden");
  auto f = ts::Potential::parse(kTable, 2);
  ts::oracle::MarkovOracle markov(space.language(), f);
  ts::Window target(0, 2);
  double prev = 1.0;
  for (std::size_t n : {8u, 16u, 32u}) {
    double d = ts::cesaro_equilibrium(space, f, n, target).distance_sup(markov.measure(target));
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Cesaro, IsShiftInvariantUpToBoundary) {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  auto f = ts::Potential::coordinate(0, 3);
  const std::size_t n = 10;
  auto a = ts::cesaro_equilibrium(space, f, n, ts::Window(0, 1));
  auto b = ts::cesaro_equilibrium(space, f, n, ts::Window(1, 2));
  EXPECT_LE(a.distance_sup(b), 2.0 / (2 * n + 1) + 1e-12);
}

TEST(Cesaro, RejectsWideTargets) {
  auto space = ts::ShiftSpace::parse("golden");
  try {
    ts::cesaro_equilibrium(space, ts::Potential::zero(2), 2, ts::Window(0, 9));
    FAIL();
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::WindowTooLarge);
  }
  try {
    ts::cesaro_equilibrium(space, ts::Potential::zero(2), 20, ts::Window(0, 20), 100);
    FAIL();
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::BudgetExceeded);
  }
}

TEST(Margin, PositiveForStandardPotentials) {
  for (const char* beta : {"golden", "rational:5/2"}) {
    auto space = ts::ShiftSpace::parse(beta);
    for (const char* spec : {"zero", "coord:0", "scale:-1:coord:0", "decay:geom:1,0.5"}) {
      auto m = ts::margin_check(space, ts::Potential::parse(spec, space.alphabet_size()), 10);
      EXPECT_GT(m.margin, 0.0) << beta << " " << spec;
      EXPECT_EQ(m.depths, (std::vector<std::size_t>{10, 20, 40}));
    }
  }
}

TEST(Margin, ZeroPotentialOrbitAverageVanishes) {
  auto space = ts::ShiftSpace::parse("golden");
  auto m = ts::margin_check(space, ts::Potential::zero(2), 12);
  EXPECT_NEAR(m.margin, 0.4875200128158971, 1e-13);
}

TEST(Decay, RateNearLogBetaForUniformWeights) {
  for (const char* beta : {"golden", "rational:5/2"}) {
    auto space = ts::ShiftSpace::parse(beta);
    auto d = ts::prefix_decay(space, ts::Potential::zero(space.alphabet_size()), 14);
    auto [lo, hi] = space.language().beta().log_enclosure();
    EXPECT_NEAR(d.kappa, 0.5 * (lo + hi), 0.05) << beta;
    EXPECT_EQ(d.lengths.size(), 14u);
    EXPECT_EQ(d.fit_from, 7u);
    EXPECT_EQ(d.residuals.size(), 8u);
  }
}

TEST(Decay, PrefixMassesShrink) {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  auto d = ts::prefix_decay(space, ts::Potential::coordinate(0, 3), 10);
  for (double v : d.neg_log_mass) EXPECT_GT(v, 0.0);
  EXPECT_GT(d.neg_log_mass.back(), d.neg_log_mass.front());
  EXPECT_GT(d.kappa, 0.0);
  EXPECT_THROW(ts::prefix_decay(space, ts::Potential::zero(3), 1), ts::Error);
}
