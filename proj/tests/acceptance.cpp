// Runs the numbered acceptance criteria and prints one PASS/FAIL line per criterion.

#include <gtest/gtest.h>

#include <iostream>

#include "thermoshift/verify.hpp"

namespace ts = thermoshift;

namespace {

class Acceptance : public ::testing::TestWithParam<ts::verify::NamedCriterion> {};

}  // namespace

TEST_P(Acceptance, Criterion) {
  auto result = ts::verify::run(GetParam(), ts::verify::Config{});
  std::cout << ts::verify::summary_line(result) << std::endl;
  for (const auto& m : result.metrics) std::cout << "    " << m.name << " = " << m.value << "\n";
  EXPECT_TRUE(result.passed) << result.detail;
}

INSTANTIATE_TEST_SUITE_P(Core, Acceptance, ::testing::ValuesIn(ts::verify::all_criteria()),
                         [](const auto& info) { return "C" + std::to_string(info.param.id); });

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  int rc = RUN_ALL_TESTS();
  std::cout << (rc == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return rc;
}
