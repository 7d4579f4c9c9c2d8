// Digits, word counts, pressure and the equilibrium marginal of the golden-mean shift.

#include <cstdio>

#include "thermoshift/thermoshift.hpp"

namespace ts = thermoshift;

int main() {
  auto space = ts::ShiftSpace::parse("golden");
  const auto& lang = space.language();
  std::printf("digits of 1: %s\n", ts::format_word(lang.expand(16), 2).c_str());
  for (std::size_t n = 1; n <= 10; ++n) std::printf("|L_%zu| = %s\n", n, lang.count(n).get_str().c_str());

  auto f = ts::Potential::coordinate(0, 2);
  auto seq = ts::pressure_estimate(space, f, 16);
  for (std::size_t n = 0; n < seq.values.size(); n += 3) std::printf("P_[-%zu,%zu](x0) = %.10f\n", n + 1, n + 1, seq.values[n]);

  auto nu = ts::cesaro_equilibrium(space, f, 24, ts::Window(0, 1));
  for (const auto& [w, p] : nu.weights) std::printf("nu[%s] = %.6f\n", ts::format_word(w, 2).c_str(), p);
}
