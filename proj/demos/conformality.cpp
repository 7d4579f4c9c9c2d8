// Conformality residuals of the transfer-matrix measure and of Cesaro approximants.

#include <cstdio>

#include "thermoshift/thermoshift.hpp"

namespace ts = thermoshift;

int main() {
  auto space = ts::ShiftSpace::parse("golden");
  auto f = ts::Potential::parse("table:p=1:000=0.3,001=-0.2,010=0.7,100=0.1,101=-0.4", 2);
  ts::oracle::MarkovOracle markov(space.language(), f);
  ts::Involution phi(ts::Window(1, 1), {0}, {1});
  const std::size_t n = 8;
  auto exact = ts::conformality_residual(space, f, markov.measure(phi.window.extended(n)), phi, n);
  std::printf("transfer-matrix measure: residual %.3e (slack %.3e)\n", exact.residual, exact.slack);
  for (std::size_t volume : {6u, 12u, 24u}) {
    auto nu = ts::cesaro_equilibrium(space, f, volume, phi.window.extended(n));
    auto rep = ts::conformality_residual(space, f, nu, phi, n);
    std::printf("Cesaro n=%2zu: residual %.3e\n", volume, rep.residual);
  }
}
