// Gibbs kernel rows on a window and the weak-dependence probe for two betas.

#include <cstdio>

#include "thermoshift/thermoshift.hpp"

namespace ts = thermoshift;

int main() {
  auto space = ts::ShiftSpace::parse("rational:5/2");
  auto f = ts::Potential::parse("decay:geom:0.5,0.5", space.alphabet_size());
  ts::TailOptions opts{ts::minimal_tail_depth(f, 1e-12), 1e-9};
  ts::FinitePoint x(ts::Window(-2, 2), {1, 0, 0, 2, 0});
  auto row = ts::kernel_row(space, f, x, ts::Window(-1, 0), opts);
  std::printf("kernel on [-1,0] at %s, slack %.2e\n", ts::format_word(x.letters(), 3).c_str(), row.slack);
  for (std::size_t i = 0; i < row.support.size(); ++i)
    std::printf("  %s  %.6f\n", ts::format_word(row.support[i].project(ts::Window(-1, 0)), 3).c_str(), row.weights[i]);

  for (const char* beta : {"golden", "rational:5/2"}) {
    auto res = ts::weak_dependence_probe(ts::ShiftSpace::parse(beta), ts::Window(0, 0), 2, 3);
    if (res.witness)
      std::printf("%s: witness %s\n", beta, ts::to_string(*res.witness).c_str());
    else
      std::printf("%s: violation, separating block %s\n", beta, ts::format_word(res.violation->v, 3).c_str());
  }
}
