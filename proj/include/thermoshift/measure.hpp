#pragma once

// Probability weights on the cylinders of a single window.

#include <cmath>
#include <map>
#include <string>

#include "thermoshift/shift_space.hpp"

namespace thermoshift {

struct CylinderMeasure {
  Window window;
  std::map<Word, double> weights;

  double total() const {
    double s = 0.0;
    for (const auto& [w, p] : weights) s += p;
    return s;
  }

  double weight(const Word& w) const {
    auto it = weights.find(w);
    return it == weights.end() ? 0.0 : it->second;
  }

  /// Push-forward to a sub-window.
  CylinderMeasure marginal(const Window& sub) const {
    if (!window.contains(sub))
      throw Error(ErrorCode::WindowTooLarge, "marginal window " + to_string(sub) + " not inside " + to_string(window));
    CylinderMeasure out{sub, {}};
    const auto offset = static_cast<std::ptrdiff_t>(sub.k - window.k);
    for (const auto& [w, p] : weights) {
      Word key(w.begin() + offset, w.begin() + offset + static_cast<std::ptrdiff_t>(sub.length()));
      out.weights[key] += p;
    }
    return out;
  }

  /// mu([u]_sub) for sub inside the window.
  double mass(const Window& sub, const Word& u) const {
    if (!window.contains(sub))
      throw Error(ErrorCode::WindowTooLarge, "cylinder window " + to_string(sub) + " not inside " + to_string(window));
    const auto offset = static_cast<std::size_t>(sub.k - window.k);
    double s = 0.0;
    for (const auto& [w, p] : weights)
      if (std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(offset))) s += p;
    return s;
  }

  /// Largest |weight difference| over the union of supports.
  double distance_sup(const CylinderMeasure& other) const {
    double d = 0.0;
    for (const auto& [w, p] : weights) d = std::max(d, std::abs(p - other.weight(w)));
    for (const auto& [w, p] : other.weights) d = std::max(d, std::abs(p - weight(w)));
    return d;
  }
};

}  // namespace thermoshift
