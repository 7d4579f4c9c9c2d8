#pragma once

// Partition functions, pressure, finite-volume measures and their Cesaro
// averages, prefix decay and the equilibrium margin.
//
// Volume sums run a dynamic program over (automaton state, last 2r letters),
// r the site radius of the potential, so Birkhoff sums of zero-padded words
// factor into per-site terms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "thermoshift/gibbs.hpp"
#include "thermoshift/measure.hpp"

namespace thermoshift {

namespace detail {

inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace detail

/// Forward/backward tables of the Gibbs weights exp(sum_j f(T^j wbar)) over all
/// admissible words w of a given length.
class VolumeDP {
 public:
  using Key = std::uint64_t;
  using Layer = std::unordered_map<Key, double>;

  VolumeDP(const BetaLanguage& lang, const Potential& f, std::size_t length)
      : lang_(lang), f_(f), n_(length), rho_(f.site_radius()), b_(lang.alphabet_size()) {
    if (length == 0) throw Error(ErrorCode::InvalidArgument, "volume must be nonempty");
    hist_size_ = 1;
    for (std::size_t i = 0; i < 2 * rho_; ++i) {
      hist_size_ *= static_cast<Key>(b_);
      if (hist_size_ > (Key{1} << 20)) throw Error(ErrorCode::BudgetExceeded, "potential radius too large for the DP");
    }
    if (f_.kind() != Potential::Kind::Geometric) {
      local_terms_.resize(static_cast<std::size_t>(hist_size_) * static_cast<std::size_t>(b_));
      std::vector<Letter> window(2 * rho_ + 1);
      for (Key h = 0; h < hist_size_; ++h) {
        decode(h, window);
        for (Letter a = 0; a < b_; ++a) {
          window.back() = a;
          local_terms_[static_cast<std::size_t>(h) * static_cast<std::size_t>(b_) + static_cast<std::size_t>(a)] =
              f_.site_term(0, window);
        }
      }
    }
    build();
  }

  std::size_t length() const { return n_; }
  double log_partition() const { return log_z_; }

  /// Restricted to words whose automaton state is 0.
  double log_restricted() const {
    double total = -std::numeric_limits<double>::infinity();
    for (const auto& [key, lw] : forward_[n_]) {
      if (key / hist_size_ != 0) continue;
      total = detail::log_add(total, lw + backward_[n_].at(key));
    }
    return total;
  }

  /// log of the total weight of words equal to u on positions p0.. (positions
  /// outside [0, length) must carry 0).
  double log_pinned(std::ptrdiff_t p0, const Word& u) const {
    Layer cur;
    std::size_t layer = clamp_layer(p0);
    cur = forward_[layer];
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::ptrdiff_t pos = p0 + static_cast<std::ptrdiff_t>(i);
      if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(n_)) {
        if (u[i] != 0) return -std::numeric_limits<double>::infinity();
        continue;
      }
      cur = advance(cur, static_cast<std::size_t>(pos), u[i]);
      layer = static_cast<std::size_t>(pos) + 1;
      if (cur.empty()) return -std::numeric_limits<double>::infinity();
    }
    return close(cur, clamp_layer(p0 + static_cast<std::ptrdiff_t>(u.size())));
  }

  /// Visits every word u of length len with positive pinned weight at p0, with its probability.
  template <class Visitor>
  void for_each_pinned(std::ptrdiff_t p0, std::size_t len, Visitor&& visit) const {
    Word u;
    u.reserve(len);
    pinned_walk(p0, len, forward_[clamp_layer(p0)], u, visit);
  }

 private:
  void decode(Key h, std::vector<Letter>& window) const {
    for (std::size_t i = 2 * rho_; i-- > 0;) {
      window[i] = static_cast<Letter>(h % static_cast<Key>(b_));
      h /= static_cast<Key>(b_);
    }
  }

  std::size_t clamp_layer(std::ptrdiff_t p) const {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(p, 0, static_cast<std::ptrdiff_t>(n_)));
  }

  /// Applies letter a at position t (0 <= t < n + rho) to one state; returns false when rejected.
  bool transition(Key key, std::size_t t, Letter a, Key& next, double& add) const {
    State m = static_cast<State>(key / hist_size_);
    Key hist = key % hist_size_;
    Letter c = lang_.digit(m + 1);
    if (a > c) return false;
    State m2 = a < c ? 0 : m + 1;
    Key wide = hist * static_cast<Key>(b_) + static_cast<Key>(a);
    next = static_cast<Key>(m2) * hist_size_ + (hist_size_ == 1 ? 0 : wide % hist_size_);
    add = 0.0;
    if (t >= rho_ && t - rho_ < n_) {
      std::size_t site = t - rho_;
      if (f_.kind() == Potential::Kind::Geometric) {
        const Letter w[1] = {a};
        add = f_.site_term(site, std::span<const Letter>(w, 1));
      } else {
        add = local_terms_[static_cast<std::size_t>(wide)];
      }
    }
    return true;
  }

  Layer advance(const Layer& cur, std::size_t t, Letter a) const {
    Layer out;
    for (const auto& [key, lw] : cur) {
      Key next;
      double add;
      if (!transition(key, t, a, next, add)) continue;
      auto [it, fresh] = out.try_emplace(next, lw + add);
      if (!fresh) it->second = detail::log_add(it->second, lw + add);
    }
    return out;
  }

  double close(const Layer& cur, std::size_t layer) const {
    double total = -std::numeric_limits<double>::infinity();
    const Layer& back = backward_[layer];
    for (const auto& [key, lw] : cur) {
      auto it = back.find(key);
      if (it != back.end()) total = detail::log_add(total, lw + it->second);
    }
    return total;
  }

  template <class Visitor>
  void pinned_walk(std::ptrdiff_t p0, std::size_t len, const Layer& cur, Word& u, Visitor& visit) const {
    if (u.size() == len) {
      double lw = close(cur, clamp_layer(p0 + static_cast<std::ptrdiff_t>(len)));
      if (lw > -std::numeric_limits<double>::infinity()) visit(static_cast<const Word&>(u), std::exp(lw - log_z_));
      return;
    }
    std::ptrdiff_t pos = p0 + static_cast<std::ptrdiff_t>(u.size());
    if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(n_)) {
      u.push_back(0);
      pinned_walk(p0, len, cur, u, visit);
      u.pop_back();
      return;
    }
    for (Letter a = 0; a < b_; ++a) {
      Layer next = advance(cur, static_cast<std::size_t>(pos), a);
      if (next.empty()) continue;
      u.push_back(a);
      pinned_walk(p0, len, next, u, visit);
      u.pop_back();
    }
  }

  void build() {
    const std::size_t total = n_ + rho_;
    forward_.assign(total + 1, {});
    forward_[0].emplace(0, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
      Letter top = t < n_ ? b_ - 1 : 0;
      for (const auto& [key, lw] : forward_[t]) {
        for (Letter a = 0; a <= top; ++a) {
          Key next;
          double add;
          if (!transition(key, t, a, next, add)) break;
          auto [it, fresh] = forward_[t + 1].try_emplace(next, lw + add);
          if (!fresh) it->second = detail::log_add(it->second, lw + add);
        }
      }
    }
    backward_.assign(total + 1, {});
    for (const auto& [key, lw] : forward_[total]) backward_[total].emplace(key, 0.0);
    for (std::size_t t = total; t-- > 0;) {
      Letter top = t < n_ ? b_ - 1 : 0;
      for (const auto& [key, lw] : forward_[t]) {
        double acc = -std::numeric_limits<double>::infinity();
        for (Letter a = 0; a <= top; ++a) {
          Key next;
          double add;
          if (!transition(key, t, a, next, add)) break;
          acc = detail::log_add(acc, add + backward_[t + 1].at(next));
        }
        backward_[t].emplace(key, acc);
      }
    }
    log_z_ = backward_[0].at(0);
  }

  BetaLanguage lang_;
  Potential f_;
  std::size_t n_;
  std::size_t rho_;
  int b_;
  Key hist_size_ = 1;
  std::vector<double> local_terms_;
  std::vector<Layer> forward_;
  std::vector<Layer> backward_;
  double log_z_ = 0.0;
};

/// log Xi_L(f).
inline double partition_function(const ShiftSpace& space, const Potential& f, const Window& L) {
  return VolumeDP(space.language(), f, L.length()).log_partition();
}

/// log Xi_L(f) by explicit enumeration of L-words and their zero-padded Birkhoff sums.
inline double partition_function_enumerated(const ShiftSpace& space, const Potential& f, const Window& L,
                                            std::size_t budget = kDefaultWordBudget) {
  std::vector<double> terms;
  space.language().for_each_word(
      L.length(), [&](const Word& w) { terms.push_back(birkhoff(f, FinitePoint(L, w), L)); }, budget);
  return log_sum_exp(terms);
}

/// log Xi^0_L(f): words whose automaton state is 0.
inline double restricted_partition(const ShiftSpace& space, const Potential& f, const Window& L) {
  return VolumeDP(space.language(), f, L.length()).log_restricted();
}

struct PressureSequence {
  std::vector<double> values;       // P_[-n,n], n = 1..n_max
  std::vector<double> cauchy_gaps;  // |P_n - P_{n-1}|, n = 2..n_max
};

inline PressureSequence pressure_estimate(const ShiftSpace& space, const Potential& f, std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "pressure needs n >= 1");
  PressureSequence seq;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double p = VolumeDP(space.language(), f, 2 * n + 1).log_partition() / static_cast<double>(2 * n + 1);
    if (!seq.values.empty()) seq.cauchy_gaps.push_back(std::abs(p - seq.values.back()));
    seq.values.push_back(p);
  }
  return seq;
}

/// mu_L: weight exp(birkhoff(f, wbar, L)) / Xi_L on each admissible L-word.
inline CylinderMeasure finite_volume_measure(const ShiftSpace& space, const Potential& f, const Window& L,
                                             std::size_t budget = kDefaultWordBudget) {
  CylinderMeasure mu{L, {}};
  VolumeDP dp(space.language(), f, L.length());
  dp.for_each_pinned(0, L.length(), [&](const Word& w, double p) { mu.weights.emplace(w, p); });
  if (mu.weights.size() > budget) throw Error(ErrorCode::BudgetExceeded, "finite-volume measure exceeds budget");
  return mu;
}

/// nu_n on target-window cylinders: the average over j in [-n, n] of the mu_[-n,n]
/// law of the letters on target + j. Coordinates outside the volume are 0.
inline CylinderMeasure cesaro_equilibrium(const ShiftSpace& space, const Potential& f, std::size_t n,
                                          const Window& target, std::size_t budget = kDefaultWordBudget) {
  if (target.length() > 4 * n + 1)
    throw Error(ErrorCode::WindowTooLarge, "target " + to_string(target) + " is wider than 4n+1");
  if (space.language().count(target.length()) > Integer(static_cast<unsigned long>(budget)))
    throw Error(ErrorCode::BudgetExceeded, "target window has too many cylinders");
  VolumeDP dp(space.language(), f, 2 * n + 1);
  CylinderMeasure nu{target, {}};
  const double share = 1.0 / static_cast<double>(2 * n + 1);
  const auto volume_start = -static_cast<Coord>(n);
  for (Coord j = -static_cast<Coord>(n); j <= static_cast<Coord>(n); ++j) {
    auto p0 = static_cast<std::ptrdiff_t>(target.k + j - volume_start);
    dp.for_each_pinned(p0, target.length(), [&](const Word& u, double p) { nu.weights[u] += share * p; });
  }
  return nu;
}

struct MarginReport {
  std::size_t n = 0;
  double pressure = 0.0;
  std::vector<std::size_t> depths;    // n, 2n, 4n
  std::vector<double> orbit_averages;  // (1/d) sum_{k<d} f(T^k cbar)
  double margin = 0.0;                 // pressure - orbit average at depth n
};

/// P_[-n,n](f) minus the orbit average of f along the digit sequence with zero past.
inline MarginReport margin_check(const ShiftSpace& space, const Potential& f, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "margin check needs n >= 1");
  MarginReport rep;
  rep.n = n;
  rep.pressure = VolumeDP(space.language(), f, 2 * n + 1).log_partition() / static_cast<double>(2 * n + 1);
  std::size_t tail = f.local_radius() ? *f.local_radius() + 1 : minimal_tail_depth(f, 1e-12);
  for (std::size_t d : {n, 2 * n, 4 * n}) {
    Window w(0, static_cast<Coord>(d + tail) - 1);
    FinitePoint c(w, space.language().expand(d + tail));
    double sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) sum += f.at_shift(c, static_cast<Coord>(k));
    rep.depths.push_back(d);
    rep.orbit_averages.push_back(sum / static_cast<double>(d));
  }
  rep.margin = rep.pressure - rep.orbit_averages.front();
  return rep;
}

struct PrefixDecay {
  double kappa = 0.0;
  double intercept = 0.0;
  std::vector<std::size_t> lengths;
  std::vector<double> neg_log_mass;  // -log mu_[1,j]([c_1..c_j])
  std::vector<double> residuals;     // of the fit, over the fitted range
  std::size_t fit_from = 0;
  MarginReport margin;
};

/// Least-squares slope of -log mu_[1,j]([c_1..c_j]) over j in [n_max/2, n_max].
inline PrefixDecay prefix_decay(const ShiftSpace& space, const Potential& f, std::size_t n_max) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "prefix decay needs n >= 2");
  PrefixDecay out;
  out.margin = margin_check(space, f, n_max);
  if (!(out.margin.margin > 0.0))
    throw Error(ErrorCode::MarginViolated, "pressure margin " + std::to_string(out.margin.margin) + " is not positive");
  for (std::size_t j = 1; j <= n_max; ++j) {
    VolumeDP dp(space.language(), f, j);
    out.lengths.push_back(j);
    out.neg_log_mass.push_back(dp.log_partition() - dp.log_pinned(0, space.language().expand(j)));
  }
  out.fit_from = std::max<std::size_t>(1, (n_max + 1) / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (std::size_t i = out.fit_from - 1; i < n_max; ++i) {
    double x = static_cast<double>(out.lengths[i]);
    double y = out.neg_log_mass[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  out.kappa = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  out.intercept = (sy - out.kappa * sx) / cnt;
  for (std::size_t i = out.fit_from - 1; i < n_max; ++i)
    out.residuals.push_back(out.neg_log_mass[i] - (out.intercept + out.kappa * static_cast<double>(out.lengths[i])));
  return out;
}

}  // namespace thermoshift
