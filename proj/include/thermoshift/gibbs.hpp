#pragma once

// Finite-volume Gibbs kernels pi_L^f(.|x) on conjugacy sets, the averaging
// operator M_L, the consistency residual M_{L2} = M_{L2} M_L, and a finite
// search for the weak-dependence (topological Markov) property.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "thermoshift/potential.hpp"

namespace thermoshift {

inline constexpr std::size_t kDefaultTailDepth = 64;
inline constexpr double kDefaultTailTolerance = 1e-9;

struct TailOptions {
  std::size_t tail_depth = kDefaultTailDepth;
  double tolerance = kDefaultTailTolerance;
};

struct CocycleValue {
  double value = 0.0;
  double slack = 0.0;  // certified bound on the truncated part
};

/// sum_g (f(T^g y) - f(T^g x)) for points equal outside `diff`, with g cut at
/// distance tail_depth from diff. Terms that cannot see diff are skipped exactly.
inline CocycleValue birkhoff_difference(const Potential& f, const FinitePoint& x, const FinitePoint& y,
                                        const Window& diff, const TailOptions& opts = {}) {
  const auto depth = static_cast<Coord>(opts.tail_depth);
  Coord lo = diff.k - depth;
  Coord hi = diff.l + depth;
  bool cut = true;
  if (auto right = f.reach_right()) {
    Coord need_lo = diff.k - *right;
    Coord need_hi = diff.l + f.reach_left();
    cut = need_lo < lo || need_hi > hi;
    lo = std::max(lo, need_lo);
    hi = std::min(hi, need_hi);
  } else {
    hi = std::min(hi, diff.l + f.reach_left());
  }
  CocycleValue out;
  for (Coord g = lo; g <= hi; ++g) out.value += f.at_shift(y, g) - f.at_shift(x, g);
  out.slack = cut ? f.tail_bound(opts.tail_depth) : 0.0;
  if (out.slack > opts.tolerance)
    throw Error(ErrorCode::TailTruncation, "truncation bound " + std::to_string(out.slack) + " at depth " +
                                               std::to_string(opts.tail_depth) + " exceeds tolerance");
  return out;
}

/// Smallest depth whose certified tail is within tolerance (capped at 4096).
inline std::size_t minimal_tail_depth(const Potential& f, double tolerance = kDefaultTailTolerance) {
  std::size_t d = 0;
  while (d < 4096 && f.tail_bound(d) > tolerance) ++d;
  if (f.tail_bound(d) > tolerance) throw Error(ErrorCode::TailTruncation, "no certified depth for " + f.spec());
  return d;
}

inline double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double a : v) s += std::exp(a - m);
  return m + std::log(s);
}

struct KernelRow {
  FinitePoint base;
  Window window;
  std::vector<FinitePoint> support;
  std::vector<double> log_weights;  // log pi(y|x), normalized
  std::vector<double> weights;
  double slack = 0.0;

  /// Index of y in the support, if present.
  std::optional<std::size_t> find(const FinitePoint& y) const {
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] == y) return i;
    return std::nullopt;
  }

  double weight_of(const FinitePoint& y) const {
    auto i = find(y);
    return i ? weights[*i] : 0.0;
  }
};

/// pi_L^f(.|x). Exponents are taken against the first support element, so any
/// base point of the same class yields bit-identical weights.
inline KernelRow kernel_row(const ShiftSpace& space, const Potential& f, const FinitePoint& x, const Window& L,
                            const TailOptions& opts = {}) {
  KernelRow row{x, L, space.conjugacy_set(x, L), {}, {}, 0.0};
  if (row.support.empty())
    throw Error(ErrorCode::Inadmissible, "base point is not in the shift space");
  const FinitePoint& anchor = row.support.front();
  row.log_weights.reserve(row.support.size());
  for (const auto& y : row.support) {
    CocycleValue c = birkhoff_difference(f, anchor, y, L, opts);
    row.log_weights.push_back(c.value);
    row.slack = std::max(row.slack, 2.0 * c.slack);
  }
  double norm = log_sum_exp(row.log_weights);
  for (double& lw : row.log_weights) {
    lw -= norm;
    row.weights.push_back(std::exp(lw));
  }
  return row;
}

using PointFunction = std::function<double(const FinitePoint&)>;

/// M_L(phi)(x) = sum_y phi(y) pi_L^f(y|x).
inline double apply_M(const ShiftSpace& space, const Potential& f, const PointFunction& phi, const Window& L,
                      const FinitePoint& x, const TailOptions& opts = {}) {
  KernelRow row = kernel_row(space, f, x, L, opts);
  double total = 0.0;
  for (std::size_t i = 0; i < row.support.size(); ++i) total += phi(row.support[i]) * row.weights[i];
  return total;
}

namespace detail {

/// Letters of x on `frame` with the coordinates of L masked out: equal keys mean same L-class
/// for points supported in frame.
inline Word class_key(const FinitePoint& x, const Window& frame, const Window& L) {
  Word key = x.project(frame);
  for (Coord i = std::max(L.k, frame.k); i <= std::min(L.l, frame.l); ++i) key[static_cast<std::size_t>(i - frame.k)] = -1;
  return key;
}

}  // namespace detail

/// max over points of |M_{L2}(phi)(x) - M_{L2}(M_L(phi))(x)|. Both sides are constant on
/// L2-classes, so each class is evaluated once.
inline double consistency_check(const ShiftSpace& space, const Potential& f, const PointFunction& phi,
                                const Window& L, const Window& L2, const std::vector<FinitePoint>& points,
                                const TailOptions& opts = {}) {
  if (!L2.contains(L)) throw Error(ErrorCode::InvalidArgument, "consistency check needs L inside L2");
  double worst = 0.0;
  std::set<Word> seen;
  std::map<Word, double> inner_cache;
  for (const auto& x0 : points) {
    if (!space.contains(x0)) continue;
    FinitePoint x = x0.widened(L2);
    Window frame = x.support();
    if (!seen.insert(detail::class_key(x, frame, L2)).second) continue;
    KernelRow outer = kernel_row(space, f, x, L2, opts);
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < outer.support.size(); ++i) {
      const FinitePoint& y = outer.support[i];
      lhs += phi(y) * outer.weights[i];
      Word key = detail::class_key(y.widened(frame), frame, L);
      auto it = inner_cache.find(key);
      if (it == inner_cache.end()) it = inner_cache.emplace(key, apply_M(space, f, phi, L, y, opts)).first;
      rhs += it->second * outer.weights[i];
    }
    worst = std::max(worst, std::abs(lhs - rhs));
    inner_cache.clear();
  }
  return worst;
}

struct ProbeViolation {
  FinitePoint x;
  FinitePoint x_prime;
  Word v;  // meets exactly one of W_L^x, W_L^x'
};

struct ProbeRadius {
  std::size_t radius = 0;
  Window extended;
  std::size_t points = 0;
  std::size_t collars = 0;
  bool violated = false;
};

struct ProbeResult {
  Window window;
  std::size_t depth = 0;
  std::optional<Window> witness;
  std::optional<ProbeViolation> violation;
  std::vector<ProbeRadius> tried;
};

/// Searches Lbar = L extended by r = 1..radius. For each r, every admissible configuration
/// on Lbar extended by depth is grouped by its letters on Lbar \ L; a group is consistent
/// when all members have the same set of admissible L-blocks. The first consistent r is the
/// witness; otherwise the first violation found at the largest radius is reported.
inline ProbeResult weak_dependence_probe(const ShiftSpace& space, const Window& L, std::size_t radius,
                                         std::size_t depth, std::size_t budget = 5'000'000) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "probe radius must be >= 1");
  const auto& lang = space.language();
  ProbeResult result{L, depth, std::nullopt, std::nullopt, {}};
  for (std::size_t r = 1; r <= radius; ++r) {
    Window lbar = L.extended(static_cast<Coord>(r));
    Window big = lbar.extended(static_cast<Coord>(depth));
    detail::require_budget(lang, big.length(), budget);
    struct Seen {
      std::vector<Word> blocks;
      FinitePoint example;
    };
    std::map<Word, Seen> groups;
    std::map<Word, std::vector<Word>> blocks_by_outside;
    ProbeRadius info{r, lbar, 0, 0, false};
    std::optional<ProbeViolation> found;
    lang.for_each_word(big.length(), [&](const Word& w) {
      ++info.points;
      if (found) return;
      FinitePoint x(big, w);
      Word outside = detail::class_key(x, big, L);
      auto cached = blocks_by_outside.find(outside);
      if (cached == blocks_by_outside.end())
        cached = blocks_by_outside.emplace(outside, space.class_blocks(x, L)).first;
      const auto& blocks = cached->second;
      Word collar = detail::class_key(x, lbar, L);
      auto it = groups.find(collar);
      if (it == groups.end()) {
        groups.emplace(collar, Seen{blocks, x});
        return;
      }
      if (it->second.blocks == blocks) return;
      std::vector<Word> diff;
      std::set_symmetric_difference(blocks.begin(), blocks.end(), it->second.blocks.begin(),
                                    it->second.blocks.end(), std::back_inserter(diff));
      found = ProbeViolation{it->second.example, x, diff.front()};
    });
    info.collars = groups.size();
    info.violated = found.has_value();
    result.tried.push_back(info);
    if (!found) {
      result.witness = lbar;
      result.violation.reset();
      return result;
    }
    result.violation = found;
  }
  return result;
}

}  // namespace thermoshift
