#pragma once

// Cocycles, cylinder-swap involutions, tail classes, the trees T(u) and T(u,v)
// with their cylinder unions A2(n), B2(n), and the conformality residual of a
// cylinder measure.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thermoshift/gibbs.hpp"
#include "thermoshift/measure.hpp"

namespace thermoshift {

struct Involution {
  Window window;
  Word u;
  Word v;

  Involution(Window w, Word u_, Word v_) : window(w), u(std::move(u_)), v(std::move(v_)) {
    if (u.size() != w.length() || v.size() != w.length())
      throw Error(ErrorCode::InvalidArgument, "involution words must have the window length");
  }
};

/// Swaps the L-block u <-> v when the swapped point lies in the space; otherwise identity.
inline FinitePoint apply_involution(const ShiftSpace& space, const Involution& phi, const FinitePoint& x) {
  Word block = x.project(phi.window);
  const Word* target = nullptr;
  if (block == phi.u)
    target = &phi.v;
  else if (block == phi.v)
    target = &phi.u;
  if (!target || *target == block) return x;
  FinitePoint y = x.with_block(phi.window, *target);
  return space.contains(y) ? y : x;
}

/// psi_f(x, y) = sum_g f(T^g y) - f(T^g x) for conjugate points.
inline CocycleValue cocycle(const Potential& f, const FinitePoint& x, const FinitePoint& y,
                            const TailOptions& opts = {}) {
  Window hull = Window::hull(x.support(), y.support());
  std::optional<Coord> first;
  Coord last = 0;
  for (Coord i = hull.k; i <= hull.l; ++i) {
    if (x.at(i) != y.at(i)) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return {};
  return birkhoff_difference(f, x, y, Window(*first, last), opts);
}

/// psi_{f,r}(x): Birkhoff difference over L extended by r between the zero-padded
/// projection of x to L extended by t and its involution image.
inline double truncated_cocycle(const ShiftSpace& space, const Potential& f, const FinitePoint& x,
                                const Involution& phi, std::size_t r, std::size_t t) {
  if (t < r) throw Error(ErrorCode::InvalidArgument, "truncated cocycle needs t >= r");
  Window outer = phi.window.extended(static_cast<Coord>(t));
  FinitePoint xbar(outer, x.project(outer));
  FinitePoint ybar = apply_involution(space, phi, xbar);
  Window inner = phi.window.extended(static_cast<Coord>(r));
  double total = 0.0;
  for (Coord g = inner.k; g <= inner.l; ++g) total += f.at_shift(ybar, g) - f.at_shift(xbar, g);
  return total;
}

struct TailClass {
  std::vector<Word> blocks;  // the L-blocks met by W_L^x, sorted
  std::vector<FinitePoint> members;
};

/// Partition of the points by the set of L-cylinders their conjugacy set meets.
inline std::vector<TailClass> tail_classes(const ShiftSpace& space, const Window& L,
                                           const std::vector<FinitePoint>& points) {
  std::map<std::vector<Word>, std::vector<FinitePoint>> groups;
  for (const auto& x : points) groups[space.class_blocks(x, L)].push_back(x);
  std::vector<TailClass> out;
  for (auto& [blocks, members] : groups) out.push_back({blocks, std::move(members)});
  return out;
}

struct TreeVertex {
  Word left;
  Word right;
  bool operator==(const TreeVertex&) const = default;
  auto operator<=>(const TreeVertex&) const = default;
};

struct TailTree {
  Window window;
  Word u;
  std::optional<Word> v;
  std::vector<std::vector<TreeVertex>> levels;  // levels[k]: |w-| = |w+| = k

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  Window cylinder_window() const { return window.extended(static_cast<Coord>(depth())); }

  static Word join(const Word& a, const Word& mid, const Word& b) {
    Word w = a;
    w.insert(w.end(), mid.begin(), mid.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
  }

  /// A2(n): words w- u w+ on the window extended by n.
  std::vector<Word> a2() const {
    std::vector<Word> out;
    for (const auto& vtx : levels.back()) out.push_back(join(vtx.left, u, vtx.right));
    return out;
  }

  /// B2(n): words w- v w+ (empty for a single-root tree).
  std::vector<Word> b2() const {
    std::vector<Word> out;
    if (!v) return out;
    for (const auto& vtx : levels.back()) out.push_back(join(vtx.left, *v, vtx.right));
    return out;
  }
};

/// Levels 0..n of T(u), or of T(u,v) when v is given.
inline TailTree grow_tree(const ShiftSpace& space, const Word& u, const std::optional<Word>& v, const Window& L,
                          std::size_t n, std::size_t budget = kDefaultWordBudget) {
  const auto& lang = space.language();
  if (u.size() != L.length() || (v && v->size() != L.length()))
    throw Error(ErrorCode::InvalidArgument, "tree root must have the window length");
  if (!lang.is_admissible(u) || (v && !lang.is_admissible(*v)))
    throw Error(ErrorCode::Inadmissible, "tree root is not admissible");
  TailTree tree{L, u, v, {{TreeVertex{}}}};
  std::size_t total = 1;
  const int b = lang.alphabet_size();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<TreeVertex> next;
    for (const auto& vtx : tree.levels.back()) {
      for (Letter a = 0; a < b; ++a) {
        Word left{a};
        left.insert(left.end(), vtx.left.begin(), vtx.left.end());
        for (Letter c = 0; c < b; ++c) {
          Word right = vtx.right;
          right.push_back(c);
          if (!lang.is_admissible(TailTree::join(left, u, right))) continue;
          if (v && !lang.is_admissible(TailTree::join(left, *v, right))) continue;
          next.push_back({left, right});
          if (++total > budget) throw Error(ErrorCode::BudgetExceeded, "tree exceeds budget");
        }
      }
    }
    std::sort(next.begin(), next.end());
    tree.levels.push_back(std::move(next));
  }
  return tree;
}

struct SufficiencyVerdict {
  TreeVertex vertex;
  bool left_condition = false;   // |s(a w-)| <= n
  bool right_condition = false;  // |s(a w- v w+)| <= n
  bool hypothesis = false;       // a w- u w+ b admissible
  bool swapped_admissible = false;  // a w- v w+ b admissible (ground truth)

  bool sufficient() const { return left_condition && right_condition; }
};

/// Checks the suffix-length conditions under which a w- v w+ b stays admissible,
/// for every depth-n vertex of a joint tree.
inline std::vector<SufficiencyVerdict> sufficiency_filter(const ShiftSpace& space, const TailTree& tree,
                                                          const Word& a, const Word& b) {
  if (!tree.v) throw Error(ErrorCode::InvalidArgument, "sufficiency filter needs a joint tree");
  const auto& lang = space.language();
  const std::size_t n = tree.depth();
  auto suffix_length = [&](const Word& w) -> std::optional<std::size_t> {
    auto m = lang.run(w);
    return m ? std::optional<std::size_t>(*m) : std::nullopt;
  };
  std::vector<SufficiencyVerdict> out;
  for (const auto& vtx : tree.levels.back()) {
    SufficiencyVerdict verdict{vtx};
    Word aw = TailTree::join(a, vtx.left, {});
    Word awv = TailTree::join(aw, *tree.v, vtx.right);
    auto s1 = suffix_length(aw);
    auto s2 = suffix_length(awv);
    verdict.left_condition = s1 && *s1 <= n;
    verdict.right_condition = s2 && *s2 <= n;
    verdict.hypothesis = lang.is_admissible(TailTree::join(aw, tree.u, TailTree::join(vtx.right, b, {})));
    verdict.swapped_admissible = lang.is_admissible(TailTree::join(awv, b, {}));
    out.push_back(verdict);
  }
  return out;
}

struct ConformalityReport {
  double residual = 0.0;
  double slack = 0.0;
  double a2_mass = 0.0;
  double b2_mass = 0.0;
  double weighted_a2 = 0.0;  // sum over A2 cylinders of mu(c) exp psi_{f,r}(x_c)
  std::size_t a2_count = 0;
  std::size_t b2_count = 0;
  std::size_t r = 0;
  std::size_t t = 0;
};

struct ConformalityOptions {
  std::optional<std::size_t> r;  // default: local radius if <= n/2, else n/2
  std::optional<std::size_t> t;  // default: n
};

/// |mu(B2(n)) - sum_{c in A2(n)} mu(c) exp psi_{f,r}(x_c)| with its certified slack.
inline ConformalityReport conformality_residual(const ShiftSpace& space, const Potential& f,
                                                const CylinderMeasure& mu, const Involution& phi, std::size_t n,
                                                const ConformalityOptions& opts = {}) {
  Window frame = phi.window.extended(static_cast<Coord>(n));
  CylinderMeasure local = mu.window == frame ? mu : mu.marginal(frame);
  ConformalityReport rep;
  rep.t = opts.t.value_or(n);
  if (rep.t > n) throw Error(ErrorCode::InvalidArgument, "truncation window must lie inside the cylinder window");
  std::size_t half = n / 2;
  auto p = f.local_radius();
  rep.r = opts.r.value_or(p && *p <= half ? *p : half);
  if (rep.r > rep.t) throw Error(ErrorCode::InvalidArgument, "conformality check needs r <= t");

  TailTree tree = grow_tree(space, phi.u, phi.v, phi.window, n);
  for (const auto& w : tree.a2()) {
    double m = local.weight(w);
    rep.a2_mass += m;
    if (m == 0.0) continue;
    FinitePoint xc(frame, w);
    rep.weighted_a2 += m * std::exp(truncated_cocycle(space, f, xc, phi, rep.r, rep.t));
  }
  for (const auto& w : tree.b2()) rep.b2_mass += local.weight(w);
  rep.a2_count = tree.levels.back().size();
  rep.b2_count = rep.a2_count;
  rep.residual = std::abs(rep.b2_mass - rep.weighted_a2);

  double eps = f.tail_bound(rep.r);
  const Window inner = phi.window.extended(static_cast<Coord>(rep.r));
  const auto t = static_cast<Coord>(rep.t);
  for (Coord j = inner.k; j <= inner.l; ++j) {
    Coord rho = std::min(j - phi.window.k + t, phi.window.l + t - j);
    eps += 2.0 * f.variation_bound(static_cast<std::size_t>(rho + 1));
  }
  rep.slack = std::expm1(eps) * rep.weighted_a2;
  return rep;
}

}  // namespace thermoshift
