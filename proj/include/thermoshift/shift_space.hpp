#pragma once

// Natural extension of the beta-shift, restricted to finitely supported
// points. A FinitePoint is a word on a window with zeros everywhere else;
// it lies in the shift space exactly when its letters over any window
// covering the nonzero coordinates form an admissible word (left zeros keep
// the automaton in state 0, right zeros are always admissible).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thermoshift/beta_lang.hpp"

namespace thermoshift {

using Coord = std::int64_t;

/// The interval [k, l] of Z.
struct Window {
  Coord k = 0;
  Coord l = 0;

  Window() = default;
  Window(Coord k_, Coord l_) : k(k_), l(l_) {
    if (l_ < k_) throw Error(ErrorCode::InvalidArgument, "window needs k <= l");
  }

  std::size_t length() const { return static_cast<std::size_t>(l - k + 1); }
  bool contains(Coord i) const { return k <= i && i <= l; }
  bool contains(const Window& other) const { return k <= other.k && other.l <= l; }
  Window extended(Coord r) const { return {k - r, l + r}; }
  Window extended(Coord left, Coord right) const { return {k - left, l + right}; }
  Window translated(Coord j) const { return {k + j, l + j}; }

  static Window hull(const Window& a, const Window& b) { return {std::min(a.k, b.k), std::max(a.l, b.l)}; }

  bool operator==(const Window&) const = default;
  auto operator<=>(const Window&) const = default;
};

inline std::string to_string(const Window& w) {
  return "[" + std::to_string(w.k) + "," + std::to_string(w.l) + "]";
}

/// A point of A^Z equal to 0 outside a finite window.
class FinitePoint {
 public:
  FinitePoint() : support_(0, 0), letters_{0} {}

  FinitePoint(Window support, Word letters) : support_(support), letters_(std::move(letters)) {
    if (letters_.size() != support_.length())
      throw Error(ErrorCode::InvalidArgument, "point letters do not match window " + to_string(support_));
  }

  static FinitePoint zero() { return {}; }

  /// Single nonzero letter a at coordinate i.
  static FinitePoint single(Coord i, Letter a) { return {Window(i, i), Word{a}}; }

  const Window& support() const { return support_; }
  const Word& letters() const { return letters_; }

  Letter at(Coord i) const { return support_.contains(i) ? letters_[static_cast<std::size_t>(i - support_.k)] : 0; }
  Letter operator[](Coord i) const { return at(i); }

  /// Smallest window holding every nonzero coordinate; nullopt for the zero point.
  std::optional<Window> nonzero_hull() const {
    auto first = std::find_if(letters_.begin(), letters_.end(), [](Letter a) { return a != 0; });
    if (first == letters_.end()) return std::nullopt;
    auto last = std::find_if(letters_.rbegin(), letters_.rend(), [](Letter a) { return a != 0; });
    Coord k = support_.k + (first - letters_.begin());
    Coord l = support_.l - (last - letters_.rbegin());
    return Window(k, l);
  }

  Word project(const Window& w) const {
    Word out(w.length());
    for (Coord i = w.k; i <= w.l; ++i) out[static_cast<std::size_t>(i - w.k)] = at(i);
    return out;
  }

  /// Same point, letters listed over a larger window.
  FinitePoint widened(const Window& w) const {
    Window hull = Window::hull(support_, w);
    return {hull, project(hull)};
  }

  /// Replaces the letters on w by block.
  FinitePoint with_block(const Window& w, const Word& block) const {
    if (block.size() != w.length()) throw Error(ErrorCode::InvalidArgument, "block does not fit window");
    Window hull = Window::hull(support_, w);
    Word letters = project(hull);
    std::copy(block.begin(), block.end(), letters.begin() + (w.k - hull.k));
    return {hull, std::move(letters)};
  }

  /// Trimmed form: support is the nonzero hull, or [0,0] for the zero point.
  FinitePoint canonical() const {
    auto h = nonzero_hull();
    if (!h) return zero();
    return {*h, project(*h)};
  }

  bool operator==(const FinitePoint& other) const {
    Window hull = Window::hull(support_, other.support_);
    for (Coord i = hull.k; i <= hull.l; ++i)
      if (at(i) != other.at(i)) return false;
    return true;
  }

  /// Total order on coordinates (by canonical form); for use as a map key.
  bool operator<(const FinitePoint& other) const {
    FinitePoint a = canonical();
    FinitePoint b = other.canonical();
    if (a.support_.k != b.support_.k) return a.support_.k < b.support_.k;
    return a.letters_ < b.letters_;
  }

 private:
  Window support_;
  Word letters_;
};

/// (T^j x)(i) = x(i + j).
inline FinitePoint shift(const FinitePoint& x, Coord j) { return {x.support().translated(-j), x.letters()}; }

inline Word project(const FinitePoint& x, const Window& w) { return x.project(w); }

/// d(x, y) = 2^-m with m the smallest |i| where x and y differ; 0 if equal.
/// The expansive constant is 1/2: d(x, y) <= 1/2 iff x(0) == y(0).
struct Metric {
  static constexpr double kExpansiveConstant = 0.5;

  static double epsilon(std::size_t n) { return std::ldexp(1.0, -static_cast<int>(n)); }

  static std::optional<std::size_t> first_difference(const FinitePoint& x, const FinitePoint& y) {
    Window hull = Window::hull(x.support(), y.support());
    Coord reach = std::max(std::abs(hull.k), std::abs(hull.l));
    for (Coord m = 0; m <= reach; ++m) {
      if (x.at(m) != y.at(m) || x.at(-m) != y.at(-m)) return static_cast<std::size_t>(m);
    }
    return std::nullopt;
  }

  static double distance(const FinitePoint& x, const FinitePoint& y) {
    auto m = first_difference(x, y);
    return m ? epsilon(*m) : 0.0;
  }
};

inline double distance(const FinitePoint& x, const FinitePoint& y) { return Metric::distance(x, y); }

struct Cylinder {
  Window window;
  Word word;

  bool contains(const FinitePoint& x) const { return x.project(window) == word; }
  bool operator==(const Cylinder&) const = default;
};

/// The natural extension over a given language; cheap to copy.
class ShiftSpace {
 public:
  explicit ShiftSpace(BetaLanguage lang) : lang_(std::move(lang)) {}

  static ShiftSpace parse(std::string_view beta_spec) { return ShiftSpace(BetaLanguage::parse(beta_spec)); }

  const BetaLanguage& language() const { return lang_; }
  int alphabet_size() const { return lang_.alphabet_size(); }

  bool contains(const FinitePoint& x) const {
    for (Letter a : x.letters()) lang_.check_letter(a);
    auto h = x.nonzero_hull();
    return !h || lang_.is_admissible(x.project(*h));
  }

  /// The point equal to w on L and 0 elsewhere.
  FinitePoint zero_pad(const Word& w, const Window& L) const {
    if (w.size() != L.length())
      throw Error(ErrorCode::InvalidArgument, "word length " + std::to_string(w.size()) + " does not match window " +
                                                  to_string(L));
    FinitePoint x(L, w);
    if (!contains(x))
      throw Error(ErrorCode::Inadmissible, "zero padding of " + format_word(w, alphabet_size()) + " is not a point");
    return x;
  }

  /// W_L^x: every point of the space agreeing with x off L, ordered by the block on L.
  std::vector<FinitePoint> conjugacy_set(const FinitePoint& x, const Window& L,
                                         std::size_t budget = kDefaultWordBudget) const {
    std::vector<FinitePoint> out;
    FinitePoint base = x.widened(L);
    Window hull = base.support();
    Word letters = base.letters();
    const auto offset = static_cast<std::size_t>(L.k - hull.k);
    // Prefix before L is fixed: run it once, then finish each candidate block.
    Word left(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(offset));
    Word right(letters.begin() + static_cast<std::ptrdiff_t>(offset + L.length()), letters.end());
    auto start = lang_.run(left);
    if (!start) {
      // x itself is not a point; substitution on L cannot repair the left part.
      return out;
    }
    lang_.for_each_word(
        L.length(),
        [&](const Word& block) {
          auto mid = lang_.run(block, *start);
          if (mid && lang_.run(right, *mid)) out.push_back(base.with_block(L, block));
        },
        budget);
    return out;
  }

  /// The set of L-blocks v with [v]_L meeting W_L^x, as a sorted list.
  std::vector<Word> class_blocks(const FinitePoint& x, const Window& L) const {
    std::vector<Word> out;
    for (const auto& y : conjugacy_set(x, L)) out.push_back(y.project(L));
    return out;
  }

  /// Every admissible word on L, zero padded.
  std::vector<FinitePoint> points_on(const Window& L, std::size_t budget = kDefaultWordBudget) const {
    std::vector<FinitePoint> out;
    lang_.for_each_word(L.length(), [&](const Word& w) { out.emplace_back(L, w); }, budget);
    return out;
  }

 private:
  BetaLanguage lang_;
};

}  // namespace thermoshift
