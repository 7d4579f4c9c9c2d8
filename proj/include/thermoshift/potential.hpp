#pragma once

// Potentials on the natural extension.
//
// Built-in families: zero, constants, coordinate functions x(j), window-local
// tables of radius p, and geometric decay f(x) = sum_{k>=0} a lambda^k x(k),
// each optionally scaled and shifted by a constant. Every family carries a
// declared variation envelope V(n) >= var_n(f), where var_n is taken over
// pairs agreeing on the symmetric window [-(n-1), n-1]. The envelope
// certifies truncation of the infinite Birkhoff differences.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "thermoshift/shift_space.hpp"

namespace thermoshift {

class Potential {
 public:
  enum class Kind { Zero, Coordinate, Table, Geometric };

  /// Grammar: `zero`, `const:<K>`, `coord:<j>`, `table:p=<r>:<word>=<value>,...`,
  /// `decay:geom:<a>,<lambda>`, and the combinators `scale:<s>:<spec>`, `shift:<K>:<spec>`.
  static Potential parse(std::string_view spec, int alphabet_size) {
    Potential f = parse_inner(std::string(spec), alphabet_size);
    f.spec_ = std::string(spec);
    return f;
  }

  static Potential zero(int alphabet_size) { return Potential(Kind::Zero, alphabet_size, "zero"); }

  static Potential constant(double value, int alphabet_size) {
    Potential f(Kind::Zero, alphabet_size, "const:" + format_double(value));
    f.offset_ = value;
    return f;
  }

  static Potential coordinate(Coord j, int alphabet_size) {
    Potential f(Kind::Coordinate, alphabet_size, "coord:" + std::to_string(j));
    f.coord_ = j;
    return f;
  }

  /// Values indexed by words of length 2*radius+1 read on [-radius, radius]; missing words map to 0.
  static Potential table(std::size_t radius, const std::map<Word, double>& values, int alphabet_size) {
    Potential f(Kind::Table, alphabet_size, "");
    f.radius_ = radius;
    const std::size_t width = 2 * radius + 1;
    double cells = std::pow(static_cast<double>(alphabet_size), static_cast<double>(width));
    if (cells > 1 << 24) throw Error(ErrorCode::InvalidSpec, "table potential too large");
    f.dense_.assign(static_cast<std::size_t>(cells), 0.0);
    std::string spec = "table:p=" + std::to_string(radius) + ":";
    bool first = true;
    for (const auto& [w, v] : values) {
      if (w.size() != width)
        throw Error(ErrorCode::InvalidSpec, "table word " + format_word(w, alphabet_size) + " must have length " +
                                                std::to_string(width));
      for (Letter a : w)
        if (a < 0 || a >= alphabet_size) throw Error(ErrorCode::AlphabetError, "table letter outside alphabet");
      f.dense_[f.encode(w.data())] = v;
      spec += (first ? "" : (alphabet_size > 10 ? ";" : ",")) + format_word(w, alphabet_size) + "=" + format_double(v);
      first = false;
    }
    f.spec_ = spec;
    return f;
  }

  static Potential geometric(double a, double lambda, int alphabet_size) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::InvalidSpec, "decay rate must lie in (0, 1)");
    Potential f(Kind::Geometric, alphabet_size, "decay:geom:" + format_double(a) + "," + format_double(lambda));
    f.amplitude_ = a;
    f.lambda_ = lambda;
    return f;
  }

  Potential scaled(double s) const {
    Potential f = *this;
    f.scale_ *= s;
    f.offset_ *= s;
    f.spec_ = "scale:" + format_double(s) + ":" + spec_;
    return f;
  }

  Potential shifted(double k) const {
    Potential f = *this;
    f.offset_ += k;
    f.spec_ = "shift:" + format_double(k) + ":" + spec_;
    return f;
  }

  const std::string& spec() const { return spec_; }
  Kind kind() const { return kind_; }
  int alphabet_size() const { return b_; }
  double scale() const { return scale_; }
  double offset() const { return offset_; }

  /// f(x).
  double operator()(const FinitePoint& x) const { return at_shift(x, 0); }

  /// f(T^g x), reading x(g + m) directly.
  double at_shift(const FinitePoint& x, Coord g) const { return scale_ * base_at(x, g) + offset_; }

  /// f depends only on coordinates in [-reach_left(), reach_right()] (right reach may be unbounded).
  Coord reach_left() const {
    switch (kind_) {
      case Kind::Coordinate: return std::max<Coord>(0, -coord_);
      case Kind::Table: return static_cast<Coord>(radius_);
      default: return 0;
    }
  }

  std::optional<Coord> reach_right() const {
    switch (kind_) {
      case Kind::Coordinate: return std::max<Coord>(0, coord_);
      case Kind::Table: return static_cast<Coord>(radius_);
      case Kind::Geometric: return std::nullopt;
      default: return 0;
    }
  }

  /// Radius p of a window-local potential; nullopt when f depends on infinitely many coordinates.
  std::optional<std::size_t> local_radius() const {
    auto right = reach_right();
    if (!right) return std::nullopt;
    return static_cast<std::size_t>(std::max(reach_left(), *right));
  }

  bool is_local() const { return local_radius().has_value(); }

  /// Declared envelope V(n) >= sup{|f(x)-f(y)| : x = y on [-(n-1), n-1]}, n >= 1.
  double variation_bound(std::size_t n) const {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "variation index starts at 1");
    const double s = std::abs(scale_);
    const auto fixed = static_cast<Coord>(n - 1);
    switch (kind_) {
      case Kind::Zero: return 0.0;
      case Kind::Coordinate: return std::abs(coord_) <= fixed ? 0.0 : s * (b_ - 1);
      case Kind::Table: {
        if (static_cast<Coord>(radius_) <= fixed) return 0.0;
        auto [lo, hi] = table_range();
        return s * (hi - lo);
      }
      case Kind::Geometric:
        return s * std::abs(amplitude_) * (b_ - 1) * std::pow(lambda_, static_cast<double>(n)) / (1.0 - lambda_);
    }
    return 0.0;
  }

  /// 2 * sum_{n > depth} V(n): bound on the Birkhoff-difference terms cut at distance depth.
  double tail_bound(std::size_t depth) const {
    if (kind_ == Kind::Geometric) {
      const double s = std::abs(scale_ * amplitude_) * (b_ - 1);
      return 2.0 * s * std::pow(lambda_, static_cast<double>(depth + 1)) / ((1.0 - lambda_) * (1.0 - lambda_));
    }
    double total = 0.0;
    auto p = local_radius().value_or(0);
    for (std::size_t n = depth + 1; n <= p; ++n) total += variation_bound(n);
    return 2.0 * total;
  }

  /// sup |f|.
  double sup_norm() const {
    auto candidate = [&](double base) { return std::abs(scale_ * base + offset_); };
    switch (kind_) {
      case Kind::Zero: return std::abs(offset_);
      case Kind::Coordinate: return std::max(candidate(0), candidate(b_ - 1));
      case Kind::Table: {
        auto [lo, hi] = table_range();
        return std::max(candidate(lo), candidate(hi));
      }
      case Kind::Geometric: {
        double top = amplitude_ * (b_ - 1) / (1.0 - lambda_);
        return std::max(candidate(0), candidate(top));
      }
    }
    return 0.0;
  }

  /// Birkhoff sums over zero-padded words split into per-site terms:
  /// sum_{j in L} f(T^j wbar) = sum_i site_term(i, letters of wbar on [i - r, i + r]),
  /// i = 0..|L|-1 indexing the word, r = site_radius().
  std::size_t site_radius() const {
    switch (kind_) {
      case Kind::Coordinate: return static_cast<std::size_t>(std::abs(coord_));
      case Kind::Table: return radius_;
      default: return 0;
    }
  }

  double site_term(std::size_t i, std::span<const Letter> window) const {
    const std::size_t r = site_radius();
    double base = 0.0;
    switch (kind_) {
      case Kind::Zero: break;
      case Kind::Coordinate: base = window[static_cast<std::size_t>(static_cast<Coord>(r) + coord_)]; break;
      case Kind::Table: base = dense_[encode(window.data())]; break;
      case Kind::Geometric:
        // coefficient of w(i) in sum_{j <= i} a lambda^(i-j)
        base = amplitude_ * (1.0 - std::pow(lambda_, static_cast<double>(i + 1))) / (1.0 - lambda_) * window[0];
        break;
    }
    return scale_ * base + offset_;
  }

 private:
  Potential(Kind kind, int b, std::string spec) : kind_(kind), b_(b), spec_(std::move(spec)) {}

  static std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }

  static double parse_double(const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidSpec, "not a number: '" + s + "'");
    }
  }

  static Potential parse_inner(const std::string& s, int b) {
    auto starts = [&](const char* prefix) { return s.rfind(prefix, 0) == 0; };
    if (s == "zero") return zero(b);
    if (starts("const:")) return constant(parse_double(s.substr(6)), b);
    if (starts("coord:")) {
      try {
        std::size_t used = 0;
        long long j = std::stoll(s.substr(6), &used);
        if (used != s.size() - 6) throw std::invalid_argument(s);
        return coordinate(j, b);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, "bad coordinate in '" + s + "'");
      }
    }
    if (starts("decay:geom:")) {
      std::string body = s.substr(11);
      auto comma = body.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::InvalidSpec, "decay:geom needs '<a>,<lambda>'");
      return geometric(parse_double(body.substr(0, comma)), parse_double(body.substr(comma + 1)), b);
    }
    if (starts("table:p=")) {
      std::string body = s.substr(8);
      auto colon = body.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::InvalidSpec, "table needs 'p=<radius>:<entries>'");
      std::size_t radius = 0;
      try {
        radius = static_cast<std::size_t>(std::stoul(body.substr(0, colon)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, "bad table radius in '" + s + "'");
      }
      std::string entries = body.substr(colon + 1);
      char sep = entries.find(';') != std::string::npos ? ';' : ',';
      if (b > 10) sep = ';';
      std::map<Word, double> values;
      std::stringstream ss(entries);
      std::string item;
      while (std::getline(ss, item, sep)) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidSpec, "table entry needs '<word>=<value>'");
        values[parse_word(item.substr(0, eq), b)] = parse_double(item.substr(eq + 1));
      }
      return table(radius, values, b);
    }
    for (const char* combinator : {"scale:", "shift:"}) {
      if (starts(combinator)) {
        std::string body = s.substr(6);
        auto colon = body.find(':');
        if (colon == std::string::npos) throw Error(ErrorCode::InvalidSpec, std::string(combinator) + " needs '<x>:<spec>'");
        double v = parse_double(body.substr(0, colon));
        Potential inner = parse_inner(body.substr(colon + 1), b);
        return combinator[1] == 'c' ? inner.scaled(v) : inner.shifted(v);
      }
    }
    throw Error(ErrorCode::InvalidSpec, "unknown potential '" + s + "'");
  }

  std::size_t encode(const Letter* letters) const {
    std::size_t key = 0;
    for (std::size_t i = 0; i < 2 * radius_ + 1; ++i) key = key * static_cast<std::size_t>(b_) + static_cast<std::size_t>(letters[i]);
    return key;
  }

  std::pair<double, double> table_range() const {
    double lo = 0.0;
    double hi = 0.0;
    for (double v : dense_) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }

  double base_at(const FinitePoint& x, Coord g) const {
    switch (kind_) {
      case Kind::Zero: return 0.0;
      case Kind::Coordinate: return x.at(g + coord_);
      case Kind::Table: {
        std::size_t key = 0;
        const auto r = static_cast<Coord>(radius_);
        for (Coord m = -r; m <= r; ++m) key = key * static_cast<std::size_t>(b_) + static_cast<std::size_t>(x.at(g + m));
        return dense_[key];
      }
      case Kind::Geometric: {
        const Window& s = x.support();
        Coord start = std::max(g, s.k);
        if (start > s.l) return 0.0;
        double weight = std::pow(lambda_, static_cast<double>(start - g));
        double total = 0.0;
        for (Coord i = start; i <= s.l; ++i) {
          total += weight * x.at(i);
          weight *= lambda_;
        }
        return amplitude_ * total;
      }
    }
    return 0.0;
  }

  Kind kind_;
  int b_;
  std::string spec_;
  double scale_ = 1.0;
  double offset_ = 0.0;
  Coord coord_ = 0;
  std::size_t radius_ = 0;
  std::vector<double> dense_;
  double amplitude_ = 0.0;
  double lambda_ = 0.5;
};

/// sum_{j in L} f(T^j x).
inline double birkhoff(const Potential& f, const FinitePoint& x, const Window& L) {
  double total = 0.0;
  for (Coord j = L.k; j <= L.l; ++j) total += f.at_shift(x, j);
  return total;
}

/// A finite-depth lower estimate next to the declared upper envelope.
struct Estimate {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t points = 0;
};

namespace detail {

inline void require_budget(const BetaLanguage& lang, std::size_t length, std::size_t budget) {
  if (lang.count(length) > Integer(static_cast<unsigned long>(budget)))
    throw Error(ErrorCode::BudgetExceeded, "enumeration of words of length " + std::to_string(length) +
                                               " exceeds budget " + std::to_string(budget));
}

}  // namespace detail

/// Lower bound on var_n from every admissible configuration on a finite window.
/// Exact for window-local potentials.
inline Estimate variation(const ShiftSpace& space, const Potential& f, std::size_t n,
                          std::size_t sample_budget = 1'000'000) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "variation needs n >= 1");
  const auto& lang = space.language();
  const auto fixed = static_cast<Coord>(n - 1);
  Window agree(-fixed, fixed);
  Window enumerated = agree;
  if (auto right = f.reach_right()) {
    enumerated = Window::hull(agree, Window(-f.reach_left(), *right));
  } else {
    // Only coordinates >= 0 matter; extend to the right as far as the budget allows.
    agree = Window(0, fixed);
    Coord extra = 0;
    detail::require_budget(lang, agree.length(), sample_budget);
    while (extra < 48 && lang.count(agree.length() + static_cast<std::size_t>(extra) + 1) <=
                             Integer(static_cast<unsigned long>(sample_budget)))
      ++extra;
    enumerated = agree.extended(0, extra);
  }
  detail::require_budget(lang, enumerated.length(), sample_budget);

  std::map<Word, std::pair<double, double>> range;
  Estimate est;
  lang.for_each_word(enumerated.length(), [&](const Word& w) {
    FinitePoint x(enumerated, w);
    double v = f(x);
    auto key = x.project(agree);
    auto it = range.find(key);
    if (it == range.end()) {
      range.emplace(std::move(key), std::make_pair(v, v));
    } else {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
    ++est.points;
  });
  for (const auto& [key, r] : range) est.lower = std::max(est.lower, r.second - r.first);
  est.upper = f.variation_bound(n);
  return est;
}

/// max |sum_{k in L} f(T^k x) - f(T^k y)| over pairs with equal blocks on L, tails
/// varied on L extended by depth. Exact for local f once depth >= radius.
inline Estimate bowen_defect(const ShiftSpace& space, const Potential& f, const Window& L, std::size_t depth,
                             std::size_t budget = 5'000'000) {
  const auto& lang = space.language();
  Window enumerated = L.extended(static_cast<Coord>(depth));
  detail::require_budget(lang, enumerated.length(), budget);
  std::map<Word, std::pair<double, double>> range;
  Estimate est;
  lang.for_each_word(enumerated.length(), [&](const Word& w) {
    FinitePoint x(enumerated, w);
    double v = birkhoff(f, x, L);
    auto key = x.project(L);
    auto it = range.find(key);
    if (it == range.end()) {
      range.emplace(std::move(key), std::make_pair(v, v));
    } else {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
    ++est.points;
  });
  for (const auto& [key, r] : range) est.lower = std::max(est.lower, r.second - r.first);
  est.upper = f.tail_bound(0);
  return est;
}

/// Finite-depth estimate of Delta_L(f) = sup sum_{g not in L} |f(T^g x) - f(T^g y)| over
/// pairs agreeing off L. Pairs come from configurations on L extended by `context`;
/// the sum over g is cut at |g - L| <= depth. Only finitely supported pairs are seen.
inline Estimate delta_estimate(const ShiftSpace& space, const Potential& f, const Window& L, std::size_t depth,
                               std::size_t context = 2, std::size_t budget = 2'000'000) {
  const auto& lang = space.language();
  context = std::min(context, depth);
  Window enumerated = L.extended(static_cast<Coord>(context));
  detail::require_budget(lang, enumerated.length(), budget);
  Window sum_range = L.extended(static_cast<Coord>(depth));
  std::map<Word, std::vector<FinitePoint>> classes;
  lang.for_each_word(enumerated.length(), [&](const Word& w) {
    FinitePoint x(enumerated, w);
    Word key = w;
    for (Coord i = L.k; i <= L.l; ++i) key[static_cast<std::size_t>(i - enumerated.k)] = -1;
    classes[key].push_back(std::move(x));
  });
  Estimate est;
  for (const auto& [key, members] : classes) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        double total = 0.0;
        for (Coord g = sum_range.k; g <= sum_range.l; ++g) {
          if (L.contains(g)) continue;
          total += std::abs(f.at_shift(members[a], g) - f.at_shift(members[b], g));
        }
        est.lower = std::max(est.lower, total);
        ++est.points;
      }
    }
  }
  est.upper = f.tail_bound(0);
  return est;
}

}  // namespace thermoshift
