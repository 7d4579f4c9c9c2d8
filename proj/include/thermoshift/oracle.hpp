#pragma once

// Reference computations kept independent of the automaton and the volume DP:
// brute-force lexicographic membership, suffix scans, and the transfer-matrix
// Markov measure of a radius <= 1 potential on a shift presented by 2-blocks.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "thermoshift/measure.hpp"
#include "thermoshift/potential.hpp"

namespace thermoshift::oracle {

/// w is admissible iff every suffix is lexicographically <= the prefix of c of equal length.
inline bool admissible(const BetaLanguage& lang, const Word& w) {
  if (w.empty()) return true;
  Word c = lang.expand(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    for (std::size_t i = 0; k + i < w.size(); ++i) {
      if (w[k + i] < c[i]) break;
      if (w[k + i] > c[i]) return false;
    }
  }
  return true;
}

/// |s(w)|: length of the longest suffix of w that is a prefix of c.
inline std::size_t suffix_state(const BetaLanguage& lang, const Word& w) {
  if (w.empty()) return 0;
  Word c = lang.expand(w.size());
  for (std::size_t m = w.size(); m > 0; --m)
    if (std::equal(w.end() - static_cast<std::ptrdiff_t>(m), w.end(), c.begin())) return m;
  return 0;
}

/// Calls visit(w) on every word of A^n, lexicographically.
template <class Visitor>
void for_each_raw_word(int alphabet_size, std::size_t n, Visitor&& visit) {
  Word w(n, 0);
  while (true) {
    visit(static_cast<const Word&>(w));
    std::size_t i = n;
    while (i > 0 && w[i - 1] == alphabet_size - 1) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

inline Integer count(const BetaLanguage& lang, std::size_t n) {
  Integer total = 0;
  for_each_raw_word(lang.alphabet_size(), n, [&](const Word& w) {
    if (admissible(lang, w)) ++total;
  });
  return total;
}

/// Stationary Markov measure on 2-block states with transitions (a,b)->(b,c) weighted
/// by exp f(abc), f read at the middle letter. It is the equilibrium measure of f when
/// the language is exactly the set of words all of whose 3-blocks are admissible.
class MarkovOracle {
 public:
  MarkovOracle(const BetaLanguage& lang, const Potential& f) : b_(lang.alphabet_size()) {
    auto p = f.local_radius();
    if (!p || *p > 1) throw Error(ErrorCode::InvalidArgument, "transfer-matrix oracle needs a radius <= 1 potential");
    for (Letter a = 0; a < b_; ++a)
      for (Letter c = 0; c < b_; ++c)
        if (admissible(lang, {a, c})) index_[{a, c}] = states_.size(), states_.push_back({a, c});
    const std::size_t s = states_.size();
    matrix_.assign(s, std::vector<double>(s, 0.0));
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        if (states_[i][1] != states_[j][0]) continue;
        Word w{states_[i][0], states_[i][1], states_[j][1]};
        if (!admissible(lang, w)) continue;
        matrix_[i][j] = std::exp(f(FinitePoint(Window(-1, 1), w)));
      }
    }
    right_ = perron(false);
    left_ = perron(true);
    double dot = 0.0;
    for (std::size_t i = 0; i < s; ++i) dot += left_[i] * right_[i];
    for (double& x : left_) x /= dot;
  }

  double eigenvalue() const { return lambda_; }
  double log_eigenvalue() const { return std::log(lambda_); }

  /// Stationary mass of the cylinder of w (|w| >= 1).
  double mass(const Word& w) const {
    if (w.empty()) return 1.0;
    if (w.size() == 1) {
      double total = 0.0;
      for (Letter a = 0; a < b_; ++a) total += mass({w[0], a});
      return total;
    }
    auto first = index_.find({w[0], w[1]});
    if (first == index_.end()) return 0.0;
    std::size_t cur = first->second;
    double value = left_[cur];
    for (std::size_t i = 2; i < w.size(); ++i) {
      auto next = index_.find({w[i - 1], w[i]});
      if (next == index_.end()) return 0.0;
      value *= matrix_[cur][next->second] / lambda_;
      cur = next->second;
    }
    return value * right_[cur];
  }

  /// Cylinder weights on a window, by walking the 2-block graph.
  CylinderMeasure measure(const Window& window) const {
    CylinderMeasure mu{window, {}};
    Word w;
    walk(window.length(), w, mu);
    return mu;
  }

  /// Number of words of length n read off the 2-block graph.
  Integer graph_count(std::size_t n) const {
    if (n == 0) return 1;
    if (n == 1) {
      std::map<Letter, bool> seen;
      for (const auto& st : states_) seen[st[0]] = true, seen[st[1]] = true;
      return static_cast<unsigned long>(seen.size());
    }
    std::vector<Integer> layer(states_.size(), 1);
    for (std::size_t t = 2; t < n; ++t) {
      std::vector<Integer> next(states_.size(), 0);
      for (std::size_t i = 0; i < states_.size(); ++i)
        for (std::size_t j = 0; j < states_.size(); ++j)
          if (matrix_[i][j] > 0.0) next[j] += layer[i];
      layer = std::move(next);
    }
    Integer total = 0;
    for (const auto& v : layer) total += v;
    return total;
  }

 private:
  std::vector<double> perron(bool transpose) {
    const std::size_t s = states_.size();
    std::vector<double> v(s, 1.0);
    double lambda = 0.0;
    for (int it = 0; it < 100000; ++it) {
      std::vector<double> next(s, 0.0);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) next[i] += (transpose ? matrix_[j][i] : matrix_[i][j]) * v[j];
      double norm = 0.0;
      for (double x : next) norm += x;
      for (double& x : next) x /= norm;
      double change = 0.0;
      for (std::size_t i = 0; i < s; ++i) change = std::max(change, std::abs(next[i] - v[i]));
      v = std::move(next);
      lambda = norm;
      if (change < 1e-16) break;
    }
    // v sums to 1, so the last normalizer is the eigenvalue.
    lambda_ = lambda;
    return v;
  }

  void walk(std::size_t n, Word& w, CylinderMeasure& mu) const {
    if (w.size() == n) {
      double m = mass(w);
      if (m > 0.0) mu.weights.emplace(w, m);
      return;
    }
    for (Letter a = 0; a < b_; ++a) {
      if (!w.empty() && !index_.count({w.back(), a})) continue;
      if (w.size() >= 2 && matrix_[index_.at({w[w.size() - 2], w.back()})][index_.at({w.back(), a})] == 0.0) continue;
      w.push_back(a);
      walk(n, w, mu);
      w.pop_back();
    }
  }

  int b_;
  std::vector<std::array<Letter, 2>> states_;
  std::map<std::array<Letter, 2>, std::size_t> index_;
  std::vector<std::vector<double>> matrix_;
  std::vector<double> left_;
  std::vector<double> right_;
  double lambda_ = 1.0;
};

}  // namespace thermoshift::oracle
