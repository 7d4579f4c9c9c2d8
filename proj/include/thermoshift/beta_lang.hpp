#pragma once

// The digit sequence c of the expansion of 1 in base beta, and the language
// of the one-sided beta-shift presented by the prefix automaton.
//
// Automaton states are prefix lengths m >= 0 of c. From state m a letter a
// goes to state 0 when a < c(m+1), to m+1 when a == c(m+1), and is rejected
// when a > c(m+1). The state reached from 0 is the length of the longest
// suffix of the word that is also a prefix of c.

#include <cstddef>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermoshift/algebra.hpp"
#include "thermoshift/error.hpp"

namespace thermoshift {

using Letter = int;
using Word = std::vector<Letter>;
using State = std::size_t;

inline constexpr std::size_t kDefaultWordBudget = 20'000'000;
inline constexpr std::size_t kZeroRunWindow = 64;

/// Digits without separators when every letter is a single decimal digit.
inline std::string format_word(const Word& w, int alphabet_size) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet_size > 10 && i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

inline Word parse_word(const std::string& text, int alphabet_size) {
  Word w;
  if (text.empty() || text == "e" || text == "eps") return w;
  bool comma = text.find(',') != std::string::npos || alphabet_size > 10;
  if (comma) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(',', start);
      std::string item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
      try {
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        w.push_back(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, "bad letter '" + item + "' in word '" + text + "'");
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw Error(ErrorCode::InvalidSpec, "bad letter in word '" + text + "'");
      w.push_back(ch - '0');
    }
  }
  for (Letter a : w)
    if (a < 0 || a >= alphabet_size)
      throw Error(ErrorCode::AlphabetError, "letter " + std::to_string(a) + " outside alphabet of size " +
                                                std::to_string(alphabet_size));
  return w;
}

/// Lazily extended, memoized digits c(1), c(2), ... with their exact remainders.
class DigitStream {
 public:
  explicit DigitStream(BetaNumber beta) : beta_(std::move(beta)), b_(beta_.alphabet_size()) {
    remainders_.push_back(beta_.one());
  }

  const BetaNumber& beta() const { return beta_; }
  int alphabet_size() const { return b_; }

  /// c(i), 1-based.
  Letter digit(std::size_t i) const {
    std::lock_guard<std::mutex> lock(mutex_);
    extend_locked(i);
    return digits_[i - 1];
  }

  Word prefix(std::size_t n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    extend_locked(n);
    return Word(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(n));
  }

  /// r_i, with r_0 = 1.
  FieldElement remainder(std::size_t i) const {
    std::lock_guard<std::mutex> lock(mutex_);
    extend_locked(i);
    return remainders_[i];
  }

  std::size_t computed() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return digits_.size();
  }

  /// Longest run of zeros among the digits computed so far.
  std::size_t longest_zero_run() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return longest_zero_run_;
  }

  /// True once some window of kZeroRunWindow consecutive digits was all zero.
  bool zero_run_warning() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return longest_zero_run_ >= kZeroRunWindow;
  }

 private:
  void extend_locked(std::size_t n) const {
    while (digits_.size() < n) {
      const FieldElement& r = remainders_.back();
      FieldElement t = beta_.times_beta(r);
      Integer c = beta_.certified_ceil(r) - 1;
      FieldElement next = t - c;
      digits_.push_back(static_cast<Letter>(c.get_si()));
      remainders_.push_back(std::move(next));
      if (digits_.back() == 0) {
        ++current_zero_run_;
        if (current_zero_run_ > longest_zero_run_) {
          longest_zero_run_ = current_zero_run_;
          if (longest_zero_run_ == kZeroRunWindow)
            std::cerr << "thermoshift: warning: " << kZeroRunWindow << " consecutive zero digits in the expansion of 1 for "
                      << beta_.spec() << " (position " << digits_.size() << ")\n";
        }
      } else {
        current_zero_run_ = 0;
      }
    }
  }

  BetaNumber beta_;
  int b_;
  mutable std::mutex mutex_;
  mutable std::vector<Letter> digits_;
  mutable std::vector<FieldElement> remainders_;
  mutable std::size_t current_zero_run_ = 0;
  mutable std::size_t longest_zero_run_ = 0;
};

struct SuffixSplit {
  Word head;    // v
  Word suffix;  // s(w), the longest suffix that is a prefix of c
};

/// Language of the beta-shift; cheap to copy (shares the digit stream).
class BetaLanguage {
 public:
  explicit BetaLanguage(BetaNumber beta) : digits_(std::make_shared<DigitStream>(std::move(beta))) {}

  static BetaLanguage parse(std::string_view beta_spec) { return BetaLanguage(BetaNumber::parse(beta_spec)); }

  const DigitStream& digits() const { return *digits_; }
  const BetaNumber& beta() const { return digits_->beta(); }
  int alphabet_size() const { return digits_->alphabet_size(); }
  Letter digit(std::size_t i) const { return digits_->digit(i); }

  /// First n digits of c.
  Word expand(std::size_t n) const {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "expand needs n >= 1");
    return digits_->prefix(n);
  }

  void check_letter(Letter a) const {
    if (a < 0 || a >= alphabet_size())
      throw Error(ErrorCode::AlphabetError, "letter " + std::to_string(a) + " outside alphabet {0,...," +
                                                std::to_string(alphabet_size() - 1) + "}");
  }

  std::optional<State> step(State m, Letter a) const {
    check_letter(a);
    Letter c = digits_->digit(m + 1);
    if (a < c) return State{0};
    if (a == c) return m + 1;
    return std::nullopt;
  }

  std::optional<State> run(const Word& w, State from = 0) const {
    State m = from;
    for (Letter a : w) {
      auto next = step(m, a);
      if (!next) return std::nullopt;
      m = *next;
    }
    return m;
  }

  bool is_admissible(const Word& w) const { return run(w).has_value(); }

  /// q(w) as a prefix length.
  State state_of(const Word& w) const {
    auto m = run(w);
    if (!m) throw Error(ErrorCode::Inadmissible, "word " + format_word(w, alphabet_size()) + " is not admissible");
    return *m;
  }

  bool is_prefix(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] != digits_->digit(i + 1)) return false;
    return true;
  }

  SuffixSplit suffix_decompose(const Word& w) const {
    State m = state_of(w);
    auto cut = static_cast<std::ptrdiff_t>(w.size() - m);
    return {Word(w.begin(), w.begin() + cut), Word(w.begin() + cut, w.end())};
  }

  /// Decrements the last nonzero letter of s(w); fixed point when s(w) is empty.
  Word hat(const Word& w) const {
    State m = state_of(w);
    Word out = w;
    if (m == 0) return out;
    for (std::size_t i = w.size(); i-- > w.size() - m;) {
      if (out[i] != 0) {
        --out[i];
        break;
      }
    }
    return out;
  }

  /// Length of the zero run in c right after the prefix s(w); 0 when s(w) is empty.
  std::size_t z_value(const Word& w) const {
    State m = state_of(w);
    if (m == 0) return 0;
    std::size_t p = 0;
    while (digits_->digit(m + p + 1) == 0) ++p;
    return p;
  }

  bool concatenable(const Word& w, const Word& w2) const { return run(w2, state_of(w)).has_value(); }

  Word extend_by_zero(const Word& u) const {
    if (!is_prefix(u))
      throw Error(ErrorCode::NotAPrefix, format_word(u, alphabet_size()) + " is not a prefix of the expansion of 1");
    Word out = u;
    out.push_back(0);
    return out;
  }

  /// All admissible words of length n in lexicographic order.
  std::vector<Word> enumerate(std::size_t n, std::size_t budget = kDefaultWordBudget) const {
    std::vector<Word> out;
    Word current;
    current.reserve(n);
    enumerate_from(0, n, budget, current, out);
    return out;
  }

  /// Visits every admissible word of length n (lexicographic) without storing them.
  template <class Visitor>
  void for_each_word(std::size_t n, Visitor&& visit, std::size_t budget = kDefaultWordBudget) const {
    Word current;
    current.reserve(n);
    std::size_t visited = 0;
    walk(0, n, budget, current, visited, visit);
  }

  /// |L_n| by dynamic programming over automaton states.
  Integer count(std::size_t n) const {
    std::map<State, Integer> layer{{0, Integer(1)}};
    for (std::size_t t = 0; t < n; ++t) {
      std::map<State, Integer> next;
      for (const auto& [m, ways] : layer) {
        Letter c = digits_->digit(m + 1);
        // letters below c(m+1) reset, c(m+1) advances
        if (c > 0) next[0] += ways * c;
        next[m + 1] += ways;
      }
      layer = std::move(next);
    }
    Integer total = 0;
    for (const auto& [m, ways] : layer) total += ways;
    return total;
  }

 private:
  void enumerate_from(State m, std::size_t n, std::size_t budget, Word& current, std::vector<Word>& out) const {
    std::size_t visited = 0;
    walk(m, n, budget, current, visited, [&](const Word& w) { out.push_back(w); });
  }

  template <class Visitor>
  void walk(State m, std::size_t n, std::size_t budget, Word& current, std::size_t& visited, Visitor&& visit) const {
    if (current.size() == n) {
      if (++visited > budget)
        throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget) + " words of length " +
                                                   std::to_string(n));
      visit(static_cast<const Word&>(current));
      return;
    }
    Letter c = digits_->digit(m + 1);
    for (Letter a = 0; a <= c; ++a) {
      current.push_back(a);
      walk(a < c ? State{0} : m + 1, n, budget, current, visited, visit);
      current.pop_back();
    }
  }

  std::shared_ptr<DigitStream> digits_;
};

/// Largest preimage multiplicity of w -> hat(w) over L_n.
inline std::size_t hat_multiplicity(const BetaLanguage& lang, std::size_t n) {
  std::map<Word, std::size_t> preimages;
  std::size_t worst = 0;
  lang.for_each_word(n, [&](const Word& w) { worst = std::max(worst, ++preimages[lang.hat(w)]); });
  return worst;
}

}  // namespace thermoshift
