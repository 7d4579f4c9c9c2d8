#pragma once

// The acceptance suite: eleven numbered criteria over a primary system
// (default: golden mean) and a secondary system (default: 5/2).

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thermoshift/conformal.hpp"
#include "thermoshift/oracle.hpp"
#include "thermoshift/thermo.hpp"

namespace thermoshift::verify {

struct Config {
  std::string primary = "golden";
  std::string secondary = "rational:5/2";
  std::uint64_t seed = 20240611;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  std::string note;
  std::vector<Metric> metrics;
  double seconds = 0.0;
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  /// Records a named check; returns ok.
  bool check(bool ok, const std::string& what) {
    if (!ok) {
      if (!r_.detail.empty()) r_.detail += "; ";
      r_.detail += "failed: " + what;
      failed_ = true;
    }
    return ok;
  }

  void metric(const std::string& name, double v) { r_.metrics.push_back({name, v}); }
  void note(const std::string& text) { r_.note += (r_.note.empty() ? "" : "; ") + text; }
  bool ok() const { return !failed_; }

 private:
  CriterionResult& r_;
  bool failed_ = false;
};

inline CriterionResult start(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

inline bool same_number(const BetaNumber& a, const BetaNumber& b) {
  if (!(a.modulus().monic() == b.modulus().monic())) return false;
  Interval x = a.enclosure();
  Interval y = b.enclosure();
  return !(x.hi < y.lo || y.hi < x.lo);
}

inline std::size_t word_limit(const BetaLanguage& lang, std::size_t wanted, double raw_budget = 2e6) {
  std::size_t n = wanted;
  while (n > 1 && std::pow(static_cast<double>(lang.alphabet_size()), static_cast<double>(n)) > raw_budget) --n;
  return n;
}

inline double log_beta(const BetaNumber& beta) {
  auto [lo, hi] = beta.log_enclosure();
  return 0.5 * (lo + hi);
}

/// Uniform choice among the admissible words of a given length.
class WordSampler {
 public:
  explicit WordSampler(const BetaLanguage& lang) : lang_(lang) {}

  Word draw(std::size_t n, std::mt19937_64& rng) {
    auto it = words_.find(n);
    if (it == words_.end()) it = words_.emplace(n, lang_.enumerate(n)).first;
    std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
    return it->second[pick(rng)];
  }

 private:
  BetaLanguage lang_;
  std::map<std::size_t, std::vector<Word>> words_;
};

/// True when the 2-block graph reproduces the word counts up to length n_max.
inline bool two_block_presented(const BetaLanguage& lang, std::size_t n_max = 12) {
  oracle::MarkovOracle graph(lang, Potential::zero(lang.alphabet_size()));
  for (std::size_t n = 1; n <= n_max; ++n)
    if (graph.graph_count(n) != lang.count(n)) return false;
  return true;
}

/// Radius-1 table potential: the fixed binary table, or deterministic values on larger alphabets.
inline Potential oracle_table(int alphabet_size);

inline Coord random_coord(Coord lo, Coord hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<Coord>(lo, hi)(rng);
}

}  // namespace detail

/// 1: digit expansion of 1.
inline CriterionResult digits(const Config& cfg) {
  CriterionResult r = detail::start(1, "beta-expansion digits");
  detail::Recorder rec(r);
  auto primary = BetaLanguage::parse(cfg.primary);
  auto secondary = BetaLanguage::parse(cfg.secondary);
  for (const auto* lang : {&primary, &secondary}) {
    // 0 < 1 - sum_{i<=N} c_i beta^-i <= beta^-N
    Word c = lang->expand(20);
    double beta = lang->beta().approx();
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * std::pow(beta, -static_cast<double>(i + 1));
    double gap = 1.0 - sum;
    rec.check(gap > -1e-12 && gap <= std::pow(beta, -20.0) + 1e-12, "digit series of " + lang->beta().spec());
  }
  auto golden = BetaNumber::parse("golden");
  auto five_halves = BetaNumber::parse("rational:5/2");
  for (const auto* lang : {&primary, &secondary}) {
    if (detail::same_number(lang->beta(), golden)) {
      Word want;
      for (int i = 0; i < 10; ++i) want.insert(want.end(), {1, 0});
      rec.check(lang->expand(20) == want, "golden digits (1,0)^10");
    }
    if (detail::same_number(lang->beta(), five_halves))
      rec.check(lang->expand(6) == Word{2, 1, 0, 1, 1, 1}, "5/2 digits 2,1,0,1,1,1");
  }
  return r;
}

/// 2: automaton membership against the brute-force lexicographic test.
inline CriterionResult language_oracle(const Config& cfg) {
  CriterionResult r = detail::start(2, "automaton vs lexicographic oracle");
  detail::Recorder rec(r);
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto lang = BetaLanguage::parse(spec);
    std::size_t limit = detail::word_limit(lang, 12);
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    for (std::size_t n = 1; n <= limit; ++n) {
      oracle::for_each_raw_word(lang.alphabet_size(), n, [&](const Word& w) {
        ++checked;
        auto state = lang.run(w);
        bool brute = oracle::admissible(lang, w);
        if (state.has_value() != brute || (brute && *state != oracle::suffix_state(lang, w))) ++mismatches;
      });
    }
    rec.metric(spec + " words", static_cast<double>(checked));
    rec.metric(spec + " max length", static_cast<double>(limit));
    rec.check(mismatches == 0, std::to_string(mismatches) + " mismatches for " + spec);
  }
  return r;
}

/// 3: prefix and suffix properties of the language up to length 12.
inline CriterionResult language_properties(const Config& cfg) {
  CriterionResult r = detail::start(3, "suffix-prefix properties");
  detail::Recorder rec(r);
  constexpr std::size_t kMax = 12;
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto lang = BetaLanguage::parse(spec);
    std::vector<Word> prefixes;
    for (std::size_t m = 0; m <= kMax; ++m) prefixes.push_back(m == 0 ? Word{} : lang.expand(m));

    bool prefix_closed = true;
    for (std::size_t i = 0; i <= kMax; ++i)
      for (std::size_t j = 0; i + j <= kMax; ++j) {
        Word ab = prefixes[i];
        ab.insert(ab.end(), prefixes[j].begin(), prefixes[j].end());
        if (lang.is_admissible(ab) && !lang.is_prefix(ab)) prefix_closed = false;
      }
    rec.check(prefix_closed, "admissible prefix concatenations are prefixes for " + spec);

    bool hat_state_zero = true, state_agrees = true, z_monotone = true;
    std::vector<std::size_t> multiplicity;
    for (std::size_t n = 1; n <= kMax; ++n) {
      std::map<Word, std::size_t> preimages;
      std::size_t worst = 0;
      lang.for_each_word(n, [&](const Word& w) {
        State q = lang.state_of(w);
        std::size_t s = oracle::suffix_state(lang, w);
        if ((q != 0) != (s != 0)) state_agrees = false;
        Word h = lang.hat(w);
        if (lang.state_of(h) != 0) hat_state_zero = false;
        worst = std::max(worst, ++preimages[h]);
        std::size_t z = lang.z_value(w);
        for (std::size_t m = 1; m + n <= kMax; ++m) {
          Word uw = prefixes[m];
          uw.insert(uw.end(), w.begin(), w.end());
          if (lang.is_admissible(uw) && lang.z_value(uw) < z) z_monotone = false;
        }
      });
      multiplicity.push_back(worst);
    }
    rec.check(hat_state_zero, "hat words have state 0 for " + spec);
    rec.check(state_agrees, "automaton state agrees with suffix scan for " + spec);
    rec.check(z_monotone, "z-value does not drop under prefix extension for " + spec);
    std::size_t q = *std::max_element(multiplicity.begin(), multiplicity.end());
    rec.metric(spec + " hat multiplicity", static_cast<double>(q));
    rec.check(multiplicity[kMax - 1] == multiplicity[kMax - 2] && multiplicity[kMax - 1] == q,
              "hat multiplicity is bounded for " + spec);

    bool zero_extension = true;
    for (std::size_t m = 1; m <= kMax; ++m) zero_extension = zero_extension && lang.is_admissible(lang.extend_by_zero(prefixes[m]));
    rec.check(zero_extension, "prefix followed by 0 is admissible for " + spec);
  }
  return r;
}

/// 4: word counts and pressure of the zero potential.
inline CriterionResult entropy(const Config& cfg) {
  CriterionResult r = detail::start(4, "entropy and word counts");
  detail::Recorder rec(r);
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto space = ShiftSpace::parse(spec);
    const auto& lang = space.language();
    double p12 = pressure_estimate(space, Potential::zero(lang.alphabet_size()), 12).values.back();
    double target = detail::log_beta(lang.beta());
    rec.metric(spec + " P_12", p12);
    rec.metric(spec + " log beta", target);
    rec.check(std::abs(p12 - target) <= 0.02, "pressure within 0.02 of log beta for " + spec);
    std::size_t limit = detail::word_limit(lang, 14, 4e6);
    for (std::size_t n = 0; n <= limit; ++n)
      if (n >= 1) rec.check(lang.count(n) == oracle::count(lang, n), "count(" + std::to_string(n) + ") for " + spec);
    if (detail::same_number(lang.beta(), BetaNumber::parse("golden"))) {
      Integer a = 1, b = 2;  // F_2, F_3
      for (std::size_t n = 0; n <= 14; ++n) {
        rec.check(lang.count(n) == a, "Fibonacci count at n=" + std::to_string(n));
        Integer c = a + b;
        a = b;
        b = c;
      }
    }
  }
  return r;
}

inline std::vector<std::string> kernel_potentials() { return {"zero", "coord:0", "decay:geom:1,0.5"}; }

/// 5: kernel normalization, class invariance and consistency.
inline CriterionResult kernel_laws(const Config& cfg) {
  CriterionResult r = detail::start(5, "kernel laws");
  detail::Recorder rec(r);
  double worst_norm = 0.0, worst_invariance = 0.0, worst_consistency = 0.0;
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto space = ShiftSpace::parse(spec);
    for (const auto& fspec : kernel_potentials()) {
      auto f = Potential::parse(fspec, space.alphabet_size());
      TailOptions opts{minimal_tail_depth(f, 1e-12), kDefaultTailTolerance};
      for (Coord len = 1; len <= 6; ++len) {
        Window l2(0, len - 1);
        Window frame = l2.extended(1);
        auto points = space.points_on(frame);
        std::set<Word> classes;
        for (const auto& x : points) {
          if (!classes.insert(thermoshift::detail::class_key(x, frame, l2)).second) continue;
          KernelRow row = kernel_row(space, f, x, l2, opts);
          double sum = 0.0;
          for (double w : row.weights) sum += w;
          worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
          std::vector<std::size_t> probes{0, row.support.size() - 1, row.support.size() / 2};
          for (std::size_t i : probes) {
            KernelRow other = kernel_row(space, f, row.support[i], l2, opts);
            if (other.support != row.support) {
              worst_invariance = std::max(worst_invariance, 1.0);
              continue;
            }
            for (std::size_t j = 0; j < row.weights.size(); ++j)
              worst_invariance = std::max(worst_invariance, std::abs(other.weights[j] - row.weights[j]));
          }
        }
        PointFunction phi = [](const FinitePoint& y) { return y.at(0) + 0.5 * y.at(1) - 0.25 * y.at(-1); };
        for (Coord k = l2.k; k <= l2.l; ++k)
          for (Coord l = k; l <= l2.l; ++l)
            worst_consistency =
                std::max(worst_consistency, consistency_check(space, f, phi, Window(k, l), l2, points, opts));
      }
    }
  }
  r.metrics = {{"max |sum - 1|", worst_norm},
               {"max class deviation", worst_invariance},
               {"max consistency residual", worst_consistency}};
  rec.check(worst_norm <= 1e-12, "row normalization");
  rec.check(worst_invariance <= 1e-12, "row class invariance");
  rec.check(worst_consistency <= 1e-9, "consistency residual");
  return r;
}

/// 6: involution, cocycle additivity, kernel/cocycle compatibility.
inline CriterionResult involution_laws(const Config& cfg) {
  CriterionResult r = detail::start(6, "involution and cocycle laws");
  detail::Recorder rec(r);
  std::mt19937_64 rng(cfg.seed);
  std::size_t involution_failures = 0;
  double worst_additivity_excess = 0.0;
  double worst_kernel_gap = 0.0;
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto space = ShiftSpace::parse(spec);
    const auto& lang = space.language();
    detail::WordSampler sample(lang);
    for (int trial = 0; trial < 10000; ++trial) {
      std::size_t len = static_cast<std::size_t>(detail::random_coord(1, 8, rng));
      Coord start = detail::random_coord(-5, 3, rng);
      FinitePoint x(Window(start, start + static_cast<Coord>(len) - 1), sample.draw(len, rng));
      std::size_t wl = static_cast<std::size_t>(detail::random_coord(1, 3, rng));
      Coord lk = detail::random_coord(-3, 2, rng);
      Window L(lk, lk + static_cast<Coord>(wl) - 1);
      Involution phi(L, sample.draw(wl, rng), sample.draw(wl, rng));
      if (detail::random_coord(0, 1, rng) == 1) {
        FinitePoint moved = x.with_block(L, phi.u);
        if (space.contains(moved)) x = moved;
      }
      FinitePoint y = apply_involution(space, phi, x);
      if (!(apply_involution(space, phi, y) == x)) ++involution_failures;
    }
    for (const auto& fspec : {"coord:0", "decay:geom:1,0.5", "table:p=1:010=0.7,101=-0.4,001=0.2,100=0.1"}) {
      if (lang.alphabet_size() != 2 && std::string(fspec).rfind("table", 0) == 0) continue;
      auto f = Potential::parse(fspec, lang.alphabet_size());
      TailOptions opts{minimal_tail_depth(f, 1e-12), kDefaultTailTolerance};
      for (int trial = 0; trial < 300; ++trial) {
        std::size_t len = static_cast<std::size_t>(detail::random_coord(2, 8, rng));
        Window w(0, static_cast<Coord>(len) - 1);
        FinitePoint x(w, sample.draw(len, rng));
        Coord k = detail::random_coord(0, static_cast<Coord>(len) - 1, rng);
        Coord l = detail::random_coord(k, std::min<Coord>(k + 2, static_cast<Coord>(len) - 1), rng);
        Window L(k, l);
        auto set = space.conjugacy_set(x, L);
        std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
        const FinitePoint& y = set[pick(rng)];
        const FinitePoint& z = set[pick(rng)];
        auto xy = cocycle(f, x, y, opts);
        auto yz = cocycle(f, y, z, opts);
        auto xz = cocycle(f, x, z, opts);
        double slack = 2.0 * std::max({xy.slack, yz.slack, xz.slack});
        double gap = std::abs(xy.value + yz.value - xz.value);
        worst_additivity_excess = std::max(worst_additivity_excess, gap - slack - 1e-12);
        KernelRow row = kernel_row(space, f, x, L, opts);
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        double lhs = row.log_weights[i] - row.log_weights[j];
        double rhs = cocycle(f, row.support[j], row.support[i], opts).value;
        worst_kernel_gap = std::max(worst_kernel_gap, std::abs(lhs - rhs));
      }
    }
  }
  r.metrics = {{"involution failures", static_cast<double>(involution_failures)},
               {"max additivity excess", worst_additivity_excess},
               {"max kernel/cocycle gap", worst_kernel_gap}};
  rec.check(involution_failures == 0, "involution squares to identity");
  rec.check(worst_additivity_excess <= 0.0, "cocycle additivity");
  rec.check(worst_kernel_gap <= 1e-9, "kernel log-ratio equals cocycle");
  return r;
}

inline const char* kOracleTable = "table:p=1:000=0.3,001=-0.2,010=0.7,100=0.1,101=-0.4";

inline Potential detail::oracle_table(int alphabet_size) {
  if (alphabet_size == 2) return Potential::parse(kOracleTable, 2);
  std::map<Word, double> values;
  std::size_t index = 0;
  oracle::for_each_raw_word(alphabet_size, 3, [&](const Word& w) { values[w] = 0.5 * std::sin(static_cast<double>(++index)); });
  return Potential::table(1, values, alphabet_size);
}

/// 7: the transfer-matrix equilibrium measure is conformal.
inline CriterionResult oracle_conformality(const Config& cfg) {
  CriterionResult r = detail::start(7, "conformality of the transfer-matrix measure");
  detail::Recorder rec(r);
  auto space = ShiftSpace::parse(cfg.primary);
  const auto& lang = space.language();
  if (!detail::two_block_presented(lang)) {
    rec.note("not applicable: language is not presented by its 2-blocks");
    return r;
  }
  auto f = detail::oracle_table(lang.alphabet_size());
  oracle::MarkovOracle markov(lang, f);
  std::mt19937_64 rng(cfg.seed + 7);
  detail::WordSampler sample(lang);
  constexpr std::size_t kDepth = 8;
  double worst = 0.0;
  int done = 0;
  while (done < 20) {
    std::size_t wl = static_cast<std::size_t>(detail::random_coord(1, 3, rng));
    Coord k = detail::random_coord(-2, 1, rng);
    Window L(k, k + static_cast<Coord>(wl) - 1);
    Word u = sample.draw(wl, rng);
    Word v = sample.draw(wl, rng);
    if (u == v) continue;
    Involution phi(L, u, v);
    auto mu = markov.measure(L.extended(kDepth));
    auto rep = conformality_residual(space, f, mu, phi, kDepth);
    worst = std::max(worst, rep.residual - rep.slack);
    ++done;
  }
  rec.metric("max residual - slack", worst);
  rec.check(worst <= 1e-6, "residual within 1e-6 + slack");
  return r;
}

/// Involutions whose blocks differ only at coordinate 0: the swapped letter stays inside
/// every shifted volume, so the Cesaro boundary term vanishes.
inline std::vector<Involution> centred_involutions(const BetaLanguage& lang) {
  std::vector<Involution> out;
  for (Coord len = 1; len <= 4; ++len)
    for (Coord k = -len + 1; k <= 0; ++k) {
      Window L(k, k + len - 1);
      auto words = lang.enumerate(static_cast<std::size_t>(len));
      for (const auto& u : words)
        for (const auto& v : words) {
          if (!(u < v)) continue;
          bool only_zero = true;
          for (Coord i = L.k; i <= L.l; ++i)
            if (u[static_cast<std::size_t>(i - L.k)] != v[static_cast<std::size_t>(i - L.k)] && i != 0) only_zero = false;
          if (only_zero) out.emplace_back(L, u, v);
        }
    }
  return out;
}

/// Off-centre involutions whose swap reaches the volume boundary under some shifts.
inline std::vector<Involution> boundary_involutions() {
  return {Involution(Window(0, 1), {0, 1}, {1, 0}), Involution(Window(-1, 1), {0, 0, 0}, {0, 0, 1}),
          Involution(Window(1, 1), {0}, {1}), Involution(Window(-2, 0), {0, 0, 1}, {1, 0, 0})};
}

/// 8: Cesaro approximants of an equilibrium measure are nearly conformal.
inline CriterionResult cesaro_conformality(const Config& cfg) {
  CriterionResult r = detail::start(8, "conformality of Cesaro approximants");
  detail::Recorder rec(r);
  auto space = ShiftSpace::parse(cfg.primary);
  const auto& lang = space.language();
  auto f = Potential::parse("coord:0", lang.alphabet_size());
  std::size_t kDepth = 8;
  while (kDepth > 2 && lang.count(4 + 2 * kDepth) > 200000) --kDepth;
  rec.metric("depth", static_cast<double>(kDepth));
  const std::vector<std::size_t> volumes{6, 9, 12};

  auto pool = centred_involutions(lang);
  std::mt19937_64 rng(cfg.seed + 8);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > 10) pool.erase(pool.begin() + 10, pool.end());
  rec.check(pool.size() == 10, "ten centred involutions available");

  auto residuals = [&](const Involution& phi) {
    std::vector<double> out;
    for (std::size_t n : volumes) {
      auto nu = cesaro_equilibrium(space, f, n, phi.window.extended(kDepth));
      auto rep = conformality_residual(space, f, nu, phi, kDepth);
      out.push_back(std::max(0.0, rep.residual - rep.slack));
    }
    return out;
  };

  double worst_final = 0.0;
  bool monotone = true;
  for (const auto& phi : pool) {
    auto res = residuals(phi);
    worst_final = std::max(worst_final, res.back());
    for (std::size_t i = 1; i < res.size(); ++i) monotone = monotone && res[i] <= res[i - 1] + 1e-12;
  }
  rec.metric("max residual at n=12", worst_final);
  rec.check(worst_final <= 0.02, "residual <= 0.02 at n=12");
  if (detail::two_block_presented(lang))
    rec.check(monotone, "residuals non-increasing over n = 6, 9, 12");
  else
    rec.note(monotone ? "residuals non-increasing" : "residuals plateau at the context-truncation error");

  if (lang.alphabet_size() == 2) {
    bool strict = true;
    int idx = 0;
    for (const auto& phi : boundary_involutions()) {
      auto res = residuals(phi);
      for (std::size_t i = 0; i < res.size(); ++i)
        rec.metric("boundary " + std::to_string(idx) + " n=" + std::to_string(volumes[i]), res[i]);
      for (std::size_t i = 1; i < res.size(); ++i) strict = strict && res[i] < res[i - 1];
      ++idx;
    }
    rec.check(strict, "boundary residuals strictly decreasing");
  }
  return r;
}

/// 9: prefix decay of the uniform measures.
inline CriterionResult decay(const Config& cfg) {
  CriterionResult r = detail::start(9, "prefix decay");
  detail::Recorder rec(r);
  bool first = true;
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto space = ShiftSpace::parse(spec);
    auto d = prefix_decay(space, Potential::zero(space.alphabet_size()), 14);
    rec.metric(spec + " kappa", d.kappa);
    rec.check(d.kappa > 0.0, "kappa > 0 for " + spec);
    if (first) rec.check(std::abs(d.kappa - detail::log_beta(space.language().beta())) <= 0.05, "kappa near log beta");
    first = false;
  }
  return r;
}

/// 10: equilibrium margin.
inline CriterionResult margin(const Config& cfg) {
  CriterionResult r = detail::start(10, "equilibrium margin");
  detail::Recorder rec(r);
  for (const auto& spec : {cfg.primary, cfg.secondary}) {
    auto space = ShiftSpace::parse(spec);
    for (const auto& fspec : {"zero", "scale:-1:coord:0", "decay:geom:1,0.5"}) {
      auto m = margin_check(space, Potential::parse(fspec, space.alphabet_size()), 12);
      rec.metric(spec + " " + fspec, m.margin);
      rec.check(m.margin > 0.0, std::string("margin for ") + fspec + " on " + spec);
    }
  }
  return r;
}

/// 11: weak-dependence probe.
inline CriterionResult probe(const Config& cfg) {
  CriterionResult r = detail::start(11, "weak-dependence probe");
  detail::Recorder rec(r);
  auto space = ShiftSpace::parse(cfg.primary);
  auto a = weak_dependence_probe(space, Window(0, 0), 2, 3);
  auto b = weak_dependence_probe(space, Window(0, 0), 2, 3);
  if (detail::two_block_presented(space.language())) {
    rec.check(a.witness && *a.witness == Window(-1, 1), "witness [-1,1]");
  } else {
    rec.metric("witness found", a.witness ? 1.0 : 0.0);
    rec.note(a.witness ? "witness " + to_string(*a.witness) : "violation at every tested radius");
  }
  bool same = a.witness == b.witness && a.tried.size() == b.tried.size();
  for (std::size_t i = 0; same && i < a.tried.size(); ++i)
    same = a.tried[i].points == b.tried[i].points && a.tried[i].collars == b.tried[i].collars &&
           a.tried[i].violated == b.tried[i].violated;
  rec.check(same, "verdict reproducible");
  return r;
}

using Criterion = std::function<CriterionResult(const Config&)>;

struct NamedCriterion {
  int id;
  std::string title;
  Criterion run;
};

inline std::vector<NamedCriterion> all_criteria() {
  return {{1, "beta-expansion digits", digits},
          {2, "automaton vs lexicographic oracle", language_oracle},
          {3, "suffix-prefix properties", language_properties},
          {4, "entropy and word counts", entropy},
          {5, "kernel laws", kernel_laws},
          {6, "involution and cocycle laws", involution_laws},
          {7, "conformality of the transfer-matrix measure", oracle_conformality},
          {8, "conformality of Cesaro approximants", cesaro_conformality},
          {9, "prefix decay", decay},
          {10, "equilibrium margin", margin},
          {11, "weak-dependence probe", probe}};
}

/// Runs one criterion, timing it and turning library errors into a failure.
inline CriterionResult run(const NamedCriterion& c, const Config& cfg) {
  auto start = std::chrono::steady_clock::now();
  CriterionResult r = detail::start(c.id, c.title);
  try {
    r = c.run(cfg);
    r.passed = r.detail.empty();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = c.id;
  r.title = c.title;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title;
  os.precision(3);
  os << " (" << std::fixed << r.seconds << " s)";
  if (!r.detail.empty()) os << " -- " << r.detail;
  else if (!r.note.empty()) os << " -- " << r.note;
  return os.str();
}

}  // namespace thermoshift::verify
