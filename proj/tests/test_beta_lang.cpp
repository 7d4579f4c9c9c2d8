#include <gtest/gtest.h>

#include "thermoshift/beta_lang.hpp"
#include "thermoshift/oracle.hpp"

namespace ts = thermoshift;

namespace {

// Frozen from tests/oracle/oracle.py.
const ts::Word kGoldenDigits{1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
const ts::Word kFiveHalvesDigits{2, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 2, 1, 0, 0, 0, 1};
const std::vector<long> kGoldenCounts{1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
const std::vector<long> kFiveHalvesCounts{1, 3, 8, 20, 50, 125, 313, 783, 1958, 4895, 12237};

class LanguageTest : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST(Words, FormatAndParse) {
  EXPECT_EQ(ts::format_word({1, 0, 2}, 3), "102");
  EXPECT_EQ(ts::parse_word("102", 3), (ts::Word{1, 0, 2}));
  EXPECT_THROW(ts::parse_word("1x", 3), ts::Error);
  EXPECT_THROW(ts::parse_word("3", 3), ts::Error);
}

TEST(Digits, GoldenMatchesOracle) {
  auto lang = ts::BetaLanguage::parse("golden");
  EXPECT_EQ(lang.expand(20), kGoldenDigits);
  EXPECT_EQ(lang.alphabet_size(), 2);
}

TEST(Digits, FiveHalvesMatchesOracle) {
  auto lang = ts::BetaLanguage::parse("rational:5/2");
  EXPECT_EQ(lang.expand(20), kFiveHalvesDigits);
  EXPECT_EQ(lang.alphabet_size(), 3);
}

TEST(Digits, ExpandRejectsZero) {
  EXPECT_THROW(ts::BetaLanguage::parse("golden").expand(0), ts::Error);
}

TEST(Digits, SeriesIdentityBoundsTheRemainder) {
  for (const char* spec : {"golden", "rational:5/2", "rational:7/3", "poly:-1,-1,0,1@[1,2]"}) {
    auto lang = ts::BetaLanguage::parse(spec);
    const double beta = lang.beta().approx();
    const std::size_t n = 30;
    ts::Word c = lang.expand(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += c[i] * std::pow(beta, -static_cast<double>(i + 1));
    double gap = 1.0 - sum;
    EXPECT_GT(gap, -1e-12) << spec;
    EXPECT_LE(gap, std::pow(beta, -static_cast<double>(n)) + 1e-12) << spec;
  }
}

TEST(Counts, GoldenAreFibonacci) {
  auto lang = ts::BetaLanguage::parse("golden");
  for (std::size_t n = 0; n < kGoldenCounts.size(); ++n) EXPECT_EQ(lang.count(n), kGoldenCounts[n]) << n;
}

TEST(Counts, FiveHalvesMatchOracle) {
  auto lang = ts::BetaLanguage::parse("rational:5/2");
  for (std::size_t n = 0; n < kFiveHalvesCounts.size(); ++n) EXPECT_EQ(lang.count(n), kFiveHalvesCounts[n]) << n;
}

TEST(Enumerate, GoldenLengthThree) {
  auto lang = ts::BetaLanguage::parse("golden");
  std::vector<std::string> got;
  for (const auto& w : lang.enumerate(3)) got.push_back(ts::format_word(w, 2));
  EXPECT_EQ(got, (std::vector<std::string>{"000", "001", "010", "100", "101"}));
}

TEST(Enumerate, BudgetIsEnforced) {
  auto lang = ts::BetaLanguage::parse("rational:5/2");
  try {
    lang.enumerate(12, 100);
    FAIL() << "no budget error";
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::BudgetExceeded);
  }
}

TEST(Automaton, RejectsOutOfAlphabetLetters) {
  auto lang = ts::BetaLanguage::parse("golden");
  EXPECT_THROW(lang.run({0, 2}), ts::Error);
}

TEST(Automaton, GoldenStates) {
  auto lang = ts::BetaLanguage::parse("golden");
  EXPECT_EQ(lang.state_of({0, 1, 0}), 2u);
  EXPECT_EQ(lang.state_of({0, 0}), 0u);
  EXPECT_FALSE(lang.is_admissible({1, 1}));
  try {
    lang.state_of({1, 1});
    FAIL();
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::Inadmissible);
  }
}

TEST(HatMap, MultiplicityMatchesOracle) {
  EXPECT_EQ(ts::hat_multiplicity(ts::BetaLanguage::parse("golden"), 8), 3u);
  EXPECT_EQ(ts::hat_multiplicity(ts::BetaLanguage::parse("golden"), 12), 3u);
  EXPECT_EQ(ts::hat_multiplicity(ts::BetaLanguage::parse("rational:5/2"), 8), 2u);
  EXPECT_EQ(ts::hat_multiplicity(ts::BetaLanguage::parse("rational:5/2"), 12), 2u);
}

TEST(ExtendByZero, NeedsAPrefix) {
  auto lang = ts::BetaLanguage::parse("golden");
  EXPECT_EQ(lang.extend_by_zero({1, 0, 1}), (ts::Word{1, 0, 1, 0}));
  try {
    lang.extend_by_zero({0, 1});
    FAIL();
  } catch (const ts::Error& e) {
    EXPECT_EQ(e.code(), ts::ErrorCode::NotAPrefix);
  }
}

TEST_P(LanguageTest, AutomatonAgreesWithLexicographicOracle) {
  auto lang = ts::BetaLanguage::parse(GetParam());
  const std::size_t max_len = lang.alphabet_size() == 2 ? 12 : 8;
  for (std::size_t n = 1; n <= max_len; ++n) {
    ts::Integer brute = 0;
    ts::oracle::for_each_raw_word(lang.alphabet_size(), n, [&](const ts::Word& w) {
      bool expected = ts::oracle::admissible(lang, w);
      ASSERT_EQ(lang.is_admissible(w), expected) << ts::format_word(w, lang.alphabet_size());
      if (expected) {
        ++brute;
        EXPECT_EQ(lang.state_of(w), ts::oracle::suffix_state(lang, w));
      }
    });
    EXPECT_EQ(lang.count(n), brute) << n;
  }
}

TEST_P(LanguageTest, FactorialAndExtendable) {
  auto lang = ts::BetaLanguage::parse(GetParam());
  for (const auto& w : lang.enumerate(7)) {
    EXPECT_TRUE(lang.is_admissible(ts::Word(w.begin() + 1, w.end())));
    EXPECT_TRUE(lang.is_admissible(ts::Word(w.begin(), w.end() - 1)));
    ts::Word w0 = w;
    w0.push_back(0);
    EXPECT_TRUE(lang.is_admissible(w0));
    w0.insert(w0.begin(), 0);
    EXPECT_TRUE(lang.is_admissible(w0));
  }
}

TEST_P(LanguageTest, SuffixDecompositionAndHat) {
  auto lang = ts::BetaLanguage::parse(GetParam());
  const int b = lang.alphabet_size();
  for (const auto& w : lang.enumerate(8)) {
    auto split = lang.suffix_decompose(w);
    ts::Word joined = split.head;
    joined.insert(joined.end(), split.suffix.begin(), split.suffix.end());
    EXPECT_EQ(joined, w);
    EXPECT_EQ(split.suffix.size(), lang.state_of(w));
    EXPECT_TRUE(lang.is_prefix(split.suffix));
    // The hat of w is admissible, has state 0 and is concatenable with anything.
    ts::Word h = lang.hat(w);
    ASSERT_TRUE(lang.is_admissible(h)) << ts::format_word(w, b);
    EXPECT_EQ(lang.state_of(h), 0u);
    EXPECT_TRUE(lang.concatenable(h, lang.expand(5)));
    EXPECT_LE(h, w);
  }
}

TEST_P(LanguageTest, ConcatenationFollowsTheState) {
  auto lang = ts::BetaLanguage::parse(GetParam());
  auto words = lang.enumerate(4);
  for (const auto& u : words)
    for (const auto& v : words) {
      ts::Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      EXPECT_EQ(lang.concatenable(u, v), ts::oracle::admissible(lang, uv));
    }
}

TEST_P(LanguageTest, EntropyApproachesLogBeta) {
  auto lang = ts::BetaLanguage::parse(GetParam());
  auto [lo, hi] = lang.beta().log_enclosure();
  const std::size_t n = 40;
  double h = std::log(lang.count(n).get_d()) / static_cast<double>(n);
  EXPECT_NEAR(h, 0.5 * (lo + hi), 0.05);
  EXPECT_GE(lang.count(n).get_d(), std::pow(lang.beta().approx(), static_cast<double>(n)) * 0.999);
}

INSTANTIATE_TEST_SUITE_P(Betas, LanguageTest,
                         ::testing::Values("golden", "rational:5/2", "rational:7/3", "decimal:1.8",
                                           "poly:-1,-1,0,1@[1,2]"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& ch : s)
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           return s;
                         });
