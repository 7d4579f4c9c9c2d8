#include <gtest/gtest.h>

#include <cmath>

#include "thermoshift/algebra.hpp"

namespace ts = thermoshift;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

ts::ErrorCode code_of(const std::string& spec) {
  try {
    ts::BetaNumber::parse(spec);
  } catch (const ts::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << spec << " parsed";
  return ts::ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(ts::parse_rational("5/2"), ts::Rational(5, 2));
  EXPECT_EQ(ts::parse_rational("1.25"), ts::Rational(5, 4));
  EXPECT_EQ(ts::parse_rational("-3"), ts::Rational(-3));
  EXPECT_THROW(ts::parse_rational("abc"), ts::Error);
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(ts::floor_of(ts::Rational(5, 2)), 2);
  EXPECT_EQ(ts::ceil_of(ts::Rational(5, 2)), 3);
  EXPECT_EQ(ts::floor_of(ts::Rational(-5, 2)), -3);
  EXPECT_EQ(ts::ceil_of(ts::Rational(4)), 4);
}

TEST(Polynomial, EvaluationDerivativeAndDivision) {
  ts::Polynomial p({ts::Rational(-1), ts::Rational(-1), ts::Rational(1)});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(ts::Rational(2)), ts::Rational(1));
  EXPECT_EQ(p.derivative(), ts::Polynomial({ts::Rational(-1), ts::Rational(2)}));
  auto [q, r] = ts::Polynomial::divmod(p, ts::Polynomial({ts::Rational(-2), ts::Rational(1)}));
  EXPECT_EQ(q, ts::Polynomial({ts::Rational(1), ts::Rational(1)}));
  EXPECT_EQ(r, ts::Polynomial({ts::Rational(1)}));
}

TEST(Polynomial, SturmCountsRoots) {
  ts::Polynomial p({ts::Rational(-1), ts::Rational(-1), ts::Rational(1)});
  EXPECT_EQ(ts::count_distinct_roots(p, ts::Rational(1), ts::Rational(2)), 1);
  EXPECT_EQ(ts::count_distinct_roots(p, ts::Rational(-1), ts::Rational(2)), 2);
  EXPECT_EQ(ts::count_distinct_roots(p, ts::Rational(2), ts::Rational(3)), 0);
}

TEST(BetaNumber, GoldenEnclosureRefines) {
  auto beta = ts::BetaNumber::parse("golden");
  EXPECT_EQ(beta.degree(), 2);
  EXPECT_FALSE(beta.is_rational());
  ts::Interval e = beta.refine(ts::Rational(1, ts::Integer(1) << 50));
  EXPECT_LE(e.width(), ts::Rational(1, ts::Integer(1) << 50));
  EXPECT_LE(e.lo.get_d(), kGolden);
  EXPECT_GE(e.hi.get_d(), kGolden);
  EXPECT_NEAR(beta.approx(), kGolden, 1e-15);
  EXPECT_EQ(beta.alphabet_size(), 2);
}

TEST(BetaNumber, PolynomialSpecMatchesAlias) {
  auto a = ts::BetaNumber::parse("poly:-1,-1,1@[3/2,2]");
  EXPECT_NEAR(a.approx(), kGolden, 1e-15);
}

TEST(BetaNumber, RationalAndDecimal) {
  auto r = ts::BetaNumber::parse("rational:5/2");
  EXPECT_TRUE(r.is_rational());
  EXPECT_TRUE(r.enclosure().is_point());
  EXPECT_EQ(r.alphabet_size(), 3);
  EXPECT_EQ(ts::BetaNumber::parse("decimal:2.5").enclosure().lo, ts::Rational(5, 2));
}

TEST(BetaNumber, LogEnclosureContainsLogBeta) {
  auto beta = ts::BetaNumber::parse("golden");
  auto [lo, hi] = beta.log_enclosure();
  EXPECT_LE(lo, 0.48121182505960347);
  EXPECT_GE(hi, 0.48121182505960347);
  EXPECT_LT(hi - lo, 1e-12);
}

TEST(BetaNumber, RejectsInvalidSpecs) {
  EXPECT_EQ(code_of("rational:3/1"), ts::ErrorCode::IntegerBeta);
  EXPECT_EQ(code_of("decimal:2.0"), ts::ErrorCode::IntegerBeta);
  EXPECT_EQ(code_of("rational:1/2"), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of("decimal:5/2"), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of("silver"), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of("poly:-1,-1,1@[0,3]"), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of("poly:-1,-1,1"), ts::ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of("poly:-4,0,1@[1,3]"), ts::ErrorCode::IntegerBeta);
  EXPECT_EQ(code_of("poly:-2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1@[1,2]"), ts::ErrorCode::DegreeTooLarge);
}

TEST(BetaNumber, FieldArithmeticIsExact) {
  auto beta = ts::BetaNumber::parse("golden");
  // beta * beta = beta + 1, so ceil(beta^2) = 3.
  auto b2 = beta.times_beta(beta.times_beta(beta.one()));
  EXPECT_EQ(beta.ceil(b2), 3);
  EXPECT_EQ(beta.sign(beta.one()), 1);
}
