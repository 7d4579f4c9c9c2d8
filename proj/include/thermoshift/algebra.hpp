#pragma once

// Certified arithmetic for the base beta.
//
// A BetaNumber is a real root of an integer polynomial P, pinned by a rational
// isolating interval. Rational bases are the degree-one case qx - p. Elements
// of Q[x]/(P) (FieldElement) are exact; evaluating them at beta goes through
// interval enclosures that are refined by bisection until every sign or
// ceiling question has a certified answer. Equality with zero is decided
// exactly with a polynomial gcd, so integer ties never depend on precision.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermoshift/error.hpp"

namespace thermoshift {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kMaxBetaDegree = 16;

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline int sign_of(const Rational& q) { return sgn(q); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "p/q", or a plain decimal "123.456" (optional sign) exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::InvalidSpec, "not a rational number: '" + s + "'");
  };
  if (s.empty()) return fail();
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) return fail();
    if (q.get_den() == 0) return fail();
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_point) ++fraction_digits;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction_digits);
  Rational q(negative ? Integer(-num) : num, den);
  q.canonicalize();
  return q;
}

struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
};

/// Dense polynomial over Q, coefficients c0..cd (lowest degree first).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Rational& a, std::size_t power) {
    std::vector<Rational> c(power + 1, Rational(0));
    c[power] = a;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Exact range enclosure over an interval with x.lo >= 0.
  Interval evaluate(const Interval& x) const {
    Interval out{Rational(0), Rational(0)};
    Rational plo = 1;
    Rational phi = 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) {
        plo *= x.lo;
        phi *= x.hi;
      }
      if (sgn(c_[i]) >= 0) {
        out.lo += c_[i] * plo;
        out.hi += c_[i] * phi;
      } else {
        out.lo += c_[i] * phi;
        out.hi += c_[i] * plo;
      }
    }
    return out;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = c_;
    Rational lead = c.back();
    for (auto& a : c) a /= lead;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> c = p.c_;
    for (auto& a : c) a *= s;
    return Polynomial(std::move(c));
  }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    std::vector<Rational> r = a.c_;
    int db = b.degree();
    if (a.degree() < db) return {Polynomial{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    for (int i = a.degree(); i >= db; --i) {
      Rational factor = r[static_cast<std::size_t>(i)] / b.leading();
      q[static_cast<std::size_t>(i - db)] = factor;
      if (sgn(factor) == 0) continue;
      for (int j = 0; j <= db; ++j)
        r[static_cast<std::size_t>(i - db + j)] -= factor * b.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  bool operator==(const Polynomial& other) const { return c_ == other.c_; }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

namespace detail {

inline int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Number of distinct real roots of p in the closed interval [lo, hi] (Sturm).
inline int count_distinct_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "root count of the zero polynomial");
  if (p.degree() == 0) return 0;
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  // Sturm counts roots in (lo, hi]; add lo separately.
  int n = detail::sign_changes(seq, lo) - detail::sign_changes(seq, hi);
  if (sgn(p(lo)) == 0) ++n;
  return n;
}

class BetaNumber;

/// Exact element of Q[x]/(P), read as a number through x -> beta.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  const std::vector<Rational>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size(); }

  Polynomial as_polynomial() const { return Polynomial(coords_); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) {
    if (a.coords_.size() < b.coords_.size()) a.coords_.resize(b.coords_.size(), Rational(0));
    for (std::size_t i = 0; i < b.coords_.size(); ++i) a.coords_[i] += b.coords_[i];
    return a;
  }

  friend FieldElement operator-(FieldElement a, const FieldElement& b) {
    if (a.coords_.size() < b.coords_.size()) a.coords_.resize(b.coords_.size(), Rational(0));
    for (std::size_t i = 0; i < b.coords_.size(); ++i) a.coords_[i] -= b.coords_[i];
    return a;
  }

  friend FieldElement operator-(FieldElement a, const Integer& k) {
    if (a.coords_.empty()) a.coords_.push_back(Rational(0));
    a.coords_[0] -= Rational(k);
    return a;
  }

  bool operator==(const FieldElement& other) const {
    return as_polynomial() == other.as_polynomial();
  }

 private:
  std::vector<Rational> coords_;
};

/// Real base beta > 1, beta not an integer, with exact decisions on ceil(beta*r).
///
/// Copies share the enclosure cache; all members are safe to call concurrently.
class BetaNumber {
 public:
  /// Parses `rational:<p>/<q>`, `decimal:<digits>`, `poly:<c0,...,cd>@[<lo>,<hi>]`,
  /// or the alias `golden` (x^2 - x - 1 on [1, 2]).
  static BetaNumber parse(std::string_view spec) {
    std::string s(spec);
    if (s == "golden") return from_polynomial({-1, -1, 1}, Rational(1), Rational(2), s);
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::InvalidSpec, "beta spec needs a kind prefix: '" + s + "'");
    std::string kind = s.substr(0, colon);
    std::string body = s.substr(colon + 1);
    if (kind == "rational") return from_rational(parse_rational(body), s);
    if (kind == "decimal") {
      if (body.find('/') != std::string::npos)
        throw Error(ErrorCode::InvalidSpec, "decimal beta must be a decimal string: '" + body + "'");
      return from_rational(parse_rational(body), s);
    }
    if (kind == "poly") {
      auto at = body.find('@');
      if (at == std::string::npos)
        throw Error(ErrorCode::InvalidSpec, "poly beta needs '@[lo,hi]': '" + s + "'");
      std::vector<Integer> coeffs;
      std::stringstream cs(body.substr(0, at));
      std::string item;
      while (std::getline(cs, item, ',')) {
        Integer z;
        if (item.empty() || z.set_str(item, 10) != 0)
          throw Error(ErrorCode::InvalidSpec, "bad polynomial coefficient '" + item + "'");
        coeffs.push_back(z);
      }
      std::string range = body.substr(at + 1);
      if (range.size() < 5 || range.front() != '[' || range.back() != ']')
        throw Error(ErrorCode::InvalidSpec, "bad isolating interval '" + range + "'");
      range = range.substr(1, range.size() - 2);
      auto comma = range.find(',');
      if (comma == std::string::npos)
        throw Error(ErrorCode::InvalidSpec, "bad isolating interval '" + range + "'");
      return from_polynomial(coeffs, parse_rational(range.substr(0, comma)),
                             parse_rational(range.substr(comma + 1)), s);
    }
    throw Error(ErrorCode::InvalidSpec, "unknown beta kind '" + kind + "'");
  }

  static BetaNumber from_rational(const Rational& value, std::string spec = {}) {
    if (value <= 1) throw Error(ErrorCode::InvalidSpec, "beta must exceed 1, got " + value.get_str());
    if (value.get_den() == 1)
      throw Error(ErrorCode::IntegerBeta, "beta = " + value.get_str() + " is an integer");
    if (spec.empty()) spec = "rational:" + value.get_num().get_str() + "/" + value.get_den().get_str();
    // q*x - p
    Polynomial modulus({Rational(-value.get_num()), Rational(value.get_den())});
    return BetaNumber(std::move(modulus), Interval{value, value}, std::move(spec));
  }

  static BetaNumber from_polynomial(const std::vector<Integer>& coeffs, Rational lo, Rational hi,
                                    std::string spec = {}) {
    std::vector<Rational> rc;
    rc.reserve(coeffs.size());
    for (const auto& z : coeffs) rc.emplace_back(z);
    Polynomial p(std::move(rc));
    if (p.degree() < 1) throw Error(ErrorCode::InvalidSpec, "polynomial must have degree >= 1");
    if (p.degree() > kMaxBetaDegree)
      throw Error(ErrorCode::DegreeTooLarge, "degree " + std::to_string(p.degree()) + " exceeds " +
                                                 std::to_string(kMaxBetaDegree));
    if (lo > hi) throw Error(ErrorCode::InvalidSpec, "isolating interval has lo > hi");
    if (lo < 1) throw Error(ErrorCode::InvalidSpec, "isolating interval must lie in [1, inf)");
    if (spec.empty()) spec = "poly:" + describe(coeffs) + "@[" + lo.get_str() + "," + hi.get_str() + "]";

    // Square-free part: same roots, all simple, so bisection sees a sign change.
    Polynomial g = Polynomial::gcd(p, p.derivative());
    Polynomial sf = g.degree() > 0 ? Polynomial::divmod(p, g).first : p;

    int roots = count_distinct_roots(sf, lo, hi);
    if (roots != 1)
      throw Error(ErrorCode::InvalidSpec, "isolating interval contains " + std::to_string(roots) +
                                              " roots, expected exactly one");
    if (sf.degree() == 1) {
      Rational root = -sf.coefficient(0) / sf.coefficient(1);
      if (root.get_den() == 1)
        throw Error(ErrorCode::IntegerBeta, "polynomial root in the interval is the integer " + root.get_str());
      if (root <= 1) throw Error(ErrorCode::InvalidSpec, "beta must exceed 1");
      return BetaNumber(std::move(sf), Interval{root, root}, std::move(spec));
    }
    if (sgn(sf(lo)) == 0) hi = lo;
    if (sgn(sf(hi)) == 0) lo = hi;

    BetaNumber beta(sf, Interval{lo, hi}, std::move(spec));
    // Pin the root to width < 1/2, then every candidate integer is exact-tested.
    Interval enc = beta.refine(Rational(1, 4));
    for (Integer k = ceil_of(enc.lo); k <= floor_of(enc.hi); ++k) {
      if (sgn(sf(Rational(k))) == 0)
        throw Error(ErrorCode::IntegerBeta, "polynomial root in the interval is the integer " + k.get_str());
    }
    // The root is > 1 (1 is not a root), so bisection eventually moves lo off 1.
    while (beta.enclosure().lo <= 1) beta.refine(beta.enclosure().width() / 2);
    return beta;
  }

  const std::string& spec() const { return s_->spec; }
  const Polynomial& modulus() const { return s_->modulus; }
  int degree() const { return s_->modulus.degree(); }
  bool is_rational() const { return degree() == 1; }

  Interval enclosure() const {
    std::lock_guard<std::mutex> lock(s_->mutex);
    return s_->enclosure;
  }

  /// Nested bisection until hi - lo <= width; the result is cached.
  Interval refine(const Rational& width) const {
    if (width <= 0) throw Error(ErrorCode::InvalidArgument, "refine width must be positive");
    std::lock_guard<std::mutex> lock(s_->mutex);
    Interval& e = s_->enclosure;
    if (e.width() <= width) return e;
    const Polynomial& p = s_->modulus;
    int sign_lo = sgn(p(e.lo));
    while (e.width() > width) {
      Rational mid = (e.lo + e.hi) / 2;
      int s = sgn(p(mid));
      if (s == 0) {
        e.lo = e.hi = mid;
        break;
      }
      if (s == sign_lo) {
        e.lo = mid;
      } else {
        e.hi = mid;
      }
    }
    return e;
  }

  double approx() const {
    Interval e = refine(Rational(1, Integer(1) << 60));
    return Rational((e.lo + e.hi) / 2).get_d();
  }

  /// Outward-rounded enclosure of log(beta) as doubles.
  std::pair<double, double> log_enclosure() const {
    Interval e = refine(Rational(1, Integer(1) << 50));
    double lo = std::nextafter(std::log(std::nextafter(e.lo.get_d(), 0.0)), -1.0);
    double hi = std::nextafter(std::log(std::nextafter(e.hi.get_d(), 1e300)), 1e300);
    return {lo, hi};
  }

  FieldElement one() const { return embed(Rational(1)); }

  FieldElement embed(const Rational& q) const {
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    c[0] = q;
    return FieldElement(std::move(c));
  }

  /// beta * r, reduced modulo the defining polynomial.
  FieldElement times_beta(const FieldElement& r) const {
    const auto d = static_cast<std::size_t>(degree());
    std::vector<Rational> in = r.coords();
    in.resize(d, Rational(0));
    std::vector<Rational> out(d, Rational(0));
    for (std::size_t i = 0; i + 1 < d; ++i) out[i + 1] = in[i];
    const Rational& top = in[d - 1];
    if (sgn(top) != 0) {
      const Polynomial& p = s_->modulus;
      for (std::size_t i = 0; i < d; ++i) out[i] -= top * p.coefficient(i) / p.leading();
    }
    return FieldElement(std::move(out));
  }

  /// Exact test t == 0 at beta: gcd(T, P) must vanish at the isolated root.
  bool is_zero(const FieldElement& t) const {
    Polynomial tp = t.as_polynomial();
    if (tp.is_zero()) return true;
    if (tp.degree() == 0) return false;
    Polynomial g = Polynomial::gcd(tp % s_->modulus, s_->modulus);
    if (g.degree() <= 0) return false;
    Interval e = enclosure();
    return count_distinct_roots(g, e.lo, e.hi) > 0;
  }

  /// Enclosure of t(beta).
  Interval evaluate(const FieldElement& t) const { return t.as_polynomial().evaluate(enclosure()); }

  int sign(const FieldElement& t) const {
    if (is_zero(t)) return 0;
    Rational width = enclosure().width();
    for (;;) {
      Interval v = evaluate(t);
      if (v.lo > 0) return 1;
      if (v.hi < 0) return -1;
      width = width > 0 ? width / 16 : Rational(0);
      if (width == 0) throw Error(ErrorCode::InvalidArgument, "sign undecidable on a point enclosure");
      refine(width);
    }
  }

  /// ceil(t(beta)) = min{ i : i >= t }, exact.
  Integer ceil(const FieldElement& t) const {
    if (is_rational()) {
      Interval v = evaluate(t);
      return ceil_of(v.lo);
    }
    bool candidates_checked = false;
    for (;;) {
      Interval v = evaluate(t);
      Integer a = ceil_of(v.lo);
      Integer b = floor_of(v.hi);
      if (a > b) return a;  // no integer inside: floor(lo) < t < ceil(lo)
      if (!candidates_checked && b - a <= 1) {
        for (Integer k = a; k <= b; ++k)
          if (is_zero(t - k)) return k;
        candidates_checked = true;
      }
      Rational w = enclosure().width() / 16;
      refine(w);
    }
  }

  /// ceil(beta * r) for a certified positive remainder r.
  Integer certified_ceil(const FieldElement& r) const {
    if (sign(r) <= 0) throw Error(ErrorCode::NonPositiveRemainder, "remainder must be > 0");
    return ceil(times_beta(r));
  }

  /// b = ceil(beta), the alphabet size.
  int alphabet_size() const { return static_cast<int>(certified_ceil(one()).get_si()); }

 private:
  struct Shared {
    Polynomial modulus;
    std::string spec;
    mutable std::mutex mutex;
    Interval enclosure;
  };

  BetaNumber(Polynomial modulus, Interval enclosure, std::string spec) : s_(std::make_shared<Shared>()) {
    s_->modulus = std::move(modulus);
    s_->enclosure = std::move(enclosure);
    s_->spec = std::move(spec);
  }

  static std::string describe(const std::vector<Integer>& coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) out += ",";
      out += coeffs[i].get_str();
    }
    return out;
  }

  std::shared_ptr<Shared> s_;
};

}  // namespace thermoshift
