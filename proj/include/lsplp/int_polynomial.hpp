#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsplp/errors.hpp"

namespace lsplp {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline int sign_of(const BigInt& x) { return sgn(x); }
inline int sign_of(const BigRational& x) { return sgn(x); }

// Sparse polynomial in t with arbitrary-precision integer coefficients.
//
// Terms are kept sorted by ascending exponent with no zero coefficients, so
// the zero polynomial has no terms. Exponents are nonnegative. The weights of
// perturbed games reach several thousand, so a dense coefficient vector would
// be mostly zeros; every operation here works on the term list directly.
class IntPolynomial {
 public:
  struct Term {
    std::int64_t exponent;
    BigInt coefficient;
    bool operator==(const Term&) const = default;
  };

  IntPolynomial() = default;
  IntPolynomial(long c) {  // NOLINT: implicit constant polynomial
    if (c != 0) terms_.push_back({0, BigInt(c)});
  }
  IntPolynomial(const BigInt& c) {  // NOLINT
    if (c != 0) terms_.push_back({0, c});
  }

  static IntPolynomial monomial(const BigInt& c, std::int64_t exponent) {
    if (exponent < 0) throw Error("negative exponent in IntPolynomial");
    IntPolynomial p;
    if (c != 0) p.terms_.push_back({exponent, c});
    return p;
  }

  // Builds from arbitrary (exponent, coefficient) pairs; duplicates are summed.
  static IntPolynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    IntPolynomial p;
    for (auto& t : terms) {
      if (t.exponent < 0) throw Error("negative exponent in IntPolynomial");
      if (!p.terms_.empty() && p.terms_.back().exponent == t.exponent)
        p.terms_.back().coefficient += t.coefficient;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().coefficient == 0) p.terms_.pop_back();
    }
    return p;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  std::int64_t degree() const {
    assert(!is_zero());
    return terms_.back().exponent;
  }
  std::int64_t low_degree() const {
    assert(!is_zero());
    return terms_.front().exponent;
  }
  const BigInt& leading_coefficient() const {
    assert(!is_zero());
    return terms_.back().coefficient;
  }
  int leading_sign() const { return is_zero() ? 0 : sgn(leading_coefficient()); }

  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const noexcept {
    return is_zero() || (terms_.size() == 1 && terms_[0].exponent == 0);
  }

  BigInt coefficient(std::int64_t exponent) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exponent,
        [](const Term& t, std::int64_t e) { return t.exponent < e; });
    if (it != terms_.end() && it->exponent == exponent) return it->coefficient;
    return 0;
  }

  // Positive gcd of all coefficients; 0 for the zero polynomial.
  BigInt content() const {
    BigInt g = 0;
    for (const auto& t : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coefficient.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  // Multiplication by t^k. Negative k must not drop below exponent 0.
  IntPolynomial shifted(std::int64_t k) const {
    IntPolynomial p = *this;
    for (auto& t : p.terms_) {
      t.exponent += k;
      if (t.exponent < 0) throw Error("shift produces negative exponent");
    }
    return p;
  }

  IntPolynomial operator-() const {
    IntPolynomial p = *this;
    for (auto& t : p.terms_) t.coefficient = -t.coefficient;
    return p;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    return merge(a, b, false);
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    return merge(a, b, true);
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    // Sort the index pairs by product exponent, then accumulate runs.
    struct Pair {
      std::int64_t exponent;
      std::uint32_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(a.terms_.size() * b.terms_.size());
    for (std::uint32_t i = 0; i < a.terms_.size(); ++i)
      for (std::uint32_t j = 0; j < b.terms_.size(); ++j)
        pairs.push_back({a.terms_[i].exponent + b.terms_[j].exponent, i, j});
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& x, const Pair& y) { return x.exponent < y.exponent; });
    IntPolynomial out;
    BigInt acc;
    for (std::size_t k = 0; k < pairs.size();) {
      acc = 0;
      std::size_t l = k;
      for (; l < pairs.size() && pairs[l].exponent == pairs[k].exponent; ++l)
        mpz_addmul(acc.get_mpz_t(), a.terms_[pairs[l].i].coefficient.get_mpz_t(),
                   b.terms_[pairs[l].j].coefficient.get_mpz_t());
      if (acc != 0) out.terms_.push_back({pairs[k].exponent, acc});
      k = l;
    }
    return out;
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const BigInt& c) {
    if (c == 0) return {};
    IntPolynomial p = a;
    for (auto& t : p.terms_) t.coefficient *= c;
    return p;
  }

  IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
  IntPolynomial& operator-=(const IntPolynomial& o) { return *this = *this - o; }
  IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

  bool operator==(const IntPolynomial& o) const = default;

  // Exact division by an integer; throws if some coefficient is not divisible.
  IntPolynomial divide_exact(const BigInt& c) const {
    if (c == 0) throw DivisionByZeroError();
    IntPolynomial p = *this;
    for (auto& t : p.terms_) {
      if (!mpz_divisible_p(t.coefficient.get_mpz_t(), c.get_mpz_t()))
        throw InternalError("inexact integer division of polynomial");
      mpz_divexact(t.coefficient.get_mpz_t(), t.coefficient.get_mpz_t(), c.get_mpz_t());
    }
    return p;
  }

  // Exact polynomial division; throws InternalError when d does not divide.
  IntPolynomial divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw DivisionByZeroError();
    if (is_zero()) return {};
    if (d.terms_.size() == 1) {
      const auto& dt = d.terms_[0];
      IntPolynomial q = divide_exact(dt.coefficient);
      for (auto& t : q.terms_) {
        t.exponent -= dt.exponent;
        if (t.exponent < 0) throw InternalError("inexact polynomial division");
      }
      return q;
    }
    auto [q, r] = divide_with_remainder(d, true);
    if (!r.is_zero()) throw InternalError("inexact polynomial division");
    return q;
  }

  // Pseudo-remainder: lc(d)^k * this = q * d + r with deg r < deg d.
  IntPolynomial pseudo_remainder(const IntPolynomial& d) const {
    if (d.is_zero()) throw DivisionByZeroError();
    std::map<std::int64_t, BigInt> r;
    for (const auto& t : terms_) r.emplace(t.exponent, t.coefficient);
    const std::int64_t dd = d.degree();
    const BigInt& lc = d.leading_coefficient();
    while (!r.empty() && r.rbegin()->first >= dd) {
      auto top = *r.rbegin();
      const std::int64_t shift = top.first - dd;
      for (auto& [e, c] : r) c *= lc;
      for (const auto& t : d.terms_) {
        auto& slot = r[t.exponent + shift];
        mpz_submul(slot.get_mpz_t(), top.second.get_mpz_t(), t.coefficient.get_mpz_t());
      }
      for (auto it = r.begin(); it != r.end();)
        it = it->second == 0 ? r.erase(it) : std::next(it);
    }
    IntPolynomial out;
    for (auto& [e, c] : r) out.terms_.push_back({e, std::move(c)});
    return out;
  }

  // Primitive part with positive leading coefficient.
  IntPolynomial primitive_part() const {
    if (is_zero()) return {};
    IntPolynomial p = divide_exact(content());
    if (p.leading_sign() < 0) p = -p;
    return p;
  }

  BigInt evaluate(const BigInt& t) const {
    BigInt acc = 0;
    std::int64_t prev = terms_.empty() ? 0 : terms_.back().exponent;
    BigInt power;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      mpz_pow_ui(power.get_mpz_t(), t.get_mpz_t(),
                 static_cast<unsigned long>(prev - it->exponent));
      acc *= power;
      acc += it->coefficient;
      prev = it->exponent;
    }
    mpz_pow_ui(power.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(prev));
    return acc * power;
  }

  BigRational evaluate(const BigRational& t) const {
    BigRational acc = 0;
    for (const auto& term : terms_) {
      BigInt num, den;
      mpz_pow_ui(num.get_mpz_t(), t.get_num_mpz_t(),
                 static_cast<unsigned long>(term.exponent));
      mpz_pow_ui(den.get_mpz_t(), t.get_den_mpz_t(),
                 static_cast<unsigned long>(term.exponent));
      BigRational v(num * term.coefficient, den);
      v.canonicalize();
      acc += v;
    }
    return acc;
  }

  // Cauchy bound: every real root has absolute value below this integer.
  BigInt root_bound() const {
    if (terms_.size() <= 1) return 1;
    BigInt best = 0;
    const BigInt lc = abs(leading_coefficient());
    for (std::size_t i = 0; i + 1 < terms_.size(); ++i) {
      BigInt q;
      mpz_cdiv_q(q.get_mpz_t(), BigInt(abs(terms_[i].coefficient)).get_mpz_t(),
                 lc.get_mpz_t());
      if (q > best) best = q;
    }
    return best + 1;
  }

  // Descending powers, e.g. "-t^4 + 1" or "3 t^2 - t".
  std::string to_string(const char* var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      BigInt c = it->coefficient;
      const bool negative = c < 0;
      if (negative) c = -c;
      if (out.empty())
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      if (it->exponent == 0) {
        out += c.get_str();
        continue;
      }
      if (c != 1) out += c.get_str() + " ";
      out += var;
      if (it->exponent != 1) out += "^" + std::to_string(it->exponent);
    }
    return out;
  }

 private:
  static IntPolynomial merge(const IntPolynomial& a, const IntPolynomial& b,
                             bool subtract) {
    IntPolynomial out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && a.terms_[i].exponent < b.terms_[j].exponent)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exponent < a.terms_[i].exponent) {
        out.terms_.push_back(b.terms_[j]);
        if (subtract) out.terms_.back().coefficient = -out.terms_.back().coefficient;
        ++j;
      } else {
        BigInt c = subtract ? BigInt(a.terms_[i].coefficient - b.terms_[j].coefficient)
                            : BigInt(a.terms_[i].coefficient + b.terms_[j].coefficient);
        if (c != 0) out.terms_.push_back({a.terms_[i].exponent, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  IntPolynomial times_term(const Term& m) const {
    IntPolynomial p = *this;
    for (auto& t : p.terms_) {
      t.exponent += m.exponent;
      t.coefficient *= m.coefficient;
    }
    return p;
  }

  // Long division over the integers. With `exact` set, throws as soon as a
  // quotient coefficient is fractional.
  std::pair<IntPolynomial, IntPolynomial> divide_with_remainder(const IntPolynomial& d,
                                                                bool exact) const {
    std::map<std::int64_t, BigInt> r;
    for (const auto& t : terms_) r.emplace(t.exponent, t.coefficient);
    const std::int64_t dd = d.degree();
    const BigInt& lc = d.leading_coefficient();
    std::vector<Term> q;
    while (!r.empty() && r.rbegin()->first >= dd) {
      auto top = *r.rbegin();
      if (!mpz_divisible_p(top.second.get_mpz_t(), lc.get_mpz_t())) {
        if (exact) throw InternalError("inexact polynomial division");
        break;
      }
      BigInt qc;
      mpz_divexact(qc.get_mpz_t(), top.second.get_mpz_t(), lc.get_mpz_t());
      const std::int64_t shift = top.first - dd;
      for (const auto& t : d.terms_) {
        auto [it, inserted] = r.try_emplace(t.exponent + shift, 0);
        mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), t.coefficient.get_mpz_t());
        if (it->second == 0) r.erase(it);
      }
      q.push_back({shift, std::move(qc)});
    }
    IntPolynomial quotient = from_terms(std::move(q));
    IntPolynomial remainder;
    for (auto& [e, c] : r) remainder.terms_.push_back({e, std::move(c)});
    return {std::move(quotient), std::move(remainder)};
  }

  std::vector<Term> terms_;
};

// Greatest common divisor over Z[t], normalized to a positive leading
// coefficient. Primitive-part Euclidean remainder sequence; the cost grows
// quadratically with the degree, so callers reserve it for small operands.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  BigInt content_gcd;
  mpz_gcd(content_gcd.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  IntPolynomial x = a.primitive_part();
  IntPolynomial y = b.primitive_part();
  // Pull out the common power of t first; the remainder sequence never needs it.
  const std::int64_t tpow = std::min(x.low_degree(), y.low_degree());
  x = x.shifted(-x.low_degree());
  y = y.shifted(-y.low_degree());
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPolynomial r = x.pseudo_remainder(y);
    x = std::move(y);
    y = r.primitive_part();
  }
  return (x.primitive_part() * content_gcd).shifted(tpow);
}

}  // namespace lsplp
