#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lsplp/int_polynomial.hpp"

namespace lsplp {

// Element of the ordered field Q(t), ordered by sign for all sufficiently
// large t.
//
// Stored as numerator/denominator in Z[t]. The stored form is normalized:
// the denominator has a positive leading coefficient, the common power of t
// and the common integer content are divided out, and zero is 0/1. A full
// polynomial gcd is not taken on every operation (see reduced()), so two
// equal values may be stored differently; operator== compares by cross
// multiplication and is exact.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const BigInt& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const BigRational& q)  // NOLINT
      : num_(BigInt(q.get_num())), den_(BigInt(q.get_den())) {}
  RationalFunction(IntPolynomial num, IntPolynomial den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroError();
    normalize();
  }

  // c * t^exponent; negative exponents land in the denominator.
  static RationalFunction monomial(const BigInt& c, std::int64_t exponent) {
    if (exponent >= 0) return {IntPolynomial::monomial(c, exponent), IntPolynomial(1)};
    return {IntPolynomial(c), IntPolynomial::monomial(1, -exponent)};
  }
  static RationalFunction t_power(std::int64_t exponent) { return monomial(1, exponent); }
  // t^{-w}: the weight of a walk of total weight w as a generating-function term.
  static RationalFunction walk_term(const BigInt& weight) {
    if (!weight.fits_slong_p()) throw Error("walk weight too large for an exponent");
    return t_power(-weight.get_si());
  }

  const IntPolynomial& numerator() const noexcept { return num_; }
  const IntPolynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }

  // Sign of the value for all large enough t.
  int sign_at_infinity() const { return num_.leading_sign(); }

  // deg(num) - deg(den): the exponent of the leading term of the Laurent
  // expansion at infinity. Undefined for zero.
  std::int64_t degree_at_infinity() const {
    if (is_zero()) throw Error("degree of zero rational function");
    return num_.degree() - den_.degree();
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_ == b.num_ && !a.den_.is_constant()) return {a.num_, b.den_};
    if (b.den_ == a.num_ && !b.den_.is_constant()) return {b.num_, a.den_};
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZeroError();
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction inverse() const { return RationalFunction(1) / *this; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.num_ == b.num_ && a.den_ == b.den_) return true;
    if (a.is_zero() || b.is_zero()) return false;
    if (a.num_.leading_sign() != b.num_.leading_sign()) return false;
    if (a.num_.degree() - a.den_.degree() != b.num_.degree() - b.den_.degree())
      return false;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  friend std::strong_ordering operator<=>(const RationalFunction& a,
                                          const RationalFunction& b) {
    const int s = (a - b).sign_at_infinity();
    return s < 0 ? std::strong_ordering::less
                 : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  // Same value with gcd(numerator, denominator) = 1. Quadratic in the degree.
  RationalFunction reduced() const {
    if (is_zero() || den_.is_constant() || num_.is_constant()) return *this;
    const IntPolynomial g = gcd(num_, den_);
    if (g.is_constant()) return *this;
    return {num_.divide_exact(g), den_.divide_exact(g)};
  }

  // Exact value at a rational point. Throws if the denominator vanishes there.
  BigRational evaluate(const BigRational& t) const {
    const BigRational d = den_.evaluate(t);
    if (d == 0) throw DivisionByZeroError();
    BigRational r = num_.evaluate(t) / d;
    r.canonicalize();
    return r;
  }

  // Sign of the exact value at an integer point; throws on a denominator root.
  int sign_at(const BigInt& t) const {
    const int d = sgn(den_.evaluate(t));
    if (d == 0) throw DivisionByZeroError();
    return sgn(num_.evaluate(t)) * d;
  }

  // Every integer t0 >= this bound lies beyond all real roots of numerator
  // and denominator, so sign_at(t0) == sign_at_infinity().
  BigInt sample_bound() const {
    BigInt a = num_.root_bound();
    BigInt b = den_.root_bound();
    return a > b ? a : b;
  }

  // "(num)/(den)" with both parts in descending powers of t.
  std::string to_string() const {
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& r) {
    return os << r.to_string();
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = IntPolynomial(1);
      return;
    }
    const std::int64_t k = std::min(num_.low_degree(), den_.low_degree());
    if (k > 0) {
      num_ = num_.shifted(-k);
      den_ = den_.shifted(-k);
    }
    BigInt g;
    const BigInt cn = num_.content();
    const BigInt cd = den_.content();
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den_.leading_sign() < 0) g = -g;
    if (g != 1) {
      num_ = num_.divide_exact(g);
      den_ = den_.divide_exact(g);
    }
  }

  IntPolynomial num_;
  IntPolynomial den_;
};

// One term of a Laurent expansion at infinity: coefficient * t^exponent.
struct SeriesTerm {
  std::int64_t exponent;
  BigRational coefficient;
  bool operator==(const SeriesTerm&) const = default;
};

// First k nonzero terms of the expansion of a in descending powers of t.
// Stops early when the expansion is finite.
inline std::vector<SeriesTerm> series_at_infinity(const RationalFunction& a, std::size_t k) {
  std::vector<SeriesTerm> out;
  if (a.is_zero() || k == 0) return out;
  const IntPolynomial& den = a.denominator();
  const std::int64_t dd = den.degree();
  const BigInt& lc = den.leading_coefficient();
  // Remainder kept as rational coefficients scaled by a common integer.
  std::map<std::int64_t, BigRational> r;
  for (const auto& t : a.numerator().terms()) r.emplace(t.exponent, BigRational(t.coefficient));
  while (out.size() < k && !r.empty()) {
    auto top = *r.rbegin();
    BigRational q = top.second / BigRational(lc);
    q.canonicalize();
    const std::int64_t shift = top.first - dd;
    for (const auto& t : den.terms()) {
      auto [it, inserted] = r.try_emplace(t.exponent + shift, 0);
      it->second -= q * BigRational(t.coefficient);
      if (it->second == 0) r.erase(it);
    }
    out.push_back({shift, std::move(q)});
  }
  return out;
}

}  // namespace lsplp
