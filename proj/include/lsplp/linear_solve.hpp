#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lsplp/int_polynomial.hpp"
#include "lsplp/matrix.hpp"
#include "lsplp/rational_function.hpp"

namespace lsplp {

// Solution X / denominator of M * Y = R over Q(t), with X polynomial.
struct FractionFreeSolution {
  Matrix<IntPolynomial> numerators;
  IntPolynomial denominator;  // equals +-det(M)
  IntPolynomial determinant;
};

namespace detail {

inline std::size_t pick_pivot(const Matrix<IntPolynomial>& m, std::size_t k) {
  std::size_t best = m.rows();
  for (std::size_t r = k; r < m.rows(); ++r) {
    if (m(r, k).is_zero()) continue;
    if (best == m.rows() || m(r, k).term_count() < m(best, k).term_count()) best = r;
  }
  return best;
}

}  // namespace detail

// Bareiss fraction-free elimination on [M | R] followed by fraction-free
// back substitution. Every division is exact, so no intermediate fractions
// appear; entries stay polynomials bounded by minors of the input.
inline FractionFreeSolution fraction_free_solve(Matrix<IntPolynomial> m,
                                                Matrix<IntPolynomial> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.rows() != n) throw Error("fraction_free_solve: shape mismatch");
  const std::size_t k_rhs = rhs.cols();
  int swaps = 0;
  IntPolynomial prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = detail::pick_pivot(m, k);
    if (p == n) throw SingularMatrixError();
    if (p != k) {
      m.swap_rows(p, k);
      rhs.swap_rows(p, k);
      ++swaps;
    }
    const IntPolynomial& pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const IntPolynomial lead = m(i, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        IntPolynomial v = pivot * m(i, j);
        if (!lead.is_zero() && !m(k, j).is_zero()) v -= lead * m(k, j);
        m(i, j) = v.divide_exact(prev);
      }
      for (std::size_t j = 0; j < k_rhs; ++j) {
        IntPolynomial v = pivot * rhs(i, j);
        if (!lead.is_zero() && !rhs(k, j).is_zero()) v -= lead * rhs(k, j);
        rhs(i, j) = v.divide_exact(prev);
      }
      m(i, k) = IntPolynomial();
    }
    prev = m(k, k);
  }
  const IntPolynomial d = m(n - 1, n - 1);
  FractionFreeSolution out{Matrix<IntPolynomial>(n, k_rhs), d,
                           swaps % 2 == 0 ? d : IntPolynomial(-d)};
  for (std::size_t c = 0; c < k_rhs; ++c) {
    out.numerators(n - 1, c) = rhs(n - 1, c);
    for (std::size_t ii = n - 1; ii-- > 0;) {
      IntPolynomial acc = d * rhs(ii, c);
      for (std::size_t j = ii + 1; j < n; ++j)
        if (!m(ii, j).is_zero() && !out.numerators(j, c).is_zero())
          acc -= m(ii, j) * out.numerators(j, c);
      out.numerators(ii, c) = acc.divide_exact(m(ii, ii));
    }
  }
  return out;
}

inline IntPolynomial determinant(Matrix<IntPolynomial> m) {
  if (m.rows() == 0) return IntPolynomial(1);
  const std::size_t n = m.rows();
  try {
    return fraction_free_solve(std::move(m), Matrix<IntPolynomial>(n, 0)).determinant;
  } catch (const SingularMatrixError&) {
    return {};
  }
}

// A polynomial L such that L * x is a polynomial for every x in `values`.
inline IntPolynomial common_multiplier(std::span<const RationalFunction> values) {
  std::int64_t tpow = 0;
  std::vector<IntPolynomial> parts;
  for (const auto& v : values) {
    const IntPolynomial& d = v.denominator();
    tpow = std::max(tpow, d.low_degree());
    IntPolynomial rest = d.shifted(-d.low_degree());
    if (rest == IntPolynomial(1)) continue;
    bool seen = false;
    for (const auto& p : parts) seen = seen || p == rest;
    if (!seen) parts.push_back(std::move(rest));
  }
  IntPolynomial l = IntPolynomial::monomial(1, tpow);
  for (const auto& p : parts) l *= p;
  return l;
}

// multiplier * x as a polynomial; multiplier must be a common multiple of x's
// denominator.
inline IntPolynomial scaled_to_polynomial(const RationalFunction& x,
                                          const IntPolynomial& multiplier) {
  if (x.is_zero()) return {};
  return x.numerator() * multiplier.divide_exact(x.denominator());
}

namespace detail {

// Multiplies each row of [M | R] by a polynomial clearing its denominators.
inline std::pair<Matrix<IntPolynomial>, std::vector<IntPolynomial>> clear_row_denominators(
    const Matrix<RationalFunction>& m, const Matrix<RationalFunction>& rhs,
    Matrix<IntPolynomial>& rhs_out) {
  const std::size_t n = m.rows();
  Matrix<IntPolynomial> out(n, m.cols());
  std::vector<IntPolynomial> multipliers(n);
  rhs_out = Matrix<IntPolynomial>(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RationalFunction> row(m.row(i).begin(), m.row(i).end());
    row.insert(row.end(), rhs.row(i).begin(), rhs.row(i).end());
    multipliers[i] = common_multiplier(row);
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = scaled_to_polynomial(m(i, j), multipliers[i]);
    for (std::size_t j = 0; j < rhs.cols(); ++j)
      rhs_out(i, j) = scaled_to_polynomial(rhs(i, j), multipliers[i]);
  }
  return {std::move(out), std::move(multipliers)};
}

}  // namespace detail

// Exact solution of M x = rhs over Q(t). Throws SingularMatrixError.
inline std::vector<RationalFunction> solve_linear(const Matrix<RationalFunction>& m,
                                                  std::span<const RationalFunction> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n) throw Error("solve_linear: shape mismatch");
  if (n == 0) return {};
  Matrix<RationalFunction> r(n, 1);
  for (std::size_t i = 0; i < n; ++i) r(i, 0) = rhs[i];
  Matrix<IntPolynomial> rp;
  auto [mp, multipliers] = detail::clear_row_denominators(m, r, rp);
  const FractionFreeSolution sol = fraction_free_solve(std::move(mp), std::move(rp));
  std::vector<RationalFunction> x;
  x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) x.emplace_back(sol.numerators(i, 0), sol.denominator);
  return x;
}

// Exact inverse over Q(t). Throws SingularMatrixError.
inline Matrix<RationalFunction> invert(const Matrix<RationalFunction>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error("invert: matrix is not square");
  if (n == 0) return {};
  Matrix<IntPolynomial> rp;
  auto [mp, multipliers] =
      detail::clear_row_denominators(m, Matrix<RationalFunction>(n, 0), rp);
  // (D M)^{-1} D = M^{-1} with D = diag(multipliers).
  Matrix<IntPolynomial> rhs(n, n);
  for (std::size_t i = 0; i < n; ++i) rhs(i, i) = multipliers[i];
  const FractionFreeSolution sol = fraction_free_solve(std::move(mp), std::move(rhs));
  Matrix<RationalFunction> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = RationalFunction(sol.numerators(i, j), sol.denominator);
  return inv;
}

}  // namespace lsplp
