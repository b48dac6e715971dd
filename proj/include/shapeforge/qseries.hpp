#pragma once

/**
 * @file qseries.hpp
 * @brief Exact univariate generating functions in the grade variable q.
 *
 * Shape polynomials P_d(N,q) are produced by Svrtan's alternating recursion
 *
 *     N P_d(N,q) = sum_{k=1..N} (+-1)^{k+1} [C^N_k(q)]^d P_d(N-k,q),
 *
 * where C^N_k(q) = (1-q^N)...(1-q^{N-k+1}) / (1-q^k) and the upper sign is
 * taken for bosons. State counts by grade come from Z_E(N,q)^d P_d(N,q) with
 * Z_E = prod_{k=1..N} 1/(1-q^k). Everything here is exact integer arithmetic.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shapeforge/integer.hpp"

namespace shapeforge::qseries {

enum class Statistics { Fermion, Boson };

/// Dense polynomial in q; coefficient i multiplies q^i. No trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Integer> coeffs);
  QPoly(std::initializer_list<long> coeffs);

  static QPoly one() { return QPoly({1}); }
  static QPoly monomial(const Integer& c, std::size_t power);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::optional<std::size_t> lowest_power() const;

  /// Coefficient of q^power; zero beyond the degree.
  const Integer& operator[](std::size_t power) const;
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient_sum() const;

  QPoly operator-() const;
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly& a, const QPoly& b) = default;

  QPoly pow(unsigned exponent) const;

  /// Exact quotient; throws Errc::internal_arithmetic if a remainder appears.
  QPoly divide_exact(const QPoly& divisor) const;
  QPoly divide_exact(const Integer& divisor) const;

  /// Ascending-power text such as "3q^2 + 10q^3 + q^9"; "0" for zero.
  std::string to_string() const;

 private:
  void normalize();

  std::vector<Integer> coeffs_;
};

/// Power series in q truncated at a fixed order (inclusive).
class QSeries {
 public:
  QSeries(std::size_t truncation, std::vector<Integer> coeffs);
  static QSeries from_poly(const QPoly& p, std::size_t truncation);

  std::size_t truncation() const { return truncation_; }
  /// Coefficient of q^power; power must not exceed the truncation.
  const Integer& operator[](std::size_t power) const;
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  /// Product truncated at the smaller of the two orders.
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries pow(unsigned exponent) const;

 private:
  std::size_t truncation_;
  std::vector<Integer> coeffs_;  // size truncation_ + 1
};

QPoly c_poly(int n, int k);
QPoly shape_poly(int n, int d, Statistics stats);

/// dN(N-1)/2: degree of the odd-d fermion / even-d boson shape polynomial.
long degree_D(int d, int n);
/// Lowest power present in the fermion shape polynomial.
long ground_grade(int d, int n);
/// Sum of the N smallest single-particle grades over distinct d-tuples.
long shell_filling_grade(int d, int n);

QSeries ze_series(int n, std::size_t truncation);
QSeries state_count_series(int n, int d, std::size_t truncation);

bool mirror_check(int n, int d);
bool palindrome_check(int n, int d);

/// Natural log of the fermion shape-polynomial coefficient at `grade`.
double shape_entropy(int n, int d, long grade);

/// Natural log of a positive integer, accurate for any magnitude.
double log_integer(const Integer& x);

Integer factorial(unsigned n);

}  // namespace shapeforge::qseries
