#pragma once

/**
 * @file slater.hpp
 * @brief Slater-set labels and the coordinates they induce on antisymmetric polynomials.
 *
 * A SlaterIndex is a set of N pairwise-distinct d-tuples of exponents, stored
 * in strictly decreasing lexicographic order. Its antisymmetrization is
 *
 *     Alt(S) = sum_sigma sgn(sigma) prod_k x_{sigma(k)}^{row k},
 *
 * whose leading monomial (particle k carries row k) has coefficient +1. An
 * antisymmetric polynomial is determined by its coefficients on these
 * canonical monomials, so those coefficients (Slater coordinates) are a
 * lossless representation of the antisymmetric space.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shapeforge/integer.hpp"
#include "shapeforge/multipoly.hpp"

namespace shapeforge::multipoly {

/// Flattened rows, row-major: entry k*d + c is coordinate c of row k.
using SlaterKey = std::vector<Exponent>;

struct SlaterKeyHash {
  std::size_t operator()(const SlaterKey& k) const noexcept;
};

class SlaterIndex {
 public:
  /// Sorts the rows; throws Errc::invalid_argument on repeated tuples.
  static SlaterIndex from_rows(int dims, std::vector<std::vector<Exponent>> rows);
  /// Adopts a key already in canonical (strictly decreasing) order.
  static SlaterIndex from_key(int particles, int dims, SlaterKey key);

  int particles() const { return particles_; }
  int dims() const { return dims_; }
  std::span<const Exponent> row(int k) const {
    return {key_.data() + static_cast<std::size_t>(k) * dims_, static_cast<std::size_t>(dims_)};
  }
  const SlaterKey& key() const { return key_; }
  std::uint64_t grade() const;
  std::vector<std::uint64_t> multidegree() const;
  /// The monomial in which particle k carries row k.
  Monomial leading_monomial() const;

  friend bool operator==(const SlaterIndex&, const SlaterIndex&) = default;
  friend auto operator<=>(const SlaterIndex& a, const SlaterIndex& b) { return a.key_ <=> b.key_; }

 private:
  SlaterIndex(int particles, int dims, SlaterKey key)
      : particles_(particles), dims_(dims), key_(std::move(key)) {}

  int particles_ = 0;
  int dims_ = 0;
  SlaterKey key_;
};

/// Sparse antisymmetric polynomial in Slater coordinates, sorted by key.
using SlaterCoords = std::vector<std::pair<SlaterKey, Integer>>;

/// Sorts rows of a flat key into canonical order. Returns the permutation
/// sign, or 0 if two rows coincide (the antisymmetrization vanishes).
int canonicalize_rows(SlaterKey& key, int particles, int dims);

/// All Slater sets of total grade g, ascending by key.
std::vector<SlaterIndex> slater_basis(int particles, int dims, std::uint64_t grade);
/// All Slater sets with the given per-coordinate degrees, ascending by key.
std::vector<SlaterIndex> slater_basis(int particles, std::span<const std::uint64_t> multidegree);

MPoly antisymmetrize(const SlaterIndex& s);

/// Coefficients of the canonical monomials of p (exact for antisymmetric p).
SlaterCoords project_to_slater(const MPoly& p);
/// Rebuilds sum_S c_S Alt(S).
MPoly from_slater(Layout layout, const SlaterCoords& coords);

/// e_j(coordinate) * a, computed entirely in Slater coordinates.
SlaterCoords multiply_elementary(const SlaterCoords& a, int particles, int dims, int coordinate,
                                 int j);

/// e_j(Tbar_c) * a: the down-shift adjoint of multiply_elementary under the
/// coefficient inner product.
SlaterCoords lower_elementary(const SlaterCoords& a, int particles, int dims, int coordinate,
                              int j);

}  // namespace shapeforge::multipoly
