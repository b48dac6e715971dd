#pragma once

/**
 * @file exactla.hpp
 * @brief Exact rank and span membership for sparse integer rows.
 *
 * Rows are reduced fraction-free against an echelon keyed by leading column:
 * eliminating the leading entry of v with pivot row r computes
 * (r_c/g) v - (v_c/g) r with g = gcd(r_c, v_c), then divides out the content.
 * Every intermediate stays an integer and the row space over Q is preserved.
 */

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "shapeforge/sparse_vector.hpp"

namespace shapeforge::exactla {

enum class ExtendResult { Extended, InSpan };

class SparseIntMatrix {
 public:
  explicit SparseIntMatrix(std::size_t columns = 0, bool keep_rows = true)
      : columns_(columns), keep_rows_(keep_rows) {}

  std::size_t columns() const { return columns_; }
  /// Enlarges the column space; existing rows are unaffected.
  void grow_columns(std::size_t columns);

  /// Adds the candidate iff it is independent of the current rows over Q.
  ExtendResult try_extend(SparseVector candidate);
  /// Remainder against the current echelon; empty iff the candidate is in the span.
  SparseVector reduce(SparseVector candidate) const;

  std::size_t rank() const { return echelon_.size(); }
  /// Rows accepted by try_extend (empty when constructed with keep_rows = false).
  const std::vector<SparseVector>& rows() const { return rows_; }
  const std::vector<SparseVector>& echelon() const { return echelon_; }

 private:
  void check(const SparseVector& v) const;

  std::size_t columns_;
  bool keep_rows_;
  std::vector<SparseVector> rows_;
  std::vector<SparseVector> echelon_;
  std::unordered_map<std::size_t, std::size_t> pivot_of_column_;
};

/// Rank of a row list by incremental elimination.
std::size_t rank(const std::vector<SparseVector>& rows, std::size_t columns);

/// Divides v by the gcd of its entries and makes the first entry positive.
void make_primitive(SparseVector& v);

}  // namespace shapeforge::exactla
