#pragma once

/**
 * @file multipoly.hpp
 * @brief Sparse exact polynomials in the d*N formal variables of N particles.
 *
 * Variable (c, k) is the power of the c-th Cartesian coordinate of particle k;
 * coordinates are written t, u, v, w, ... . Exponent vectors are laid out
 * coordinate-major, so the flat index of (c, k) is c*N + k, and terms are kept
 * sorted ascending in lexicographic order of that vector. The leading term is
 * the lexicographically greatest one (the last stored).
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shapeforge/integer.hpp"
#include "shapeforge/sparse_vector.hpp"

namespace shapeforge::multipoly {

using Exponent = std::uint32_t;

struct Layout {
  int particles = 0;
  int dims = 0;

  std::size_t variables() const { return static_cast<std::size_t>(particles) * dims; }
  std::size_t index(int coordinate, int particle) const {
    return static_cast<std::size_t>(coordinate) * particles + particle;
  }
  friend bool operator==(const Layout&, const Layout&) = default;
};

struct VarIndex {
  int coordinate = 0;
  int particle = 0;
};

/// Letter for a coordinate: t, u, v, w, x, y, z.
char coordinate_letter(int coordinate);
/// Inverse of coordinate_letter; -1 if the letter is not a coordinate.
int coordinate_from_letter(char letter);
inline constexpr int kMaxLetterDims = 7;

class Monomial {
 public:
  explicit Monomial(Layout layout) : layout_(layout), exps_(layout.variables(), 0) {}
  Monomial(Layout layout, std::vector<Exponent> exps);

  Layout layout() const { return layout_; }
  Exponent operator()(int coordinate, int particle) const {
    return exps_[layout_.index(coordinate, particle)];
  }
  Exponent& operator()(int coordinate, int particle) {
    return exps_[layout_.index(coordinate, particle)];
  }
  std::span<const Exponent> exponents() const { return exps_; }
  std::uint64_t grade() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

 private:
  Layout layout_;
  std::vector<Exponent> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(Layout layout) : layout_(layout) {}

  static MPoly constant(Layout layout, const Integer& c);
  static MPoly variable(Layout layout, VarIndex v);
  static MPoly from_terms(Layout layout, std::vector<std::pair<Monomial, Integer>> terms);

  Layout layout() const { return layout_; }
  std::size_t size() const { return coefs_.size(); }
  bool is_zero() const { return coefs_.empty(); }

  std::span<const Exponent> exponents(std::size_t term) const {
    const std::size_t w = layout_.variables();
    return {exps_.data() + term * w, w};
  }
  const Integer& coefficient(std::size_t term) const { return coefs_[term]; }
  Monomial monomial(std::size_t term) const;
  Integer coefficient_of(const Monomial& m) const;
  /// Term position of an exponent vector, if present.
  std::optional<std::size_t> find(std::span<const Exponent> exps) const;

  /// Common grade of all terms; nullopt for zero or inhomogeneous polynomials.
  std::optional<std::uint64_t> grade() const;
  std::uint64_t max_grade() const;
  /// Per-coordinate degree if every term shares it.
  std::optional<std::vector<std::uint64_t>> multidegree() const;

  Integer content() const;
  const Integer& leading_coefficient() const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scale(const Integer& c) const;
  /// Exact division of every coefficient.
  MPoly divide_exact(const Integer& c) const;

  friend bool operator==(const MPoly& a, const MPoly& b);

  std::size_t hash() const noexcept;
  /// Canonical text, leading term first, e.g. "t1^2*u2 - 3*t2".
  std::string to_string() const;

  /// Unordered accumulation of terms, merged into canonical form by finish().
  class Builder {
   public:
    explicit Builder(Layout layout) : layout_(layout) {}
    void reserve(std::size_t terms);
    void add(std::span<const Exponent> exps, const Integer& c);
    MPoly finish() &&;

   private:
    Layout layout_;
    std::vector<Exponent> exps_;
    std::vector<Integer> coefs_;
  };

  /// Adopts storage that is already strictly sorted and free of zeros.
  static MPoly from_sorted(Layout layout, std::vector<Exponent> exps, std::vector<Integer> coefs);

 private:
  Layout layout_;
  std::vector<Exponent> exps_;  // size() * layout_.variables()
  std::vector<Integer> coefs_;
};

struct MPolyHash {
  std::size_t operator()(const MPoly& p) const noexcept { return p.hash(); }
};

/// Sum of many canonical polynomials by pairwise merging.
MPoly sum(std::vector<MPoly> parts, Layout layout);

/// Relabels particle k as sigma[k] in every coordinate at once.
MPoly permute_particles(const MPoly& p, std::span<const int> sigma);
MPoly swap_particles(const MPoly& p, int a, int b);

/// True iff every adjacent transposition negates the polynomial.
bool is_antisymmetric(const MPoly& p);
/// True iff every adjacent transposition fixes the polynomial.
bool is_symmetric(const MPoly& p);

/// prod_{i<j} (x_{c,i} - x_{c,j}).
MPoly vandermonde(Layout layout, int coordinate);
/// Product of the Vandermonde forms of all coordinates; requires odd d.
MPoly source_shape(int particles, int dims);
/// e_j of the N variables of one coordinate.
MPoly elementary_symmetric(Layout layout, int coordinate, int j);

/// Primitive, sign-normalized form: p == sign * content * normalized.
struct Normalized {
  MPoly poly;
  Integer content;
  int sign = 1;
};
Normalized normalize(const MPoly& p);

/// Dense ordering of monomials used to turn polynomials into sparse vectors.
class MonomialIndex {
 public:
  std::size_t add(const Monomial& m);
  std::optional<std::size_t> lookup(const Monomial& m) const;
  const Monomial& at(std::size_t column) const { return monomials_.at(column); }
  std::size_t size() const { return monomials_.size(); }

 private:
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  std::vector<Monomial> monomials_;
};

/// Throws Errc::indexing if a monomial of p is missing from the index.
SparseVector coeff_vector(const MPoly& p, const MonomialIndex& index);
MPoly from_coeff_vector(Layout layout, const SparseVector& v, const MonomialIndex& index);

}  // namespace shapeforge::multipoly
