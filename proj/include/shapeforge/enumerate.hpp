#pragma once

/**
 * @file enumerate.hpp
 * @brief Shape generation by descent from the source shape.
 *
 * Grades are visited from D(d,N) = dN(N-1)/2 downward. At each grade the
 * candidates are symmetrized lowering words applied to shapes already found,
 * in (shape id, word index) order.
 *
 * Shapes are kept inside the lowering kernel: antisymmetric polynomials killed
 * by every e_j(Tbar_c). That kernel is the orthogonal complement of the
 * symmetric multiples e_{c,j} * A, so a kernel candidate is new modulo those
 * multiples and the accepted shapes exactly when it is independent of the
 * accepted shapes of its multidegree. The source shape lies in the kernel and
 * pure down-shift words commute with every e_j(Tbar_c), so descent stays in
 * it; candidates that leave it are rejected. If the words do not produce the
 * number of shapes the shape polynomial predicts, kernel basis vectors fill
 * the deficit.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shapeforge/exactla.hpp"
#include "shapeforge/integer.hpp"
#include "shapeforge/multipoly.hpp"
#include "shapeforge/qseries.hpp"
#include "shapeforge/shiftops.hpp"
#include "shapeforge/slater.hpp"

namespace shapeforge::enumerate {

using multipoly::MPoly;
using multipoly::SlaterCoords;
using multipoly::SlaterIndex;
using shiftops::SymWord;
using Multidegree = std::vector<std::uint64_t>;

// ---------------------------------------------------------------------------
// Vocabulary

struct VocabularyConfig {
  int max_letters = 4;
  unsigned max_amount = 3;
  int max_drop = 4;
};

struct Vocabulary {
  int dims = 0;
  VocabularyConfig config;
  std::vector<SymWord> words;
};

/// Words over d coordinates, one shift segment per coordinate, ordered by
/// (|net grade|, length, letters). Each segment is Down(b), Up(a), or
/// Up(a) Down(b); any product of letters on a single variable reduces to one
/// of these.
Vocabulary build_vocabulary(int dims, const VocabularyConfig& config = {});

/// A lone Down letter of amount 1; these annihilate every shape.
bool is_unit_lowering(const SymWord& w);

// ---------------------------------------------------------------------------
// Shapes and the branching tree

struct Provenance {
  enum class Kind { Root, Word, Oracle };
  Kind kind = Kind::Root;
  std::size_t parent = 0;
  SymWord word;
  /// apply(word, parent) == sign * content * poly
  Integer content = 1;
  int sign = 1;
  std::optional<SlaterIndex> oracle;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ShapeRecord {
  std::size_t id = 0;
  long grade = 0;
  MPoly poly;
  Provenance provenance;
  double entropy = 0.0;

  friend bool operator==(const ShapeRecord&, const ShapeRecord&) = default;
};

struct TreeEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  SymWord word;
  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

/// A rejected candidate that reproduced an accepted shape up to content.
/// relative_sign compares the word's image with the tree's phase of `to`.
struct ExtraEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  SymWord word;
  int relative_sign = 1;
  friend bool operator==(const ExtraEdge&, const ExtraEdge&) = default;
};

struct BranchingTree {
  std::size_t root = 0;
  std::vector<TreeEdge> edges;
  std::vector<ExtraEdge> extra_edges;
  friend bool operator==(const BranchingTree&, const BranchingTree&) = default;
};

/// Phase of each shape relative to its tree path from the root.
std::vector<int> tree_signs(const std::vector<ShapeRecord>& shapes);

// ---------------------------------------------------------------------------
// Run report

struct GradeSummary {
  long grade = 0;
  Integer expected = 0;
  std::size_t by_descent = 0;
  std::size_t by_oracle = 0;
  std::size_t candidates = 0;
};

struct FallbackEvent {
  long grade = 0;
  std::size_t deficit = 0;
  std::vector<std::size_t> shapes;
};

struct AuditEntry {
  enum class Decision { Accepted, InSpan, Zero, Duplicate, OutsideKernel };
  long grade = 0;
  std::size_t parent = 0;
  std::size_t word_index = 0;
  Decision decision = Decision::Zero;
  std::optional<std::size_t> shape;
};

struct RunReport {
  int particles = 0;
  int dims = 0;
  std::vector<GradeSummary> grades;  // descending grade
  std::vector<FallbackEvent> fallbacks;
  std::vector<AuditEntry> audit;
  std::vector<std::string> warnings;
  Integer expected_total = 0;
  double seconds = 0.0;
};

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerateConfig {
  VocabularyConfig vocabulary;
  /// Keep evaluating candidates after a grade is full, to find extra edges.
  bool detect_extra_edges = true;
  int threads = 1;
  /// Called once per finished grade with a one-line summary.
  std::function<void(const std::string&)> progress;
};

struct Enumeration {
  std::vector<ShapeRecord> shapes;
  BranchingTree tree;
  RunReport report;
};

Enumeration enumerate_shapes(int particles, int dims, const EnumerateConfig& config = {});

// ---------------------------------------------------------------------------
// Lowering kernel

/// True iff e_j(Tbar_c) annihilates v for every coordinate c and 1 <= j <= N.
/// Under the coefficient inner product this kernel is the orthogonal
/// complement of the symmetric multiples e_{c,j} * A.
bool in_lowering_kernel(const SlaterCoords& v, int particles, int dims);

struct KernelVector {
  /// Basis element whose coordinate is the last nonzero one of `coords`.
  SlaterIndex seed;
  SlaterCoords coords;
};

/// Basis of the lowering kernel in one multidegree, in seed order.
std::vector<KernelVector> lowering_kernel(int particles, const Multidegree& md);

/// Linear span of accepted shapes, one block per multidegree.
class ShapeSpan {
 public:
  exactla::ExtendResult try_extend(const SlaterCoords& v, const Multidegree& md);
  std::size_t rank(const Multidegree& md) const;

 private:
  struct Block {
    std::unordered_map<multipoly::SlaterKey, std::size_t, multipoly::SlaterKeyHash> columns;
    exactla::SparseIntMatrix matrix;
  };
  std::map<Multidegree, Block> blocks_;
};

// ---------------------------------------------------------------------------
// Module span and completeness

/// Columns of a module-span matrix: Slater keys in order of first appearance.
struct ColumnRegistry {
  std::unordered_map<multipoly::SlaterKey, std::size_t, multipoly::SlaterKeyHash> index;
  std::vector<multipoly::SlaterKey> keys;

  std::size_t column(const multipoly::SlaterKey& key);
  SparseVector to_sparse(const SlaterCoords& v);
};

/// One product m(e) * shape, in Slater coordinates.
struct SpanRow {
  std::size_t shape = 0;
  /// Exponent of generator e_{c,j} at index c*N + (j-1).
  std::vector<unsigned> generators;
  long grade = 0;
  SlaterCoords coords;
};

/// Visits m(e) * shape for every generator monomial with total grade <= max_grade.
void for_each_span_row(const std::vector<ShapeRecord>& shapes, int particles, int dims,
                       long max_grade, const std::function<void(SpanRow&&)>& visit);

/// Rows m(e) * Psi with deg m(e) + grade(Psi) == grade, over Slater columns.
exactla::SparseIntMatrix module_span_matrix(long grade, const std::vector<ShapeRecord>& shapes,
                                            int particles, int dims);

struct CompletenessRow {
  long grade = 0;
  std::size_t rank = 0;
  std::size_t rows = 0;
  Integer expected = 0;
};

struct CompletenessReport {
  std::vector<CompletenessRow> grades;  // ascending
};

/// Checks module rank == Z_d(N,q) coefficient for every grade 0..max_grade
/// (default D(d,N)); throws Errc::incomplete at the first deficit.
CompletenessReport verify_completeness(int particles, int dims,
                                       const std::vector<ShapeRecord>& shapes,
                                       std::optional<long> max_grade = std::nullopt);

// ---------------------------------------------------------------------------
// Sign conflict

struct SignConflict {
  MPoly lhs;
  MPoly rhs;
  int relative_sign = 0;
};

/// Both sides of the N=3, d=3 branching conflict:
/// (v[-1]t[-2])(u[-1]t[-1]) S against (u[-1]t[-2])(v[-1]t[-1]) S.
SignConflict verify_sign_conflict(int particles = 3, int dims = 3);

// ---------------------------------------------------------------------------
// Free-module coordinates

/// Polynomial in the generators e_{c,j}; key layout as in SpanRow::generators.
struct SymmetricPoly {
  std::map<std::vector<unsigned>, Rational> terms;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const SymmetricPoly&, const SymmetricPoly&) = default;
};

/// Evaluates a generator polynomial as an ordinary polynomial.
MPoly evaluate(const SymmetricPoly& phi, multipoly::Layout layout);
MPoly generator_monomial(const std::vector<unsigned>& generators, multipoly::Layout layout);

/// Phi_i with psi == sum_i Phi_i * shape_i. Requires psi antisymmetric and
/// homogeneous of grade <= verified_grade.
std::vector<SymmetricPoly> express_in_basis(const MPoly& psi,
                                            const std::vector<ShapeRecord>& shapes,
                                            long verified_grade);
/// sum_i Phi_i * shape_i; denominators must cancel.
MPoly assemble(const std::vector<SymmetricPoly>& components,
               const std::vector<ShapeRecord>& shapes, multipoly::Layout layout);

}  // namespace shapeforge::enumerate
