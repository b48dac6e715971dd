#include <algorithm>

#include "shapeforge/enumerate.hpp"
#include "shapeforge/error.hpp"

namespace shapeforge::enumerate {

using multipoly::SlaterKey;

std::size_t ColumnRegistry::column(const SlaterKey& key) {
  auto [it, inserted] = index.try_emplace(key, keys.size());
  if (inserted) keys.push_back(key);
  return it->second;
}

SparseVector ColumnRegistry::to_sparse(const SlaterCoords& v) {
  SparseVector out;
  out.reserve(v.size());
  for (const auto& [key, c] : v) out.emplace_back(column(key), c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

struct RowWalker {
  int particles;
  int dims;
  long max_grade;
  const std::function<void(SpanRow&&)>& visit;
  std::size_t shape = 0;
  std::vector<unsigned> generators;

  void walk(const SlaterCoords& coords, long grade, std::size_t start) {
    visit(SpanRow{shape, generators, grade, coords});
    const std::size_t count = static_cast<std::size_t>(particles) * dims;
    for (std::size_t g = start; g < count; ++g) {
      const int c = static_cast<int>(g) / particles;
      const int j = static_cast<int>(g) % particles + 1;
      if (grade + j > max_grade) continue;
      ++generators[g];
      walk(multipoly::multiply_elementary(coords, particles, dims, c, j), grade + j, g);
      --generators[g];
    }
  }
};

}  // namespace

void for_each_span_row(const std::vector<ShapeRecord>& shapes, int particles, int dims,
                       long max_grade, const std::function<void(SpanRow&&)>& visit) {
  RowWalker walker{particles, dims, max_grade, visit, 0,
                   std::vector<unsigned>(static_cast<std::size_t>(particles) * dims, 0)};
  for (const auto& s : shapes) {
    if (s.poly.layout() != multipoly::Layout{particles, dims})
      throw Error(Errc::dimension_mismatch, "shape over a different (N, d)");
    if (s.grade > max_grade) continue;
    walker.shape = s.id;
    walker.walk(multipoly::project_to_slater(s.poly), s.grade, 0);
  }
}

exactla::SparseIntMatrix module_span_matrix(long grade, const std::vector<ShapeRecord>& shapes,
                                            int particles, int dims) {
  ColumnRegistry registry;
  std::vector<SparseVector> rows;
  for_each_span_row(shapes, particles, dims, grade, [&](SpanRow&& row) {
    if (row.grade == grade) rows.push_back(registry.to_sparse(row.coords));
  });
  exactla::SparseIntMatrix m(registry.keys.size());
  for (auto& r : rows) m.try_extend(std::move(r));
  return m;
}

CompletenessReport verify_completeness(int particles, int dims,
                                       const std::vector<ShapeRecord>& shapes,
                                       std::optional<long> max_grade) {
  const long top = max_grade.value_or(qseries::degree_D(dims, particles));
  if (top < 0) throw Error(Errc::invalid_argument, "negative completeness bound");
  const auto counts = qseries::state_count_series(particles, dims, static_cast<std::size_t>(top));
  std::vector<std::vector<SlaterCoords>> by_grade(static_cast<std::size_t>(top) + 1);
  for_each_span_row(shapes, particles, dims, top, [&](SpanRow&& row) {
    by_grade[static_cast<std::size_t>(row.grade)].push_back(std::move(row.coords));
  });
  CompletenessReport report;
  for (long g = 0; g <= top; ++g) {
    auto& rows = by_grade[static_cast<std::size_t>(g)];
    ColumnRegistry registry;
    std::vector<SparseVector> sparse;
    sparse.reserve(rows.size());
    for (const auto& r : rows) sparse.push_back(registry.to_sparse(r));
    rows.clear();
    rows.shrink_to_fit();
    CompletenessRow entry;
    entry.grade = g;
    entry.rows = sparse.size();
    entry.rank = exactla::rank(sparse, registry.keys.size());
    entry.expected = counts[static_cast<std::size_t>(g)];
    report.grades.push_back(entry);
    if (entry.rank != entry.expected)
      throw Error(Errc::incomplete, "module rank " + std::to_string(entry.rank) + " at grade " +
                                        std::to_string(g) + ", expected " +
                                        entry.expected.get_str());
  }
  return report;
}

}  // namespace shapeforge::enumerate
