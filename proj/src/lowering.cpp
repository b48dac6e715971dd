#include <algorithm>

#include "shapeforge/enumerate.hpp"
#include "shapeforge/error.hpp"

namespace shapeforge::enumerate {

using multipoly::SlaterKey;

bool in_lowering_kernel(const SlaterCoords& v, int particles, int dims) {
  for (int c = 0; c < dims; ++c)
    for (int j = 1; j <= particles; ++j)
      if (!multipoly::lower_elementary(v, particles, dims, c, j).empty()) return false;
  return true;
}

std::vector<KernelVector> lowering_kernel(int particles, const Multidegree& md) {
  const int dims = static_cast<int>(md.size());
  const auto basis = multipoly::slater_basis(particles, md);

  // image of basis[i] under all e_j(Tbar_c), columns tagged by (c, j)
  ColumnRegistry images;
  std::vector<SparseVector> rows;
  rows.reserve(basis.size());
  for (const auto& s : basis) {
    const SlaterCoords unit{{s.key(), Integer(1)}};
    SlaterCoords tagged;
    for (int c = 0; c < dims; ++c)
      for (int j = 1; j <= particles; ++j)
        for (auto& [key, coef] : multipoly::lower_elementary(unit, particles, dims, c, j)) {
          SlaterKey k = key;
          k.push_back(static_cast<multipoly::Exponent>(c));
          k.push_back(static_cast<multipoly::Exponent>(j));
          tagged.emplace_back(std::move(k), coef);
        }
    rows.push_back(images.to_sparse(tagged));
  }

  const std::size_t t = images.keys.size();
  exactla::SparseIntMatrix echelon(t + basis.size(), false);
  std::vector<KernelVector> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    SparseVector row = std::move(rows[i]);
    row.emplace_back(t + i, Integer(1));
    SparseVector rest = echelon.reduce(std::move(row));
    if (rest.front().first < t) {
      echelon.try_extend(std::move(rest));
      continue;
    }
    exactla::make_primitive(rest);
    KernelVector kv{basis[i], {}};
    for (auto& [col, coef] : rest) kv.coords.emplace_back(basis[col - t].key(), std::move(coef));
    std::sort(kv.coords.begin(), kv.coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(kv));
  }
  return out;
}

exactla::ExtendResult ShapeSpan::try_extend(const SlaterCoords& v, const Multidegree& md) {
  Block& b = blocks_[md];
  SparseVector row;
  row.reserve(v.size());
  for (const auto& [key, c] : v) {
    auto [it, inserted] = b.columns.try_emplace(key, b.columns.size());
    row.emplace_back(it->second, c);
  }
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  b.matrix.grow_columns(b.columns.size());
  return b.matrix.try_extend(std::move(row));
}

std::size_t ShapeSpan::rank(const Multidegree& md) const {
  auto it = blocks_.find(md);
  return it == blocks_.end() ? 0 : it->second.matrix.rank();
}

}  // namespace shapeforge::enumerate
