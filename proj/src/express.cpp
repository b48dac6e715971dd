#include <algorithm>
#include <map>

#include "shapeforge/enumerate.hpp"
#include "shapeforge/error.hpp"

namespace shapeforge::enumerate {

using multipoly::Layout;
using multipoly::SlaterKey;

namespace {

Multidegree key_multidegree(const SlaterKey& key, int dims) {
  Multidegree md(dims, 0);
  for (std::size_t i = 0; i < key.size(); ++i) md[i % dims] += key[i];
  return md;
}

// Solves sum_r x_r rows[r] = target exactly; free unknowns are set to zero.
std::vector<Rational> solve_block(const std::vector<const SlaterCoords*>& rows,
                                  const SlaterCoords& target) {
  std::map<SlaterKey, std::size_t> eq_of;
  for (const auto* r : rows)
    for (const auto& [key, c] : *r) eq_of.emplace(key, 0);
  for (const auto& [key, c] : target) eq_of.emplace(key, 0);
  std::size_t m = 0;
  for (auto& [key, idx] : eq_of) idx = m++;
  const std::size_t u = rows.size();

  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(u + 1));
  for (std::size_t r = 0; r < u; ++r)
    for (const auto& [key, c] : *rows[r]) a[eq_of[key]][r] = c;
  for (const auto& [key, c] : target) a[eq_of[key]][u] = c;

  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < u && row < m; ++col) {
    std::size_t sel = row;
    while (sel < m && a[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(a[sel], a[row]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t k = col; k <= u; ++k) a[row][k] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t k = col; k <= u; ++k) a[i][k] -= f * a[row][k];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][u] != 0) throw Error(Errc::incomplete, "state lies outside the span of the shapes");
  std::vector<Rational> x(u);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a[i][u];
  return x;
}

}  // namespace

MPoly generator_monomial(const std::vector<unsigned>& generators, Layout layout) {
  if (generators.size() != layout.variables())
    throw Error(Errc::dimension_mismatch, "generator exponent vector has the wrong length");
  MPoly r = MPoly::constant(layout, 1);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g] == 0) continue;
    const int c = static_cast<int>(g) / layout.particles;
    const int j = static_cast<int>(g) % layout.particles + 1;
    const MPoly e = multipoly::elementary_symmetric(layout, c, j);
    for (unsigned k = 0; k < generators[g]; ++k) r = r * e;
  }
  return r;
}

MPoly evaluate(const SymmetricPoly& phi, Layout layout) {
  std::vector<MPoly> parts;
  for (const auto& [gens, coef] : phi.terms) {
    if (coef.get_den() != 1)
      throw Error(Errc::invalid_argument, "generator polynomial has a fractional coefficient");
    parts.push_back(generator_monomial(gens, layout).scale(coef.get_num()));
  }
  return multipoly::sum(std::move(parts), layout);
}

std::vector<SymmetricPoly> express_in_basis(const MPoly& psi,
                                            const std::vector<ShapeRecord>& shapes,
                                            long verified_grade) {
  const Layout layout = psi.layout();
  for (std::size_t i = 0; i < shapes.size(); ++i)
    if (shapes[i].id != i) throw Error(Errc::invalid_argument, "shape ids must be dense");
  std::vector<SymmetricPoly> out(shapes.size());
  if (psi.is_zero()) return out;
  const auto grade = psi.grade();
  if (!grade) throw Error(Errc::invalid_argument, "state must be homogeneous");
  if (static_cast<long>(*grade) > verified_grade)
    throw Error(Errc::out_of_range, "grade " + std::to_string(*grade) +
                                        " exceeds the verified completeness bound");
  if (!multipoly::is_antisymmetric(psi))
    throw Error(Errc::invalid_argument, "state must be antisymmetric");

  std::map<Multidegree, SlaterCoords> target;
  for (auto& term : multipoly::project_to_slater(psi))
    target[key_multidegree(term.first, layout.dims)].push_back(std::move(term));

  std::vector<SpanRow> rows;
  for_each_span_row(shapes, layout.particles, layout.dims, static_cast<long>(*grade),
                    [&](SpanRow&& row) {
                      if (row.grade != static_cast<long>(*grade) || row.coords.empty()) return;
                      if (!target.contains(key_multidegree(row.coords.front().first, layout.dims)))
                        return;
                      rows.push_back(std::move(row));
                    });

  for (const auto& [md, part] : target) {
    std::vector<const SlaterCoords*> block;
    std::vector<const SpanRow*> owners;
    for (const auto& r : rows) {
      if (key_multidegree(r.coords.front().first, layout.dims) != md) continue;
      block.push_back(&r.coords);
      owners.push_back(&r);
    }
    const auto x = solve_block(block, part);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      auto& terms = out[owners[i]->shape].terms;
      Rational& slot = terms[owners[i]->generators];
      slot += x[i];
      if (slot == 0) terms.erase(owners[i]->generators);
    }
  }
  return out;
}

MPoly assemble(const std::vector<SymmetricPoly>& components,
               const std::vector<ShapeRecord>& shapes, Layout layout) {
  if (components.size() != shapes.size())
    throw Error(Errc::dimension_mismatch, "one component per shape is required");
  Integer denom = 1;
  for (const auto& phi : components)
    for (const auto& [gens, coef] : phi.terms)
      mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), coef.get_den_mpz_t());
  std::vector<MPoly> parts;
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (const auto& [gens, coef] : components[i].terms) {
      const Integer scaled = coef.get_num() * (denom / coef.get_den());
      parts.push_back((generator_monomial(gens, layout) * shapes[i].poly).scale(scaled));
    }
  }
  MPoly total = multipoly::sum(std::move(parts), layout);
  return denom == 1 ? total : total.divide_exact(denom);
}

}  // namespace shapeforge::enumerate
