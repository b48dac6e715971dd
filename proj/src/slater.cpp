#include "shapeforge/slater.hpp"

#include <algorithm>
#include <numeric>

#include "shapeforge/error.hpp"

namespace shapeforge::multipoly {

namespace {

// Lexicographic comparison of rows a and b inside one flat key.
int compare_rows(const Exponent* a, const Exponent* b, int dims) {
  for (int c = 0; c < dims; ++c) {
    if (a[c] != b[c]) return a[c] < b[c] ? -1 : 1;
  }
  return 0;
}

SlaterCoords merge_terms(std::vector<std::pair<SlaterKey, Integer>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SlaterCoords out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

struct BasisSearch {
  int particles;
  int dims;
  std::vector<std::vector<Exponent>> tuples;  // strictly decreasing lex
  std::vector<std::size_t> chosen;
  std::vector<SlaterIndex> out;

  void run(std::vector<std::uint64_t> remaining, std::size_t start) {
    const int depth = static_cast<int>(chosen.size());
    if (depth + 1 == particles) {
      // the last row is forced: it must equal the remaining budget
      std::vector<Exponent> last(remaining.begin(), remaining.end());
      auto it = std::lower_bound(tuples.begin() + static_cast<long>(start), tuples.end(), last,
                                 [](const auto& a, const auto& b) { return a > b; });
      if (it == tuples.end() || *it != last) return;
      SlaterKey key;
      key.reserve(static_cast<std::size_t>(particles) * dims);
      for (std::size_t i : chosen) key.insert(key.end(), tuples[i].begin(), tuples[i].end());
      key.insert(key.end(), last.begin(), last.end());
      out.push_back(SlaterIndex::from_key(particles, dims, std::move(key)));
      return;
    }
    for (std::size_t i = start; i < tuples.size(); ++i) {
      const auto& t = tuples[i];
      bool fits = true;
      for (int c = 0; c < dims; ++c) fits = fits && t[c] <= remaining[c];
      if (!fits) continue;
      for (int c = 0; c < dims; ++c) remaining[c] -= t[c];
      chosen.push_back(i);
      run(remaining, i + 1);
      chosen.pop_back();
      for (int c = 0; c < dims; ++c) remaining[c] += t[c];
    }
  }
};

}  // namespace

std::size_t SlaterKeyHash::operator()(const SlaterKey& k) const noexcept {
  std::size_t h = 0x9E3779B97F4A7C15ULL;
  for (Exponent e : k) h = (h ^ e) * 0x100000001b3ULL;
  return h;
}

SlaterIndex SlaterIndex::from_rows(int dims, std::vector<std::vector<Exponent>> rows) {
  const int particles = static_cast<int>(rows.size());
  SlaterKey key;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != dims)
      throw Error(Errc::dimension_mismatch, "Slater row length differs from d");
    key.insert(key.end(), r.begin(), r.end());
  }
  if (canonicalize_rows(key, particles, dims) == 0)
    throw Error(Errc::invalid_argument, "Slater rows must be pairwise distinct");
  return SlaterIndex(particles, dims, std::move(key));
}

SlaterIndex SlaterIndex::from_key(int particles, int dims, SlaterKey key) {
  if (key.size() != static_cast<std::size_t>(particles) * dims)
    throw Error(Errc::dimension_mismatch, "Slater key length differs from N*d");
  for (int k = 0; k + 1 < particles; ++k)
    if (compare_rows(key.data() + k * dims, key.data() + (k + 1) * dims, dims) <= 0)
      throw Error(Errc::invalid_argument, "Slater key rows not strictly decreasing");
  return SlaterIndex(particles, dims, std::move(key));
}

std::uint64_t SlaterIndex::grade() const {
  return std::accumulate(key_.begin(), key_.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> SlaterIndex::multidegree() const {
  std::vector<std::uint64_t> md(dims_, 0);
  for (int k = 0; k < particles_; ++k)
    for (int c = 0; c < dims_; ++c) md[c] += key_[static_cast<std::size_t>(k) * dims_ + c];
  return md;
}

Monomial SlaterIndex::leading_monomial() const {
  const Layout layout{particles_, dims_};
  Monomial m(layout);
  for (int k = 0; k < particles_; ++k)
    for (int c = 0; c < dims_; ++c) m(c, k) = key_[static_cast<std::size_t>(k) * dims_ + c];
  return m;
}

int canonicalize_rows(SlaterKey& key, int particles, int dims) {
  int sign = 1;
  Exponent* base = key.data();
  // insertion sort into strictly decreasing order, counting swaps
  for (int i = 1; i < particles; ++i) {
    for (int j = i; j > 0; --j) {
      Exponent* hi = base + (j - 1) * dims;
      Exponent* lo = base + j * dims;
      const int cmp = compare_rows(hi, lo, dims);
      if (cmp == 0) return 0;
      if (cmp > 0) break;
      std::swap_ranges(hi, hi + dims, lo);
      sign = -sign;
    }
  }
  return sign;
}

std::vector<SlaterIndex> slater_basis(int particles, std::span<const std::uint64_t> multidegree) {
  const int dims = static_cast<int>(multidegree.size());
  if (particles < 1 || dims < 1) throw Error(Errc::invalid_argument, "Slater basis needs N, d >= 1");
  BasisSearch search{particles, dims, {}, {}, {}};
  // all tuples bounded by the multidegree, strictly decreasing lex
  std::vector<Exponent> t(dims, 0);
  while (true) {
    search.tuples.push_back(t);
    int c = dims - 1;
    while (c >= 0 && t[c] == multidegree[c]) t[c--] = 0;
    if (c < 0) break;
    ++t[c];
  }
  std::reverse(search.tuples.begin(), search.tuples.end());
  search.run(std::vector<std::uint64_t>(multidegree.begin(), multidegree.end()), 0);
  std::sort(search.out.begin(), search.out.end());
  return std::move(search.out);
}

std::vector<SlaterIndex> slater_basis(int particles, int dims, std::uint64_t grade) {
  if (dims < 1) throw Error(Errc::invalid_argument, "Slater basis needs d >= 1");
  std::vector<SlaterIndex> out;
  std::vector<std::uint64_t> md(dims, 0);
  // every composition of the grade into d parts
  auto rec = [&](auto&& self, int c, std::uint64_t left) -> void {
    if (c == dims - 1) {
      md[c] = left;
      auto part = slater_basis(particles, md);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
      return;
    }
    for (std::uint64_t x = 0; x <= left; ++x) {
      md[c] = x;
      self(self, c + 1, left - x);
    }
  };
  rec(rec, 0, grade);
  std::sort(out.begin(), out.end());
  return out;
}

MPoly antisymmetrize(const SlaterIndex& s) {
  const int n = s.particles();
  const Layout layout{n, s.dims()};
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MPoly::Builder out(layout);
  std::vector<Exponent> e(layout.variables());
  const Integer plus = 1;
  const Integer minus = -1;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    // row k goes to particle perm[k]
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < s.dims(); ++c) e[layout.index(c, perm[k])] = s.row(k)[c];
    out.add(e, inversions % 2 == 0 ? plus : minus);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::move(out).finish();
}

SlaterCoords project_to_slater(const MPoly& p) {
  const Layout layout = p.layout();
  const int n = layout.particles;
  const int d = layout.dims;
  std::vector<std::pair<SlaterKey, Integer>> terms;
  SlaterKey key(static_cast<std::size_t>(n) * d);
  for (std::size_t t = 0; t < p.size(); ++t) {
    auto e = p.exponents(t);
    for (int k = 0; k < n; ++k)
      for (int c = 0; c < d; ++c) key[static_cast<std::size_t>(k) * d + c] = e[layout.index(c, k)];
    bool canonical = true;
    for (int k = 0; k + 1 < n && canonical; ++k)
      canonical = compare_rows(key.data() + k * d, key.data() + (k + 1) * d, d) > 0;
    if (canonical) terms.emplace_back(key, p.coefficient(t));
  }
  return merge_terms(std::move(terms));
}

MPoly from_slater(Layout layout, const SlaterCoords& coords) {
  std::vector<MPoly> parts;
  parts.reserve(coords.size());
  for (const auto& [key, c] : coords)
    parts.push_back(antisymmetrize(SlaterIndex::from_key(layout.particles, layout.dims, key)).scale(c));
  return sum(std::move(parts), layout);
}

SlaterCoords multiply_elementary(const SlaterCoords& a, int particles, int dims, int coordinate,
                                 int j) {
  if (j < 1 || j > particles) throw Error(Errc::invalid_argument, "e_j requires 1 <= j <= N");
  if (coordinate < 0 || coordinate >= dims)
    throw Error(Errc::out_of_range, "coordinate outside [0, d)");
  std::vector<std::pair<SlaterKey, Integer>> terms;
  std::vector<bool> pick(particles, false);
  for (const auto& [key, coef] : a) {
    std::fill(pick.begin(), pick.end(), false);
    std::fill(pick.begin(), pick.begin() + j, true);
    do {
      SlaterKey shifted = key;
      for (int k = 0; k < particles; ++k)
        if (pick[k]) ++shifted[static_cast<std::size_t>(k) * dims + coordinate];
      const int sign = canonicalize_rows(shifted, particles, dims);
      if (sign == 0) continue;
      terms.emplace_back(std::move(shifted), sign > 0 ? coef : Integer(-coef));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return merge_terms(std::move(terms));
}

SlaterCoords lower_elementary(const SlaterCoords& a, int particles, int dims, int coordinate,
                              int j) {
  if (j < 1 || j > particles) throw Error(Errc::invalid_argument, "e_j requires 1 <= j <= N");
  if (coordinate < 0 || coordinate >= dims)
    throw Error(Errc::out_of_range, "coordinate outside [0, d)");
  std::vector<std::pair<SlaterKey, Integer>> terms;
  std::vector<bool> pick(particles, false);
  for (const auto& [key, coef] : a) {
    std::fill(pick.begin(), pick.end(), false);
    std::fill(pick.begin(), pick.begin() + j, true);
    do {
      SlaterKey shifted = key;
      bool alive = true;
      for (int k = 0; k < particles && alive; ++k) {
        if (!pick[k]) continue;
        auto& e = shifted[static_cast<std::size_t>(k) * dims + coordinate];
        if (e == 0)
          alive = false;
        else
          --e;
      }
      if (!alive) continue;
      const int sign = canonicalize_rows(shifted, particles, dims);
      if (sign == 0) continue;
      terms.emplace_back(std::move(shifted), sign > 0 ? coef : Integer(-coef));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return merge_terms(std::move(terms));
}

}  // namespace shapeforge::multipoly
