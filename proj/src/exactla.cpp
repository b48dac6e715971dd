#include "shapeforge/exactla.hpp"

#include "shapeforge/error.hpp"

namespace shapeforge::exactla {

namespace {

// a*v - b*r, both sorted by column.
SparseVector combine(const Integer& a, const SparseVector& v, const Integer& b,
                     const SparseVector& r) {
  SparseVector out;
  out.reserve(v.size() + r.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Integer x;
  while (i < v.size() || j < r.size()) {
    if (j == r.size() || (i < v.size() && v[i].first < r[j].first)) {
      out.emplace_back(v[i].first, a * v[i].second);
      ++i;
    } else if (i == v.size() || r[j].first < v[i].first) {
      out.emplace_back(r[j].first, -(b * r[j].second));
      ++j;
    } else {
      x = a * v[i].second;
      x -= b * r[j].second;
      if (x != 0) out.emplace_back(v[i].first, x);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

void make_primitive(SparseVector& v) {
  if (v.empty()) return;
  Integer g = 0;
  for (const auto& [col, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g == 1) return;
  for (auto& [col, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void SparseIntMatrix::grow_columns(std::size_t columns) {
  if (columns > columns_) columns_ = columns;
}

void SparseIntMatrix::check(const SparseVector& v) const {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].first >= columns_)
      throw Error(Errc::column_space_mismatch, "entry outside the matrix column space");
    if (i > 0 && v[i - 1].first >= v[i].first)
      throw Error(Errc::invalid_argument, "sparse vector columns must increase strictly");
    if (v[i].second == 0) throw Error(Errc::invalid_argument, "sparse vector stores a zero");
  }
}

SparseVector SparseIntMatrix::reduce(SparseVector v) const {
  check(v);
  make_primitive(v);
  Integer g;
  Integer a;
  Integer b;
  while (!v.empty()) {
    auto it = pivot_of_column_.find(v.front().first);
    if (it == pivot_of_column_.end()) break;
    const SparseVector& r = echelon_[it->second];
    mpz_gcd(g.get_mpz_t(), r.front().second.get_mpz_t(), v.front().second.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), r.front().second.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), v.front().second.get_mpz_t(), g.get_mpz_t());
    v = combine(a, v, b, r);
    make_primitive(v);
  }
  return v;
}

ExtendResult SparseIntMatrix::try_extend(SparseVector candidate) {
  SparseVector original;
  if (keep_rows_) original = candidate;
  SparseVector r = reduce(std::move(candidate));
  if (r.empty()) return ExtendResult::InSpan;
  pivot_of_column_.emplace(r.front().first, echelon_.size());
  echelon_.push_back(std::move(r));
  if (keep_rows_) rows_.push_back(std::move(original));
  return ExtendResult::Extended;
}

std::size_t rank(const std::vector<SparseVector>& rows, std::size_t columns) {
  SparseIntMatrix m(columns, false);
  for (const auto& r : rows) m.try_extend(r);
  return m.rank();
}

}  // namespace shapeforge::exactla
