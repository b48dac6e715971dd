#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/exactla.hpp"

using namespace shapeforge;
using namespace shapeforge::exactla;

namespace {

SparseVector sparse(const std::vector<long>& dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.emplace_back(i, dense[i]);
  return v;
}

std::vector<std::vector<Rational>> to_dense(const std::vector<SparseVector>& rows, std::size_t cols) {
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols, 0));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, x] : rows[r]) m[r][c] = x;
  return m;
}

std::vector<SparseVector> random_rows(std::mt19937& rng, std::size_t n, std::size_t cols, int density) {
  std::uniform_int_distribution<int> val(-4, 4), keep(0, 9);
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> d(cols, 0);
    for (auto& x : d)
      if (keep(rng) < density) x = val(rng);
    rows.push_back(sparse(d));
  }
  // make some rows dependent
  if (n >= 3) {
    std::vector<Rational> acc;
    SparseVector combo;
    std::map<std::size_t, Integer> sum;
    for (const auto& [c, x] : rows[0]) sum[c] += 2 * x;
    for (const auto& [c, x] : rows[1]) sum[c] -= 3 * x;
    for (const auto& [c, x] : sum)
      if (x != 0) combo.emplace_back(c, x);
    rows[n - 1] = combo;
  }
  return rows;
}

}  // namespace

TEST_CASE("try_extend examples") {
  SparseIntMatrix m(2);
  CHECK(m.try_extend(sparse({1, 0})) == ExtendResult::Extended);
  CHECK(m.try_extend(sparse({0, 0})) == ExtendResult::InSpan);
  CHECK(m.try_extend(sparse({0, 1})) == ExtendResult::Extended);
  CHECK(m.try_extend(sparse({3, -7})) == ExtendResult::InSpan);
  CHECK(m.rank() == 2);
  CHECK(m.rows().size() == 2);
}

TEST_CASE("rank examples") {
  CHECK(rank({sparse({1, 0, 0}), sparse({0, 1, 0}), sparse({0, 0, 1})}, 3) == 3);
  CHECK(rank({sparse({2, 5}), sparse({2, 5})}, 2) == 1);
  CHECK(rank({sparse({1, 2}), sparse({2, 4}), sparse({0, 1})}, 2) == 2);
}

TEST_CASE("column space is checked") {
  SparseIntMatrix m(2);
  try {
    m.try_extend(SparseVector{{5, 1}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::column_space_mismatch);
  }
  m.grow_columns(6);
  CHECK(m.try_extend(SparseVector{{5, 1}}) == ExtendResult::Extended);
  CHECK_THROWS_AS(m.try_extend(SparseVector{{1, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(m.try_extend(SparseVector{{1, 0}}), Error);
}

TEST_CASE("make_primitive") {
  SparseVector v{{1, -4}, {3, 6}};
  make_primitive(v);
  CHECK(v == SparseVector{{1, 2}, {3, -3}});
}

TEST_CASE("rank agrees with dense rational elimination") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t cols = 2 + trial % 9;
    const std::size_t n = 1 + trial % 12;
    const auto rows = random_rows(rng, n, cols, 3 + trial % 5);
    SparseIntMatrix m(cols);
    std::size_t extended = 0;
    for (const auto& r : rows) extended += m.try_extend(r) == ExtendResult::Extended;
    const std::size_t expect = oracle::dense_rank(to_dense(rows, cols));
    CHECK(m.rank() == expect);
    CHECK(extended == expect);
    // every row is now in the span
    for (const auto& r : rows) CHECK(m.reduce(r).empty());
    // echelon entries stay integral and primitive
    for (const auto& e : m.echelon()) {
      Integer g = 0;
      for (const auto& [c, x] : e) g = gcd(g, x);
      CHECK(g == 1);
    }
  }
}

TEST_CASE("final rank and membership do not depend on insertion order") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto rows = random_rows(rng, 8, 7, 4);
    std::vector<long> probe_dense(7);
    std::uniform_int_distribution<int> val(-3, 3);
    for (auto& x : probe_dense) x = val(rng);
    const SparseVector probe = sparse(probe_dense);
    SparseIntMatrix a(7);
    for (const auto& r : rows) a.try_extend(r);
    std::shuffle(rows.begin(), rows.end(), rng);
    SparseIntMatrix b(7);
    for (const auto& r : rows) b.try_extend(r);
    CHECK(a.rank() == b.rank());
    CHECK(a.reduce(probe).empty() == b.reduce(probe).empty());
  }
}

TEST_CASE("large entries stay exact") {
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 3, 200);
  SparseIntMatrix m(2);
  m.try_extend(SparseVector{{0, big}, {1, big + 1}});
  CHECK(m.try_extend(SparseVector{{0, big * 7}, {1, (big + 1) * 7}}) == ExtendResult::InSpan);
  CHECK(m.try_extend(SparseVector{{0, big}, {1, big + 2}}) == ExtendResult::Extended);
}
