#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "shapeforge/error.hpp"
#include "shapeforge/qseries.hpp"

using namespace shapeforge;
using namespace shapeforge::qseries;

namespace {

QPoly from_dense(const oracle::Dense& d) { return QPoly(d); }

// Quotient of Eq.-style product by schoolbook division.
oracle::Dense c_oracle(int n, int k) {
  oracle::Dense num{1};
  for (int i = n - k + 1; i <= n; ++i) num = oracle::mul(num, oracle::one_minus_q_pow(i));
  bool exact = false;
  auto q = oracle::long_divide(num, oracle::one_minus_q_pow(k), exact);
  REQUIRE(exact);
  return q;
}

}  // namespace

TEST_CASE("c_poly examples") {
  CHECK(c_poly(3, 1) == QPoly{1, 1, 1});
  CHECK(c_poly(3, 3) == QPoly{1, -1, -1, 1});
  CHECK(c_poly(1, 1) == QPoly::one());
}

TEST_CASE("c_poly agrees with long division and has the expected degree") {
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto c = c_poly(n, k);
      CHECK(c == from_dense(c_oracle(n, k)));
      CHECK(c.degree() == k * (2 * n - k - 1) / 2);
    }
}

TEST_CASE("c_poly rejects out-of-range k") {
  CHECK_THROWS_AS(c_poly(3, 0), Error);
  CHECK_THROWS_AS(c_poly(3, 4), Error);
}

TEST_CASE("shape polynomials for three particles in three dimensions") {
  const auto f = shape_poly(3, 3, Statistics::Fermion);
  const auto b = shape_poly(3, 3, Statistics::Boson);
  CHECK(f == QPoly{0, 0, 3, 10, 6, 6, 7, 3, 0, 1});
  CHECK(b == QPoly{1, 0, 3, 7, 6, 6, 10, 3});
  CHECK(f.to_string() == "3q^2 + 10q^3 + 6q^4 + 6q^5 + 7q^6 + 3q^7 + q^9");
  CHECK(b.to_string() == "1 + 3q^2 + 7q^3 + 6q^4 + 6q^5 + 10q^6 + 3q^7");
}

TEST_CASE("two-particle closed form") {
  // ((1+q)^d -+ (1-q)^d) / 2
  for (int d = 1; d <= 6; ++d) {
    oracle::Dense plus{1}, minus{1};
    for (int i = 0; i < d; ++i) {
      plus = oracle::mul(plus, {1, 1});
      minus = oracle::mul(minus, {1, -1});
    }
    oracle::Dense fermion(plus.size()), boson(plus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) {
      fermion[i] = (plus[i] - minus[i]) / 2;
      boson[i] = (plus[i] + minus[i]) / 2;
    }
    CAPTURE(d);
    CHECK(shape_poly(2, d, Statistics::Fermion) == from_dense(fermion));
    CHECK(shape_poly(2, d, Statistics::Boson) == from_dense(boson));
  }
  CHECK(shape_poly(2, 3, Statistics::Fermion) == QPoly{0, 3, 0, 1});
  CHECK(shape_poly(2, 2, Statistics::Fermion).to_string() == "2q");
}

TEST_CASE("base cases") {
  for (int d = 1; d <= 5; ++d) {
    CHECK(shape_poly(0, d, Statistics::Fermion) == QPoly::one());
    CHECK(shape_poly(1, d, Statistics::Fermion) == QPoly::one());
    CHECK(shape_poly(1, d, Statistics::Boson) == QPoly::one());
  }
  CHECK(shape_poly(0, 4, Statistics::Fermion).to_string() == "1");
}

TEST_CASE("degree law, coefficient sum, mirror and palindrome") {
  for (int n = 0; n <= 6; ++n)
    for (int d = 1; d <= 5; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      const auto f = shape_poly(n, d, Statistics::Fermion);
      const auto b = shape_poly(n, d, Statistics::Boson);
      const long D = degree_D(d, n);
      if (d % 2 == 1) {
        CHECK(f.degree() == D);
        CHECK(mirror_check(n, d));
      } else {
        CHECK(b.degree() == D);
        CHECK(palindrome_check(n, d));
      }
      Integer nf = factorial(static_cast<unsigned>(n));
      Integer total = 1;
      for (int i = 1; i < d; ++i) total *= nf;
      CHECK(f.coefficient_sum() == total);
      for (const auto& c : f.coefficients()) CHECK(c >= 0);
    }
}

TEST_CASE("recursion stays integral over the tested range") {
  for (int n = 0; n <= 8; ++n)
    for (int d = 1; d <= 6; ++d) {
      CHECK_NOTHROW(shape_poly(n, d, Statistics::Fermion));
      CHECK_NOTHROW(shape_poly(n, d, Statistics::Boson));
    }
}

TEST_CASE("degree_D and ground_grade") {
  CHECK(degree_D(3, 3) == 9);
  CHECK(degree_D(5, 0) == 0);
  CHECK(degree_D(5, 1) == 0);
  CHECK(degree_D(2, 4) == 12);
  CHECK(ground_grade(3, 3) == 2);
  CHECK(ground_grade(4, 1) == 0);
  CHECK(ground_grade(3, 4) == 3);
  CHECK(shape_poly(4, 3, Statistics::Fermion).lowest_power() == 3);
}

TEST_CASE("ground grade matches shell filling on the tested range") {
  for (int d = 1; d <= 5; ++d)
    for (int n = 1; n <= 6; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      CHECK(ground_grade(d, n) == shell_filling_grade(d, n));
    }
}

TEST_CASE("mirror and palindrome examples") {
  CHECK(mirror_check(3, 3));
  CHECK(mirror_check(2, 3));
  CHECK(mirror_check(1, 5));
  CHECK(palindrome_check(2, 2));
  CHECK(palindrome_check(3, 2));
  CHECK(palindrome_check(1, 2));
  CHECK_THROWS_AS(mirror_check(3, 2), Error);
  CHECK_THROWS_AS(palindrome_check(3, 3), Error);
}

TEST_CASE("ze_series") {
  CHECK(ze_series(1, 4).coefficients() == std::vector<Integer>{1, 1, 1, 1, 1});
  CHECK(ze_series(2, 4).coefficients() == std::vector<Integer>{1, 1, 2, 2, 3});
  CHECK(ze_series(3, 3).coefficients() == std::vector<Integer>{1, 1, 2, 3});
  CHECK_THROWS_AS(ze_series(3, 3)[4], Error);
}

TEST_CASE("state counts") {
  const auto z = state_count_series(3, 3, 9);
  CHECK(z[9] == 3838);
  CHECK(z[2] == 3);
  CHECK(z.coefficients() == std::vector<Integer>{0, 0, 3, 19, 63, 180, 443, 978, 1998, 3838});
  for (int d = 1; d <= 5; ++d) CHECK(state_count_series(1, d, 0)[0] == 1);
  CHECK(state_count_series(1, 1, 3).coefficients() == std::vector<Integer>{1, 1, 1, 1});
  CHECK(state_count_series(2, 1, 3).coefficients() == std::vector<Integer>{0, 1, 1, 2});
}

TEST_CASE("state counts match brute-force distinct-tuple sets") {
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 3; ++d) {
      const auto z = state_count_series(n, d, 10);
      for (unsigned g = 0; g <= 10; ++g) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(g);
        CHECK(z[g] == oracle::count_distinct_tuple_sets(n, d, g));
      }
    }
}

TEST_CASE("entropy") {
  CHECK(shape_entropy(3, 3, 9) == 0.0);
  CHECK(shape_entropy(3, 3, 2) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(shape_entropy(3, 3, 3) == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK_THROWS_AS(shape_entropy(3, 3, 8), Error);
  try {
    shape_entropy(3, 3, 8);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_shape_at_grade);
  }
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 400);
  CHECK(log_integer(big) == doctest::Approx(400 * std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("QPoly arithmetic") {
  const QPoly a{1, 1};
  const QPoly b{1, -1};
  CHECK(a * b == QPoly{1, 0, -1});
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  CHECK((a * b).divide_exact(b) == a);
  CHECK_THROWS_AS(QPoly({1, 0, 1}).divide_exact(a), Error);
  CHECK(QPoly{}.to_string() == "0");
  CHECK(QPoly{0, -1, 2}.to_string() == "-q + 2q^2");
}

TEST_CASE("no shapes one grade below the top for odd d") {
  for (int d : {1, 3, 5})
    for (int n = 2; n <= 6; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      const auto p = shape_poly(n, d, Statistics::Fermion);
      const long top = degree_D(d, n);
      CHECK(p.degree() == top);
      CHECK(p[static_cast<std::size_t>(top - 1)] == 0);
    }
}
