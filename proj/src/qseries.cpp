#include "shapeforge/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "shapeforge/error.hpp"

namespace shapeforge {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::internal_arithmetic: return "internal-error";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::odd_dimension_required: return "odd-dimension-required";
    case Errc::no_shape_at_grade: return "no-shape-at-grade";
    case Errc::indexing: return "indexing-error";
    case Errc::column_space_mismatch: return "column-space-mismatch";
    case Errc::empty_vocabulary: return "empty-vocabulary";
    case Errc::incomplete: return "incompleteness";
    case Errc::notation_regression: return "notation-regression";
    case Errc::out_of_range: return "out-of-range";
    case Errc::parse: return "parse-error";
  }
  return "unknown";
}

}  // namespace shapeforge

namespace shapeforge::qseries {

namespace {

const Integer& zero_integer() {
  static const Integer z{0};
  return z;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_argument, what);
}

}  // namespace

QPoly::QPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

QPoly::QPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

QPoly QPoly::monomial(const Integer& c, std::size_t power) {
  std::vector<Integer> v(power + 1);
  v[power] = c;
  return QPoly(std::move(v));
}

void QPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> QPoly::lowest_power() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return i;
  return std::nullopt;
}

const Integer& QPoly::operator[](std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : zero_integer();
}

Integer QPoly::coefficient_sum() const {
  Integer s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return QPoly(std::move(r));
}

QPoly QPoly::pow(unsigned exponent) const {
  QPoly result = one();
  QPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

QPoly QPoly::divide_exact(const QPoly& divisor) const {
  if (divisor.is_zero()) throw Error(Errc::internal_arithmetic, "division by the zero polynomial");
  if (is_zero()) return {};
  if (degree() < divisor.degree())
    throw Error(Errc::internal_arithmetic, "polynomial division leaves a remainder");
  std::vector<Integer> rem = coeffs_;
  const std::size_t dn = divisor.coeffs_.size();
  const Integer& lead = divisor.coeffs_.back();
  std::vector<Integer> quot(rem.size() - dn + 1);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const Integer& top = rem[i + dn - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
      throw Error(Errc::internal_arithmetic, "polynomial division is not exact over the integers");
    Integer c = top / lead;
    for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= c * divisor.coeffs_[j];
    quot[i] = std::move(c);
  }
  for (const auto& r : rem)
    if (r != 0) throw Error(Errc::internal_arithmetic, "polynomial division leaves a remainder");
  return QPoly(std::move(quot));
}

QPoly QPoly::divide_exact(const Integer& divisor) const {
  if (divisor == 0) throw Error(Errc::internal_arithmetic, "division by zero");
  std::vector<Integer> r = coeffs_;
  for (auto& c : r) {
    if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t()))
      throw Error(Errc::internal_arithmetic, "coefficient not divisible by " + divisor.get_str());
    c /= divisor;
  }
  return QPoly(std::move(r));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << 'q';
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

QSeries::QSeries(std::size_t truncation, std::vector<Integer> coeffs)
    : truncation_(truncation), coeffs_(std::move(coeffs)) {
  coeffs_.resize(truncation_ + 1);
}

QSeries QSeries::from_poly(const QPoly& p, std::size_t truncation) {
  std::vector<Integer> c(truncation + 1);
  for (std::size_t i = 0; i <= truncation; ++i) c[i] = p[i];
  return QSeries(truncation, std::move(c));
}

const Integer& QSeries::operator[](std::size_t power) const {
  if (power > truncation_)
    throw Error(Errc::out_of_range, "series coefficient beyond truncation order");
  return coeffs_[power];
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::size_t t = std::min(a.truncation_, b.truncation_);
  std::vector<Integer> r(t + 1);
  for (std::size_t i = 0; i <= t; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= t; ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return QSeries(t, std::move(r));
}

QSeries QSeries::pow(unsigned exponent) const {
  std::vector<Integer> one(truncation_ + 1);
  one[0] = 1;
  QSeries result(truncation_, std::move(one));
  for (unsigned i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

QPoly c_poly(int n, int k) {
  require(n >= 1 && k >= 1 && k <= n, "c_poly requires 1 <= k <= N");
  QPoly num = QPoly::one();
  for (int i = n - k + 1; i <= n; ++i) num = num * (QPoly::one() - QPoly::monomial(1, i));
  return num.divide_exact(QPoly::one() - QPoly::monomial(1, k));
}

namespace {

struct ShapeCache {
  std::mutex mutex;
  // (d, statistics) -> P_d(0), P_d(1), ...
  std::map<std::pair<int, Statistics>, std::vector<QPoly>> table;
};

ShapeCache& shape_cache() {
  static ShapeCache cache;
  return cache;
}

}  // namespace

QPoly shape_poly(int n, int d, Statistics stats) {
  require(n >= 0, "shape_poly requires N >= 0");
  require(d >= 1, "shape_poly requires d >= 1");
  auto& cache = shape_cache();
  std::lock_guard lock(cache.mutex);
  auto& seq = cache.table[{d, stats}];
  if (seq.empty()) {
    seq.push_back(QPoly::one());
    seq.push_back(QPoly::one());
  }
  while (static_cast<int>(seq.size()) <= n) {
    const int m = static_cast<int>(seq.size());
    QPoly acc;
    for (int k = 1; k <= m; ++k) {
      QPoly term = c_poly(m, k).pow(static_cast<unsigned>(d)) * seq[m - k];
      const bool negative = stats == Statistics::Fermion && (k % 2 == 0);
      if (negative)
        acc -= term;
      else
        acc += term;
    }
    seq.push_back(acc.divide_exact(Integer(m)));
  }
  return seq[n];
}

long degree_D(int d, int n) {
  require(d >= 1 && n >= 0, "degree_D requires d >= 1 and N >= 0");
  return static_cast<long>(d) * n * (n - 1) / 2;
}

long ground_grade(int d, int n) {
  require(d >= 1 && n >= 1, "ground_grade requires d >= 1 and N >= 1");
  auto low = shape_poly(n, d, Statistics::Fermion).lowest_power();
  if (!low) throw Error(Errc::internal_arithmetic, "fermion shape polynomial vanished");
  return static_cast<long>(*low);
}

long shell_filling_grade(int d, int n) {
  require(d >= 1 && n >= 1, "shell_filling_grade requires d >= 1 and N >= 1");
  // shell s holds C(s+d-1, d-1) distinct d-tuples
  long remaining = n;
  long total = 0;
  for (long s = 0; remaining > 0; ++s) {
    Integer shell;
    mpz_bin_uiui(shell.get_mpz_t(), static_cast<unsigned long>(s + d - 1),
                 static_cast<unsigned long>(d - 1));
    const long take = shell >= remaining ? remaining : shell.get_si();
    total += take * s;
    remaining -= take;
  }
  return total;
}

QSeries ze_series(int n, std::size_t truncation) {
  require(n >= 0, "ze_series requires N >= 0");
  std::vector<Integer> r(truncation + 1);
  r[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (std::size_t i = static_cast<std::size_t>(k); i <= truncation; ++i) r[i] += r[i - k];
  return QSeries(truncation, std::move(r));
}

QSeries state_count_series(int n, int d, std::size_t truncation) {
  require(d >= 1, "state_count_series requires d >= 1");
  QSeries ze = ze_series(n, truncation).pow(static_cast<unsigned>(d));
  return ze * QSeries::from_poly(shape_poly(n, d, Statistics::Fermion), truncation);
}

bool mirror_check(int n, int d) {
  require(d % 2 == 1, "mirror_check requires odd d");
  const QPoly f = shape_poly(n, d, Statistics::Fermion);
  const QPoly b = shape_poly(n, d, Statistics::Boson);
  const long big_d = degree_D(d, n);
  const long g = n >= 1 ? ground_grade(d, n) : 0;
  if (f.degree() != big_d || b.degree() != big_d - g) return false;
  for (long i = 0; i < g; ++i)
    if (f[i] != 0) return false;
  for (long i = 0; i <= big_d - g; ++i)
    if (f[g + i] != b[big_d - g - i]) return false;
  return true;
}

bool palindrome_check(int n, int d) {
  require(d % 2 == 0, "palindrome_check requires even d");
  const QPoly f = shape_poly(n, d, Statistics::Fermion);
  const long big_d = degree_D(d, n);
  const long g = n >= 1 ? ground_grade(d, n) : 0;
  if (f.degree() != big_d - g) return false;
  for (long i = 0; i < g; ++i)
    if (f[i] != 0) return false;
  for (long i = g, j = big_d - g; i < j; ++i, --j)
    if (f[i] != f[j]) return false;
  return true;
}

double log_integer(const Integer& x) {
  if (x <= 0) throw Error(Errc::invalid_argument, "logarithm of a non-positive integer");
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

double shape_entropy(int n, int d, long grade) {
  const QPoly f = shape_poly(n, d, Statistics::Fermion);
  if (grade < 0 || f[static_cast<std::size_t>(grade)] < 1)
    throw Error(Errc::no_shape_at_grade,
                "no fermion shape at grade " + std::to_string(grade));
  return log_integer(f[static_cast<std::size_t>(grade)]);
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace shapeforge::qseries
