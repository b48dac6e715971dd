#include "shapeforge/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "shapeforge/error.hpp"

namespace shapeforge::multipoly {

namespace {

constexpr char kLetters[kMaxLetterDims + 1] = "tuvwxyz";

bool lex_less(std::span<const Exponent> a, std::span<const Exponent> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void require_same_layout(Layout a, Layout b) {
  if (!(a == b)) throw Error(Errc::dimension_mismatch, "polynomials over different (N, d)");
}

std::size_t hash_exponents(std::span<const Exponent> exps) noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Exponent e : exps) {
    h ^= e;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Merge two canonical term lists, scaling the second by `sign`.
MPoly merge(const MPoly& a, const MPoly& b, int sign) {
  const Layout layout = a.layout();
  const std::size_t w = layout.variables();
  std::vector<Exponent> exps;
  std::vector<Integer> coefs;
  exps.reserve((a.size() + b.size()) * w);
  coefs.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  auto push = [&](std::span<const Exponent> e, Integer c) {
    exps.insert(exps.end(), e.begin(), e.end());
    coefs.push_back(std::move(c));
  };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && lex_less(a.exponents(i), b.exponents(j)))) {
      push(a.exponents(i), a.coefficient(i));
      ++i;
    } else if (i == a.size() || lex_less(b.exponents(j), a.exponents(i))) {
      push(b.exponents(j), sign > 0 ? b.coefficient(j) : Integer(-b.coefficient(j)));
      ++j;
    } else {
      Integer c = sign > 0 ? Integer(a.coefficient(i) + b.coefficient(j))
                           : Integer(a.coefficient(i) - b.coefficient(j));
      if (c != 0) push(a.exponents(i), std::move(c));
      ++i;
      ++j;
    }
  }
  return MPoly::from_sorted(layout, std::move(exps), std::move(coefs));
}

}  // namespace

char coordinate_letter(int coordinate) {
  if (coordinate < 0 || coordinate >= kMaxLetterDims)
    throw Error(Errc::out_of_range, "no letter for coordinate " + std::to_string(coordinate));
  return kLetters[coordinate];
}

int coordinate_from_letter(char letter) {
  for (int c = 0; c < kMaxLetterDims; ++c)
    if (kLetters[c] == letter) return c;
  return -1;
}

Monomial::Monomial(Layout layout, std::vector<Exponent> exps)
    : layout_(layout), exps_(std::move(exps)) {
  if (exps_.size() != layout_.variables())
    throw Error(Errc::dimension_mismatch, "exponent vector length differs from d*N");
}

std::uint64_t Monomial::grade() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  return hash_exponents(m.exponents());
}

MPoly MPoly::constant(Layout layout, const Integer& c) {
  MPoly p(layout);
  if (c != 0) {
    p.exps_.assign(layout.variables(), 0);
    p.coefs_.push_back(c);
  }
  return p;
}

MPoly MPoly::variable(Layout layout, VarIndex v) {
  if (v.coordinate < 0 || v.coordinate >= layout.dims || v.particle < 0 ||
      v.particle >= layout.particles)
    throw Error(Errc::out_of_range, "variable index outside the layout");
  MPoly p(layout);
  p.exps_.assign(layout.variables(), 0);
  p.exps_[layout.index(v.coordinate, v.particle)] = 1;
  p.coefs_.emplace_back(1);
  return p;
}

MPoly MPoly::from_terms(Layout layout, std::vector<std::pair<Monomial, Integer>> terms) {
  Builder b(layout);
  b.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    require_same_layout(layout, m.layout());
    b.add(m.exponents(), c);
  }
  return std::move(b).finish();
}

MPoly MPoly::from_sorted(Layout layout, std::vector<Exponent> exps, std::vector<Integer> coefs) {
  MPoly p(layout);
  p.exps_ = std::move(exps);
  p.coefs_ = std::move(coefs);
  return p;
}

void MPoly::Builder::reserve(std::size_t terms) {
  exps_.reserve(terms * layout_.variables());
  coefs_.reserve(terms);
}

void MPoly::Builder::add(std::span<const Exponent> exps, const Integer& c) {
  if (c == 0) return;
  exps_.insert(exps_.end(), exps.begin(), exps.end());
  coefs_.push_back(c);
}

MPoly MPoly::Builder::finish() && {
  const std::size_t w = layout_.variables();
  const std::size_t n = coefs_.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t t) { return std::span<const Exponent>(exps_.data() + t * w, w); };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(row(a), row(b)); });
  std::vector<Exponent> exps;
  std::vector<Integer> coefs;
  exps.reserve(n * w);
  coefs.reserve(n);
  for (std::size_t i = 0; i < n;) {
    Integer c = std::move(coefs_[order[i]]);
    std::size_t j = i + 1;
    while (j < n && std::equal(row(order[i]).begin(), row(order[i]).end(), row(order[j]).begin())) {
      c += coefs_[order[j]];
      ++j;
    }
    if (c != 0) {
      auto r = row(order[i]);
      exps.insert(exps.end(), r.begin(), r.end());
      coefs.push_back(std::move(c));
    }
    i = j;
  }
  return from_sorted(layout_, std::move(exps), std::move(coefs));
}

Monomial MPoly::monomial(std::size_t term) const {
  auto e = exponents(term);
  return Monomial(layout_, std::vector<Exponent>(e.begin(), e.end()));
}

std::optional<std::size_t> MPoly::find(std::span<const Exponent> exps) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(exponents(mid), exps))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(exps.begin(), exps.end(), exponents(lo).begin())) return lo;
  return std::nullopt;
}

Integer MPoly::coefficient_of(const Monomial& m) const {
  require_same_layout(layout_, m.layout());
  auto pos = find(m.exponents());
  return pos ? coefs_[*pos] : Integer(0);
}

std::optional<std::uint64_t> MPoly::grade() const {
  if (is_zero()) return std::nullopt;
  auto g0 = [&](std::size_t t) {
    auto e = exponents(t);
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
  };
  const std::uint64_t g = g0(0);
  for (std::size_t t = 1; t < size(); ++t)
    if (g0(t) != g) return std::nullopt;
  return g;
}

std::uint64_t MPoly::max_grade() const {
  std::uint64_t best = 0;
  for (std::size_t t = 0; t < size(); ++t) {
    auto e = exponents(t);
    best = std::max(best, std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
  }
  return best;
}

std::optional<std::vector<std::uint64_t>> MPoly::multidegree() const {
  if (is_zero()) return std::nullopt;
  auto of = [&](std::size_t t) {
    std::vector<std::uint64_t> md(layout_.dims, 0);
    auto e = exponents(t);
    for (int c = 0; c < layout_.dims; ++c)
      for (int k = 0; k < layout_.particles; ++k) md[c] += e[layout_.index(c, k)];
    return md;
  };
  auto md = of(0);
  for (std::size_t t = 1; t < size(); ++t)
    if (of(t) != md) return std::nullopt;
  return md;
}

Integer MPoly::content() const {
  Integer g = 0;
  for (const auto& c : coefs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

const Integer& MPoly::leading_coefficient() const {
  if (is_zero()) throw Error(Errc::invalid_argument, "zero polynomial has no leading term");
  return coefs_.back();
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& c : r.coefs_) c = -c;
  return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  require_same_layout(a.layout_, b.layout_);
  return merge(a, b, +1);
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  require_same_layout(a.layout_, b.layout_);
  return merge(a, b, -1);
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_same_layout(a.layout_, b.layout_);
  const std::size_t w = a.layout_.variables();
  MPoly::Builder out(a.layout_);
  out.reserve(a.size() * b.size());
  std::vector<Exponent> e(w);
  Integer c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ea = a.exponents(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto eb = b.exponents(j);
      for (std::size_t v = 0; v < w; ++v) e[v] = ea[v] + eb[v];
      c = a.coefs_[i] * b.coefs_[j];
      out.add(e, c);
    }
  }
  return std::move(out).finish();
}

MPoly MPoly::scale(const Integer& c) const {
  if (c == 0) return MPoly(layout_);
  MPoly r = *this;
  for (auto& x : r.coefs_) x *= c;
  return r;
}

MPoly MPoly::divide_exact(const Integer& c) const {
  MPoly r = *this;
  for (auto& x : r.coefs_) {
    if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
      throw Error(Errc::internal_arithmetic, "coefficient not divisible by " + c.get_str());
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
  return a.layout_ == b.layout_ && a.exps_ == b.exps_ && a.coefs_ == b.coefs_;
}

std::size_t MPoly::hash() const noexcept {
  std::size_t h = hash_exponents(exps_);
  for (const auto& c : coefs_) h = h * 31 + hash_integer(c);
  return h;
}

std::string MPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  for (std::size_t t = size(); t-- > 0;) {
    const Integer& c = coefs_[t];
    const bool first = t + 1 == size();
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    Integer mag = abs(c);
    auto e = exponents(t);
    std::ostringstream vars;
    bool any = false;
    for (int cc = 0; cc < layout_.dims; ++cc) {
      for (int k = 0; k < layout_.particles; ++k) {
        const Exponent x = e[layout_.index(cc, k)];
        if (x == 0) continue;
        if (any) vars << '*';
        any = true;
        vars << coordinate_letter(cc) << (k + 1);
        if (x > 1) vars << '^' << x;
      }
    }
    if (!any)
      out << mag.get_str();
    else if (mag == 1)
      out << vars.str();
    else
      out << mag.get_str() << '*' << vars.str();
  }
  return out.str();
}

MPoly sum(std::vector<MPoly> parts, Layout layout) {
  if (parts.empty()) return MPoly(layout);
  while (parts.size() > 1) {
    std::vector<MPoly> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

MPoly permute_particles(const MPoly& p, std::span<const int> sigma) {
  const Layout layout = p.layout();
  if (sigma.size() != static_cast<std::size_t>(layout.particles))
    throw Error(Errc::invalid_argument, "permutation length differs from N");
  std::vector<bool> seen(sigma.size(), false);
  for (int s : sigma) {
    if (s < 0 || s >= layout.particles || seen[s])
      throw Error(Errc::invalid_argument, "not a permutation of the particles");
    seen[s] = true;
  }
  MPoly::Builder out(layout);
  out.reserve(p.size());
  std::vector<Exponent> e(layout.variables());
  for (std::size_t t = 0; t < p.size(); ++t) {
    auto src = p.exponents(t);
    for (int c = 0; c < layout.dims; ++c)
      for (int k = 0; k < layout.particles; ++k)
        e[layout.index(c, sigma[k])] = src[layout.index(c, k)];
    out.add(e, p.coefficient(t));
  }
  return std::move(out).finish();
}

MPoly swap_particles(const MPoly& p, int a, int b) {
  std::vector<int> sigma(p.layout().particles);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma.at(a), sigma.at(b));
  return permute_particles(p, sigma);
}

namespace {

// Checks p(swap) == parity * p for every adjacent swap, term by term.
bool transposition_parity(const MPoly& p, int parity) {
  const Layout layout = p.layout();
  std::vector<Exponent> e(layout.variables());
  for (int i = 0; i + 1 < layout.particles; ++i) {
    for (std::size_t t = 0; t < p.size(); ++t) {
      auto src = p.exponents(t);
      std::copy(src.begin(), src.end(), e.begin());
      for (int c = 0; c < layout.dims; ++c)
        std::swap(e[layout.index(c, i)], e[layout.index(c, i + 1)]);
      auto pos = p.find(e);
      if (!pos) return false;
      const Integer& mate = p.coefficient(*pos);
      if (parity > 0 ? mate != p.coefficient(t) : mate != -p.coefficient(t)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_antisymmetric(const MPoly& p) { return transposition_parity(p, -1); }
bool is_symmetric(const MPoly& p) { return transposition_parity(p, +1); }

MPoly vandermonde(Layout layout, int coordinate) {
  if (coordinate < 0 || coordinate >= layout.dims)
    throw Error(Errc::out_of_range, "coordinate outside [0, d)");
  MPoly r = MPoly::constant(layout, 1);
  for (int i = 0; i < layout.particles; ++i)
    for (int j = i + 1; j < layout.particles; ++j)
      r = r * (MPoly::variable(layout, {coordinate, i}) - MPoly::variable(layout, {coordinate, j}));
  return r;
}

MPoly source_shape(int particles, int dims) {
  if (particles < 1 || dims < 1) throw Error(Errc::invalid_argument, "source shape needs N, d >= 1");
  if (dims % 2 == 0)
    throw Error(Errc::odd_dimension_required,
                "a product of Vandermonde forms is symmetric in even d");
  const Layout layout{particles, dims};
  MPoly r = MPoly::constant(layout, 1);
  for (int c = 0; c < dims; ++c) r = r * vandermonde(layout, c);
  return r;
}

MPoly elementary_symmetric(Layout layout, int coordinate, int j) {
  if (j < 1 || j > layout.particles) throw Error(Errc::invalid_argument, "e_j requires 1 <= j <= N");
  if (coordinate < 0 || coordinate >= layout.dims)
    throw Error(Errc::out_of_range, "coordinate outside [0, d)");
  MPoly::Builder out(layout);
  std::vector<bool> pick(layout.particles, false);
  std::fill(pick.begin(), pick.begin() + j, true);
  std::vector<Exponent> e(layout.variables());
  const Integer one = 1;
  do {
    std::fill(e.begin(), e.end(), 0);
    for (int k = 0; k < layout.particles; ++k)
      if (pick[k]) e[layout.index(coordinate, k)] = 1;
    out.add(e, one);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::move(out).finish();
}

Normalized normalize(const MPoly& p) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "cannot normalize the zero polynomial");
  Normalized n;
  n.content = p.content();
  n.sign = p.leading_coefficient() < 0 ? -1 : 1;
  Integer divisor = n.content * n.sign;
  n.poly = divisor == 1 ? p : p.divide_exact(divisor);
  return n;
}

std::size_t MonomialIndex::add(const Monomial& m) {
  auto [it, inserted] = index_.try_emplace(m, monomials_.size());
  if (inserted) monomials_.push_back(m);
  return it->second;
}

std::optional<std::size_t> MonomialIndex::lookup(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVector coeff_vector(const MPoly& p, const MonomialIndex& index) {
  SparseVector v;
  v.reserve(p.size());
  for (std::size_t t = 0; t < p.size(); ++t) {
    auto col = index.lookup(p.monomial(t));
    if (!col) throw Error(Errc::indexing, "monomial missing from the index");
    v.emplace_back(*col, p.coefficient(t));
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

MPoly from_coeff_vector(Layout layout, const SparseVector& v, const MonomialIndex& index) {
  MPoly::Builder b(layout);
  for (const auto& [col, c] : v) b.add(index.at(col).exponents(), c);
  return std::move(b).finish();
}

}  // namespace shapeforge::multipoly
