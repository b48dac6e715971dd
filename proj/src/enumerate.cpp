#include <atomic>
#include <chrono>
#include <thread>
#include <unordered_map>

#include "shapeforge/enumerate.hpp"
#include "shapeforge/error.hpp"

namespace shapeforge::enumerate {

using multipoly::Layout;
using multipoly::MPolyHash;

namespace {

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
}

struct Candidate {
  std::size_t parent;
  std::size_t word_index;
  MPoly image;
};

class Engine {
 public:
  Engine(int particles, int dims, const EnumerateConfig& config)
      : n_(particles),
        d_(dims),
        config_(config),
        layout_{particles, dims},
        vocab_(build_vocabulary(dims, config.vocabulary)) {
    for (std::size_t i = 0; i < vocab_.words.size(); ++i)
      if (!is_unit_lowering(vocab_.words[i])) descent_words_.push_back(i);
    if (descent_words_.empty())
      throw Error(Errc::empty_vocabulary, "no lowering words beyond single unit downshifts");
  }

  Enumeration run() {
    start_ = std::chrono::steady_clock::now();
    const qseries::QPoly p = qseries::shape_poly(n_, d_, qseries::Statistics::Fermion);
    out_.report.particles = n_;
    out_.report.dims = d_;
    out_.report.expected_total = p.coefficient_sum();

    add_root();
    for (long g = qseries::degree_D(d_, n_) - 1; g >= 0; --g) {
      const Integer& expected = p[static_cast<std::size_t>(g)];
      if (expected == 0) continue;
      descend_to(g, expected.get_ui());
    }

    if (out_.report.expected_total != out_.shapes.size())
      throw Error(Errc::incomplete, "found " + std::to_string(out_.shapes.size()) +
                                        " shapes, expected " +
                                        out_.report.expected_total.get_str());
    out_.report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(out_);
  }

 private:
  // Compositions of g into d parts, lexicographic.
  std::vector<Multidegree> multidegrees(std::uint64_t g) const {
    std::vector<Multidegree> out;
    Multidegree md(static_cast<std::size_t>(d_), 0);
    auto rec = [&](auto& self, std::size_t c, std::uint64_t left) -> void {
      if (c + 1 == md.size()) {
        md[c] = left;
        out.push_back(md);
        return;
      }
      for (std::uint64_t a = 0; a <= left; ++a) {
        md[c] = a;
        self(self, c + 1, left - a);
      }
    };
    rec(rec, 0, g);
    return out;
  }

  void add_root() {
    ShapeRecord root;
    root.id = 0;
    root.grade = qseries::degree_D(d_, n_);
    auto norm = multipoly::normalize(multipoly::source_shape(n_, d_));
    root.poly = std::move(norm.poly);
    root.provenance.kind = Provenance::Kind::Root;
    root.provenance.content = norm.content;
    root.provenance.sign = norm.sign;
    root.entropy = qseries::shape_entropy(n_, d_, root.grade);
    out_.tree.root = 0;
    commit(std::move(root), 1);
  }

  void commit(ShapeRecord rec, int tree_sign) {
    check_annihilation(rec);
    by_poly_.emplace(rec.poly, rec.id);
    tree_sign_.push_back(tree_sign);
    out_.shapes.push_back(std::move(rec));
  }

  void check_annihilation(const ShapeRecord& rec) {
    for (int c = 0; c < d_; ++c) {
      SymWord lower{shiftops::down(c, 1)};
      if (shiftops::apply_symword(lower, rec.poly).is_zero()) continue;
      const std::string msg = "shape " + std::to_string(rec.id) + " is not annihilated by " +
                              lower.to_string();
      if (n_ <= 3) throw Error(Errc::internal_arithmetic, msg);
      out_.report.warnings.push_back(msg);
    }
  }

  void descend_to(long g, std::size_t expected) {
    GradeSummary summary;
    summary.grade = g;
    summary.expected = expected;

    std::vector<std::pair<std::size_t, std::size_t>> todo;
    for (const auto& s : out_.shapes) {
      if (s.grade <= g) continue;
      for (std::size_t wi : descent_words_)
        if (s.grade + vocab_.words[wi].net_grade() == g) todo.emplace_back(s.id, wi);
    }

    std::size_t found = 0;
    const std::size_t batch = static_cast<std::size_t>(std::max(1, config_.threads)) * 8;
    std::vector<Candidate> pending;
    for (std::size_t at = 0; at < todo.size(); at += batch) {
      if (found == expected && !config_.detect_extra_edges) break;
      const std::size_t len = std::min(batch, todo.size() - at);
      pending.assign(len, Candidate{0, 0, MPoly(layout_)});
      parallel_for(len, config_.threads, [&](std::size_t i) {
        const auto [parent, wi] = todo[at + i];
        pending[i] = {parent, wi,
                      shiftops::apply_symword(vocab_.words[wi], out_.shapes[parent].poly)};
      });
      for (auto& cand : pending) {
        ++summary.candidates;
        if (consider(g, cand, found < expected)) ++found;
      }
    }
    summary.by_descent = found;

    if (found < expected) {
      FallbackEvent event;
      event.grade = g;
      event.deficit = expected - found;
      for (const auto& md : multidegrees(static_cast<std::uint64_t>(g))) {
        if (found == expected) break;
        for (auto& kv : lowering_kernel(n_, md)) {
          if (found == expected) break;
          if (span_.try_extend(kv.coords, md) != exactla::ExtendResult::Extended) continue;
          auto norm = multipoly::normalize(multipoly::from_slater(layout_, kv.coords));
          ShapeRecord rec;
          rec.id = out_.shapes.size();
          rec.grade = g;
          rec.poly = std::move(norm.poly);
          rec.provenance.kind = Provenance::Kind::Oracle;
          rec.provenance.oracle = kv.seed;
          rec.entropy = qseries::shape_entropy(n_, d_, g);
          event.shapes.push_back(rec.id);
          commit(std::move(rec), 1);
          ++found;
          ++summary.by_oracle;
        }
      }
      if (found < expected)
        throw Error(Errc::incomplete, "lowering kernel could not fill grade " + std::to_string(g));
      out_.report.fallbacks.push_back(std::move(event));
    }
    if (found > expected)
      throw Error(Errc::internal_arithmetic, "more shapes than the shape polynomial allows");
    if (config_.progress) {
      const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      config_.progress("grade " + std::to_string(g) + ": " + std::to_string(summary.by_descent) +
                       " by descent, " + std::to_string(summary.by_oracle) + " by oracle, " +
                       std::to_string(summary.candidates) + " candidates, " + std::to_string(t) + " s");
    }
    out_.report.grades.push_back(std::move(summary));
  }

  // Returns true iff the candidate became a new shape.
  bool consider(long g, Candidate& cand, bool open) {
    AuditEntry entry;
    entry.grade = g;
    entry.parent = cand.parent;
    entry.word_index = cand.word_index;
    if (cand.image.is_zero()) {
      entry.decision = AuditEntry::Decision::Zero;
      out_.report.audit.push_back(entry);
      return false;
    }
    auto norm = multipoly::normalize(cand.image);
    const SymWord& word = vocab_.words[cand.word_index];
    if (auto hit = by_poly_.find(norm.poly); hit != by_poly_.end()) {
      const std::size_t to = hit->second;
      out_.tree.extra_edges.push_back(
          {cand.parent, to, word, tree_sign_[cand.parent] * norm.sign * tree_sign_[to]});
      entry.decision = AuditEntry::Decision::Duplicate;
      entry.shape = to;
      out_.report.audit.push_back(entry);
      return false;
    }
    if (!open) {
      // grade already full
      entry.decision = AuditEntry::Decision::InSpan;
      out_.report.audit.push_back(entry);
      return false;
    }
    if (!multipoly::is_antisymmetric(norm.poly))
      throw Error(Errc::internal_arithmetic, "symmetrized word broke antisymmetry");
    auto md = norm.poly.multidegree();
    if (!md) throw Error(Errc::internal_arithmetic, "candidate is not multihomogeneous");
    auto coords = multipoly::project_to_slater(norm.poly);
    if (!in_lowering_kernel(coords, n_, d_)) {
      entry.decision = AuditEntry::Decision::OutsideKernel;
      out_.report.audit.push_back(entry);
      return false;
    }
    if (span_.try_extend(coords, *md) != exactla::ExtendResult::Extended) {
      entry.decision = AuditEntry::Decision::InSpan;
      out_.report.audit.push_back(entry);
      return false;
    }
    ShapeRecord rec;
    rec.id = out_.shapes.size();
    rec.grade = g;
    rec.poly = std::move(norm.poly);
    rec.provenance.kind = Provenance::Kind::Word;
    rec.provenance.parent = cand.parent;
    rec.provenance.word = word;
    rec.provenance.content = std::move(norm.content);
    rec.provenance.sign = norm.sign;
    rec.entropy = qseries::shape_entropy(n_, d_, g);
    out_.tree.edges.push_back({cand.parent, rec.id, word});
    entry.decision = AuditEntry::Decision::Accepted;
    entry.shape = rec.id;
    out_.report.audit.push_back(entry);
    const int sign = tree_sign_[cand.parent] * rec.provenance.sign;
    commit(std::move(rec), sign);
    return true;
  }

  int n_;
  int d_;
  EnumerateConfig config_;
  Layout layout_;
  Vocabulary vocab_;
  std::vector<std::size_t> descent_words_;
  ShapeSpan span_;
  Enumeration out_;
  std::unordered_map<MPoly, std::size_t, MPolyHash> by_poly_;
  std::vector<int> tree_sign_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

Enumeration enumerate_shapes(int particles, int dims, const EnumerateConfig& config) {
  if (particles < 1 || dims < 1)
    throw Error(Errc::invalid_argument, "enumeration needs N >= 1 and d >= 1");
  if (dims % 2 == 0)
    throw Error(Errc::odd_dimension_required, "shape descent is defined for odd d only");
  return Engine(particles, dims, config).run();
}

std::vector<int> tree_signs(const std::vector<ShapeRecord>& shapes) {
  std::vector<int> sign(shapes.size(), 1);
  for (const auto& s : shapes)
    if (s.provenance.kind == Provenance::Kind::Word)
      sign[s.id] = sign.at(s.provenance.parent) * s.provenance.sign;
  return sign;
}

SignConflict verify_sign_conflict(int particles, int dims) {
  if (dims < 3) throw Error(Errc::invalid_argument, "the conflict uses three coordinates");
  using shiftops::down;
  const MPoly source = multipoly::source_shape(particles, dims);
  const SymWord vt{down(2, 1), down(0, 1)};
  const SymWord ut{down(1, 1), down(0, 1)};
  const SymWord vt2{down(2, 1), down(0, 2)};
  const SymWord ut2{down(1, 1), down(0, 2)};
  SignConflict out;
  out.lhs = shiftops::apply_symword(vt2, shiftops::apply_symword(ut, source));
  out.rhs = shiftops::apply_symword(ut2, shiftops::apply_symword(vt, source));
  if (out.lhs.is_zero() || out.rhs.is_zero())
    throw Error(Errc::notation_regression, "a side of the sign relation vanished");
  if (out.lhs == out.rhs)
    out.relative_sign = 1;
  else if (out.lhs == -out.rhs)
    out.relative_sign = -1;
  else
    throw Error(Errc::notation_regression, "the two sides are not related by a sign");
  return out;
}

}  // namespace shapeforge::enumerate
