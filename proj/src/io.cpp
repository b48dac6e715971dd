#include "shapeforge/io.hpp"

#include <iomanip>
#include <sstream>

#include "shapeforge/error.hpp"

namespace shapeforge::io {

using enumerate::Provenance;
using enumerate::ShapeRecord;
using multipoly::Exponent;
using multipoly::Layout;
using multipoly::MPoly;
using nlohmann::json;

namespace {

Integer parse_integer(const json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::parse, std::string(what) + " must be a decimal string");
  Integer x;
  if (x.set_str(j.get<std::string>(), 10) != 0)
    throw Error(Errc::parse, std::string(what) + " is not a decimal integer");
  return x;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

json poly_to_json(const MPoly& p) {
  json terms = json::array();
  for (std::size_t t = 0; t < p.size(); ++t) {
    auto e = p.exponents(t);
    terms.push_back({{"exp", std::vector<Exponent>(e.begin(), e.end())},
                     {"coef", p.coefficient(t).get_str()}});
  }
  return terms;
}

MPoly poly_from_json(const json& j, Layout layout) {
  if (!j.is_array()) throw Error(Errc::parse, "poly must be an array of terms");
  MPoly::Builder b(layout);
  for (const auto& term : j) {
    auto exps = field(term, "exp").get<std::vector<Exponent>>();
    if (exps.size() != layout.variables())
      throw Error(Errc::parse, "term exponent vector has the wrong length");
    b.add(exps, parse_integer(field(term, "coef"), "coef"));
  }
  return std::move(b).finish();
}

json provenance_to_json(const Provenance& p) {
  json j;
  switch (p.kind) {
    case Provenance::Kind::Root:
      j = {{"kind", "root"}, {"parent", nullptr}, {"word", ""}};
      break;
    case Provenance::Kind::Word:
      j = {{"kind", "word"}, {"parent", p.parent}, {"word", p.word.to_string()}};
      break;
    case Provenance::Kind::Oracle: {
      json rows = json::array();
      for (int k = 0; k < p.oracle->particles(); ++k) {
        auto r = p.oracle->row(k);
        rows.push_back(std::vector<Exponent>(r.begin(), r.end()));
      }
      j = {{"kind", "oracle"}, {"parent", nullptr}, {"word", nullptr}, {"slater", rows}};
      break;
    }
  }
  j["content"] = p.content.get_str();
  j["sign"] = p.sign;
  return j;
}

Provenance provenance_from_json(const json& j, int dims) {
  Provenance p;
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "root") {
    p.kind = Provenance::Kind::Root;
  } else if (kind == "word") {
    p.kind = Provenance::Kind::Word;
    p.parent = field(j, "parent").get<std::size_t>();
    p.word = shiftops::SymWord::parse(field(j, "word").get<std::string>());
  } else if (kind == "oracle") {
    p.kind = Provenance::Kind::Oracle;
    p.oracle = multipoly::SlaterIndex::from_rows(
        dims, field(j, "slater").get<std::vector<std::vector<Exponent>>>());
  } else {
    throw Error(Errc::parse, "unknown provenance kind \"" + kind + "\"");
  }
  p.content = parse_integer(field(j, "content"), "content");
  p.sign = field(j, "sign").get<int>();
  if (p.sign != 1 && p.sign != -1) throw Error(Errc::parse, "provenance sign must be +1 or -1");
  return p;
}

VerifyResult fail(std::optional<std::size_t> id, std::string msg) {
  return VerifyResult{false, id, std::move(msg)};
}

}  // namespace

ShapeSet make_shape_set(const enumerate::Enumeration& run) {
  ShapeSet s;
  s.particles = run.report.particles;
  s.dims = run.report.dims;
  s.shape_poly = qseries::shape_poly(s.particles, s.dims, qseries::Statistics::Fermion);
  s.shapes = run.shapes;
  s.tree = run.tree;
  return s;
}

json to_json(const ShapeSet& set) {
  json j;
  j["n"] = set.particles;
  j["d"] = set.dims;
  j["generator_order"] = "lex, coordinate-major";
  json sp = json::array();
  for (const auto& c : set.shape_poly.coefficients()) sp.push_back(c.get_str());
  j["shape_poly"] = sp;
  json shapes = json::array();
  for (const auto& s : set.shapes) {
    shapes.push_back({{"id", s.id},
                      {"grade", s.grade},
                      {"entropy", s.entropy},
                      {"provenance", provenance_to_json(s.provenance)},
                      {"poly", poly_to_json(s.poly)}});
  }
  j["shapes"] = shapes;
  json edges = json::array();
  for (const auto& e : set.tree.edges)
    edges.push_back({{"parent", e.parent}, {"child", e.child}, {"word", e.word.to_string()}});
  json extra = json::array();
  for (const auto& e : set.tree.extra_edges)
    extra.push_back(
        {{"from", e.from}, {"to", e.to}, {"word", e.word.to_string()}, {"sign", e.relative_sign}});
  j["tree"] = {{"root", set.tree.root}, {"edges", edges}, {"extra_edges", extra}};
  return j;
}

ShapeSet shape_set_from_json(const json& j) {
  try {
    ShapeSet s;
    s.particles = field(j, "n").get<int>();
    s.dims = field(j, "d").get<int>();
    if (s.particles < 1 || s.dims < 1) throw Error(Errc::parse, "n and d must be positive");
    if (field(j, "generator_order").get<std::string>() != "lex, coordinate-major")
      throw Error(Errc::parse, "unsupported generator order");
    std::vector<Integer> coeffs;
    for (const auto& c : field(j, "shape_poly")) coeffs.push_back(parse_integer(c, "shape_poly"));
    s.shape_poly = qseries::QPoly(std::move(coeffs));
    const Layout layout{s.particles, s.dims};
    for (const auto& r : field(j, "shapes")) {
      ShapeRecord rec;
      rec.id = field(r, "id").get<std::size_t>();
      rec.grade = field(r, "grade").get<long>();
      rec.entropy = field(r, "entropy").get<double>();
      rec.provenance = provenance_from_json(field(r, "provenance"), s.dims);
      rec.poly = poly_from_json(field(r, "poly"), layout);
      s.shapes.push_back(std::move(rec));
    }
    const json& tree = field(j, "tree");
    s.tree.root = field(tree, "root").get<std::size_t>();
    for (const auto& e : field(tree, "edges"))
      s.tree.edges.push_back({field(e, "parent").get<std::size_t>(),
                              field(e, "child").get<std::size_t>(),
                              shiftops::SymWord::parse(field(e, "word").get<std::string>())});
    for (const auto& e : field(tree, "extra_edges"))
      s.tree.extra_edges.push_back({field(e, "from").get<std::size_t>(),
                                    field(e, "to").get<std::size_t>(),
                                    shiftops::SymWord::parse(field(e, "word").get<std::string>()),
                                    field(e, "sign").get<int>()});
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, e.what());
  }
}

std::string to_dot(const ShapeSet& set) {
  std::ostringstream out;
  out << "digraph shapes {\n";
  for (const auto& s : set.shapes) out << "  n" << s.id << " [label=\"" << s.id << '@' << s.grade << "\"];\n";
  for (const auto& e : set.tree.edges)
    out << "  n" << e.parent << " -> n" << e.child << " [label=\"" << e.word.to_string() << "\"];\n";
  for (const auto& e : set.tree.extra_edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.word.to_string() << " ("
        << (e.relative_sign > 0 ? '+' : '-') << ")\", style=dashed];\n";
  out << "}\n";
  return out.str();
}

std::string format_report(const enumerate::RunReport& report,
                          const std::optional<enumerate::CompletenessReport>& completeness) {
  std::ostringstream out;
  out << "shapes of N=" << report.particles << " fermions in d=" << report.dims << '\n';
  out << "expected total " << report.expected_total.get_str() << '\n';
  out << "grade  expected  descent  oracle  candidates\n";
  std::size_t found = 0;
  for (const auto& g : report.grades) {
    out << std::setw(5) << g.grade << std::setw(10) << g.expected.get_str() << std::setw(9)
        << g.by_descent << std::setw(8) << g.by_oracle << std::setw(12) << g.candidates << '\n';
    found += g.by_descent + g.by_oracle;
  }
  out << "found " << found + 1 << " shapes (including the source)\n";
  if (report.fallbacks.empty()) {
    out << "oracle fallback: none\n";
  } else {
    for (const auto& f : report.fallbacks)
      out << "oracle fallback at grade " << f.grade << ": " << f.deficit << " shape(s)\n";
  }
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  if (completeness) {
    out << "completeness  grade  rank  expected\n";
    for (const auto& g : completeness->grades)
      out << "           " << std::setw(7) << g.grade << std::setw(6) << g.rank << std::setw(10)
          << g.expected.get_str() << '\n';
  }
  out << "runtime " << std::fixed << std::setprecision(3) << report.seconds << " s\n";
  return out.str();
}

VerifyResult verify_shape_set(const ShapeSet& set, bool check_completeness) {
  const int n = set.particles;
  const int d = set.dims;
  if (n < 1 || d < 1) return fail(std::nullopt, "N and d must be positive");
  if (d % 2 == 0) return fail(std::nullopt, "shape sets are defined for odd d");
  const Layout layout{n, d};
  const auto expected_poly = qseries::shape_poly(n, d, qseries::Statistics::Fermion);
  if (!(set.shape_poly == expected_poly))
    return fail(std::nullopt, "shape polynomial differs from the recursion");

  const Integer total = expected_poly.coefficient_sum();
  if (set.shapes.size() != total)
    return fail(std::nullopt, "expected " + total.get_str() + " shapes, found " +
                                  std::to_string(set.shapes.size()));

  std::vector<Integer> histogram(static_cast<std::size_t>(qseries::degree_D(d, n)) + 1);
  for (std::size_t i = 0; i < set.shapes.size(); ++i) {
    const ShapeRecord& s = set.shapes[i];
    if (s.id != i) return fail(i, "shape ids must be dense and ordered");
    if (!(s.poly.layout() == layout)) return fail(i, "polynomial over the wrong (N, d)");
    if (s.poly.is_zero()) return fail(i, "zero polynomial");
    const auto g = s.poly.grade();
    if (!g || static_cast<long>(*g) != s.grade) return fail(i, "polynomial not homogeneous of its grade");
    if (s.grade < 0 || s.grade >= static_cast<long>(histogram.size()))
      return fail(i, "grade out of range");
    if (s.poly.content() != 1 || s.poly.leading_coefficient() < 0)
      return fail(i, "polynomial not primitive and sign-normalized");
    if (!multipoly::is_antisymmetric(s.poly)) return fail(i, "polynomial not antisymmetric");
    double entropy = 0.0;
    try {
      entropy = qseries::shape_entropy(n, d, s.grade);
    } catch (const Error&) {
      return fail(i, "no shape is allowed at this grade");
    }
    if (entropy != s.entropy) return fail(i, "entropy mismatch");
    const Provenance& p = s.provenance;
    if (p.content < 1) return fail(i, "content must be positive");
    const MPoly scaled = s.poly.scale(p.content * p.sign);
    switch (p.kind) {
      case Provenance::Kind::Root:
        if (i != set.tree.root || !(multipoly::source_shape(n, d) == scaled))
          return fail(i, "root does not replay to the source shape");
        break;
      case Provenance::Kind::Word:
        if (p.parent >= i) return fail(i, "parent must precede the child");
        if (!(shiftops::apply_symword(p.word, set.shapes[p.parent].poly) == scaled))
          return fail(i, "word replay mismatch");
        break;
      case Provenance::Kind::Oracle: {
        if (!p.oracle) return fail(i, "oracle shape without a seed");
        const auto md = s.poly.multidegree();
        if (!md) return fail(i, "oracle shape not multihomogeneous");
        bool replayed = false;
        for (const auto& kv : enumerate::lowering_kernel(n, *md))
          if (kv.seed == *p.oracle)
            replayed = multipoly::normalize(multipoly::from_slater(layout, kv.coords)).poly == s.poly;
        if (!replayed) return fail(i, "oracle replay mismatch");
        break;
      }
    }
    if (!enumerate::in_lowering_kernel(multipoly::project_to_slater(s.poly), n, d))
      return fail(i, "shape not in the lowering kernel");
    histogram[static_cast<std::size_t>(s.grade)] += 1;
  }
  for (std::size_t g = 0; g < histogram.size(); ++g)
    if (histogram[g] != expected_poly[g])
      return fail(std::nullopt, "grade histogram differs from the shape polynomial at grade " +
                                    std::to_string(g));

  std::size_t word_records = 0;
  for (const auto& s : set.shapes) word_records += s.provenance.kind == Provenance::Kind::Word;
  if (set.tree.edges.size() != word_records) return fail(std::nullopt, "tree edge count mismatch");
  for (const auto& e : set.tree.edges) {
    if (e.child >= set.shapes.size()) return fail(std::nullopt, "tree edge to unknown shape");
    const auto& p = set.shapes[e.child].provenance;
    if (p.kind != Provenance::Kind::Word || p.parent != e.parent || !(p.word == e.word))
      return fail(e.child, "tree edge disagrees with provenance");
  }
  const auto signs = enumerate::tree_signs(set.shapes);
  for (const auto& e : set.tree.extra_edges) {
    if (e.from >= set.shapes.size() || e.to >= set.shapes.size())
      return fail(std::nullopt, "extra edge to unknown shape");
    const MPoly image = shiftops::apply_symword(e.word, set.shapes[e.from].poly);
    if (image.is_zero()) return fail(e.to, "extra edge word annihilates its source");
    const auto norm = multipoly::normalize(image);
    if (!(norm.poly == set.shapes[e.to].poly)) return fail(e.to, "extra edge replay mismatch");
    if (signs[e.from] * norm.sign * signs[e.to] != e.relative_sign)
      return fail(e.to, "extra edge sign mismatch");
  }

  if (check_completeness) {
    try {
      enumerate::verify_completeness(n, d, set.shapes);
    } catch (const Error& e) {
      return fail(std::nullopt, e.what());
    }
  }
  return {};
}

}  // namespace shapeforge::io
