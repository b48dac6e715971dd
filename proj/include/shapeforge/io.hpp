#pragma once

/**
 * @file io.hpp
 * @brief shapes.json, tree.dot and text reports.
 *
 * shapes.json layout:
 *
 *     {"n", "d", "generator_order": "lex, coordinate-major",
 *      "shape_poly": ["<decimal>", ...],
 *      "shapes": [{"id", "grade", "entropy",
 *                  "provenance": {"kind", "parent", "word", "content", "sign"[, "slater"]},
 *                  "poly": [{"exp": [...], "coef": "<decimal>"}, ...]}, ...],
 *      "tree": {"root", "edges": [{"parent", "child", "word"}],
 *               "extra_edges": [{"from", "to", "word", "sign"}]}}
 *
 * Integers that can grow without bound are written as decimal strings.
 */

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "shapeforge/enumerate.hpp"
#include "shapeforge/qseries.hpp"

namespace shapeforge::io {

struct ShapeSet {
  int particles = 0;
  int dims = 0;
  qseries::QPoly shape_poly;
  std::vector<enumerate::ShapeRecord> shapes;
  enumerate::BranchingTree tree;

  friend bool operator==(const ShapeSet&, const ShapeSet&) = default;
};

ShapeSet make_shape_set(const enumerate::Enumeration& run);

nlohmann::json to_json(const ShapeSet& set);
/// Throws Errc::parse on schema violations.
ShapeSet shape_set_from_json(const nlohmann::json& j);

std::string to_dot(const ShapeSet& set);
std::string format_report(const enumerate::RunReport& report,
                          const std::optional<enumerate::CompletenessReport>& completeness);

struct VerifyResult {
  bool ok = true;
  std::optional<std::size_t> shape;
  std::string message;
};

/// Replays every provenance record and re-checks the shape invariants.
VerifyResult verify_shape_set(const ShapeSet& set, bool check_completeness = true);

}  // namespace shapeforge::io
