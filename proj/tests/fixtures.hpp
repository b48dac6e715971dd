#pragma once

#include "shapeforge/enumerate.hpp"

// One enumeration per (N, d) per test binary.
inline const shapeforge::enumerate::Enumeration& cached_run(int n, int d) {
  static std::map<std::pair<int, int>, shapeforge::enumerate::Enumeration> runs;
  auto it = runs.find({n, d});
  if (it == runs.end()) it = runs.emplace(std::pair{n, d}, shapeforge::enumerate::enumerate_shapes(n, d)).first;
  return it->second;
}
