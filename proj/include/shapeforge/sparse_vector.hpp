#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "shapeforge/integer.hpp"

namespace shapeforge {

/// Sparse integer vector: strictly increasing column indices, no zero entries.
using SparseEntry = std::pair<std::size_t, Integer>;
using SparseVector = std::vector<SparseEntry>;

}  // namespace shapeforge
