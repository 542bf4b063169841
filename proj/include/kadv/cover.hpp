#pragma once

#include <string>
#include <vector>

#include "kadv/graph.hpp"

namespace kadv {

// Edge partition into paths of length <= 2 with every vertex in exactly two
// paths. Paths of length 0 (single vertices) are allowed. Orientation is the
// listed order, start to end.
using PathCover = std::vector<std::vector<int>>;

// Empty result = valid cover. Violations are data, not errors.
std::vector<std::string> validate_cover(const WeightedGraph& g, const PathCover& cover);

}  // namespace kadv
