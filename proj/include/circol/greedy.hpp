#pragma once

#include <span>

#include "circol/core.hpp"

namespace circol {

// First Fit: visit vertices in `order`, give each the smallest color not used
// by an already-colored neighbor.
Coloring first_fit(const CircleGraph& graph, std::span<const int> order);
Coloring first_fit(const CircleGraph& graph);

} // namespace circol
