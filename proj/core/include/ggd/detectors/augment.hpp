#pragma once

#include <cstdint>
#include <string_view>

#include "ggd/graph.hpp"

namespace ggd::detect {

enum class Augmentation { NodeDrop, EdgePerturb, Subgraph };

std::string_view to_string(Augmentation kind) noexcept;

// Random structural view of g. ratio must lie in [0, 1); ratio 0 returns g
// unchanged and at least one node always survives.
//   NodeDrop    removes floor(ratio * n) uniformly chosen nodes
//   EdgePerturb removes floor(ratio * m) edges and adds as many former non-edges
//   Subgraph    keeps ceil((1 - ratio) * n) nodes grown from a random start
Graph augment(const Graph& g, Augmentation kind, double ratio, std::uint64_t seed);

}  // namespace ggd::detect
