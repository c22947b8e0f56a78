#pragma once

#include <cstddef>
#include <cstdint>

#include "ggd/graph.hpp"

namespace ggd::gen {

// G(n, p): each of the n(n-1)/2 pairs is an edge independently with prob p.
Graph er_generate_p(std::size_t n, double p, std::uint64_t seed);
// G(n, M): a uniform M-subset of the pairs.
Graph er_generate_m(std::size_t n, std::size_t m, std::uint64_t seed);

// Preferential attachment: m isolated seed nodes, then every new node links
// to m distinct existing nodes drawn with weight degree + 1. Edges: m(n - m).
Graph ba_generate(std::size_t n, std::size_t m, std::uint64_t seed);

// Ring lattice with k neighbors per node whose edges are rewired with
// probability beta, avoiding self-loops and duplicates. Edges: nk/2.
Graph ws_generate(std::size_t n, std::size_t k, double beta, std::uint64_t seed);

// Pair index t in [0, n(n-1)/2) in row-major upper-triangle order.
Edge pair_from_index(std::size_t n, std::size_t t);

}  // namespace ggd::gen
