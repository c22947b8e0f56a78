#pragma once

#include <cstddef>

#include "ggd/graph.hpp"
#include "ggd/nn/tensor.hpp"

namespace ggd::detect {

// Degree one-hot node features: row u is the one-hot of
// min(deg(u), max_degree_bucket), so the width is max_degree_bucket + 1.
struct NodeFeaturizer {
    std::size_t max_degree_bucket = 31;

    std::size_t width() const noexcept { return max_degree_bucket + 1; }
    nn::Matrix operator()(const Graph& g) const;
};

nn::Matrix node_features(const Graph& g, const NodeFeaturizer& featurizer);

// Everything a GCN needs to run on one graph.
struct GraphInput {
    nn::SparseMatrix adjacency;  // normalized Â
    nn::Matrix features;
};

GraphInput prepare_input(const Graph& g, const NodeFeaturizer& featurizer);
std::vector<GraphInput> prepare_inputs(const Corpus& corpus, const NodeFeaturizer& featurizer);

}  // namespace ggd::detect
