#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ggd/graph.hpp"
#include "ggd/nn/gru.hpp"
#include "ggd/nn/layers.hpp"

namespace ggd::gen {

// BFS sequence encoding of a graph. Node order[i] is the i-th visited node.
// vectors[i - 1] (i >= 1) holds `width` bits; bit j - 1 is set when the i-th
// node links to the (i - j)-th node.
struct BfsEncoding {
    std::vector<NodeId> order;
    std::vector<std::vector<std::uint8_t>> vectors;
    std::size_t width = 0;
};

// BFS from `start`, visiting neighbors in ascending index order; when a
// component is exhausted the walk restarts at the lowest unvisited node.
std::vector<NodeId> bfs_order(const Graph& g, NodeId start);
// Smallest width that holds every backward link of this order.
std::size_t sequence_width(const Graph& g, const std::vector<NodeId>& order);
BfsEncoding bfs_encode(const Graph& g, NodeId start, std::size_t width);
// Maximum sequence width over every BFS start node.
std::size_t bfs_bandwidth(const Graph& g);

struct GraphRnnConfig {
    std::size_t hidden_dim = 64;
    std::size_t epochs = 200;
    std::size_t batch_size = 16;
    double lr = 0.003;
    std::uint64_t seed = 0;
};

// Simplified GraphRNN: a graph-level GRU consumes the previous node's
// adjacency vector and a sigmoid head emits the next node's M edge
// probabilities.
class GraphRnnModel {
public:
    nn::GruCell cell;
    nn::Linear head;
    std::size_t width = 0;  // M

    static GraphRnnModel init(std::size_t width, std::size_t hidden_dim, Rng& rng);
    nn::ParamList params();

    // Summed binary cross-entropy over the valid bits of the sequence.
    nn::Real loss(const BfsEncoding& encoding, nn::Gradients* grads) const;
    // Rolls out until n nodes have been emitted.
    Graph sample(std::size_t n, Rng& rng) const;
};

// Throws TrainError when the corpus has no edges to model.
GraphRnnModel fit_graphrnn_model(const Corpus& corpus, const GraphRnnConfig& config,
                                 std::vector<double>* log);

}  // namespace ggd::gen
