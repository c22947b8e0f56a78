#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ggd {

using NodeId = std::int32_t;

// Undirected edge stored with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    auto operator<=>(const Edge&) const = default;
};

// Immutable undirected simple graph. Edges are canonicalized (u < v),
// sorted and de-duplicated at construction; self-loops and out-of-range
// endpoints are rejected with ArgumentError.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    // Neighbors of u in ascending order.
    std::span<const NodeId> neighbors(NodeId u) const noexcept {
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
    bool has_edge(NodeId u, NodeId v) const noexcept;

    bool operator==(const Graph& other) const noexcept {
        return node_count_ == other.node_count_ && edges_ == other.edges_;
    }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

enum class Authenticity { Real, Generated };

std::string_view to_string(Authenticity a) noexcept;
Authenticity parse_authenticity(std::string_view text);

struct LabeledGraph {
    Graph graph;
    Authenticity authenticity = Authenticity::Real;
    std::string dataset_id;
    // Present exactly when authenticity == Generated.
    std::optional<std::string> generator_id;
    // Position of the graph in the pool it was drawn from (the raw dataset
    // for reals, the generator's sample stream for fakes). Used for leak checks.
    std::int64_t source_index = -1;

    bool operator==(const LabeledGraph&) const = default;
};

LabeledGraph make_real(Graph g, std::string dataset_id, std::int64_t source_index);
LabeledGraph make_generated(Graph g, std::string dataset_id, std::string generator_id,
                            std::int64_t source_index);
// Throws ArgumentError when the provenance invariant is broken.
void check_labels(const LabeledGraph& item);

// Identity of a graph across corpora: (authenticity, dataset, generator, index).
std::string identity_key(const LabeledGraph& item);

struct Corpus {
    std::vector<LabeledGraph> items;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return items.size(); }
    bool empty() const noexcept { return items.empty(); }
    const LabeledGraph& operator[](std::size_t i) const { return items[i]; }
    auto begin() const noexcept { return items.begin(); }
    auto end() const noexcept { return items.end(); }

    std::size_t count(Authenticity a) const noexcept;
    bool operator==(const Corpus&) const = default;
};

struct Split {
    Corpus train;
    Corpus test;
};

std::vector<std::size_t> degree_sequence(const Graph& g);

// Maximal connected components, each sorted ascending, ordered by their
// smallest node.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

// Deterministic shuffle by seed, then the first round(f * |c|) items go to
// train and the rest to test. Throws SplitError when |c| < 2.
Split split_corpus(const Corpus& c, double train_fraction, std::uint64_t seed);

// Node i of g becomes node permutation[i]. Throws ArgumentError when the
// permutation is not a bijection on [0, n).
Graph relabel_nodes(const Graph& g, std::span<const NodeId> permutation);

// Subgraph induced by `nodes` (distinct, in range); node nodes[k] becomes k.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace ggd
