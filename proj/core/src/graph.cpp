#include "ggd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "ggd/error.hpp"
#include "ggd/random.hpp"

namespace ggd {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) : node_count_(node_count) {
    for (auto& e : edges) {
        if (e.u == e.v) throw ArgumentError("self-loop on node " + std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= node_count ||
            static_cast<std::size_t>(e.v) >= node_count) {
            throw ArgumentError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") out of range for n=" + std::to_string(node_count));
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    offsets_.assign(node_count + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[cursor[e.u]++] = e.v;
        adjacency_[cursor[e.v]++] = e.u;
    }
    for (std::size_t i = 0; i < node_count; ++i) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
    }
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count_ ||
        static_cast<std::size_t>(v) >= node_count_) {
        return false;
    }
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::string_view to_string(Authenticity a) noexcept {
    return a == Authenticity::Real ? "real" : "generated";
}

Authenticity parse_authenticity(std::string_view text) {
    if (text == "real") return Authenticity::Real;
    if (text == "generated") return Authenticity::Generated;
    throw ParseError("unknown authenticity '" + std::string(text) + "'");
}

LabeledGraph make_real(Graph g, std::string dataset_id, std::int64_t source_index) {
    return LabeledGraph{std::move(g), Authenticity::Real, std::move(dataset_id), std::nullopt,
                        source_index};
}

LabeledGraph make_generated(Graph g, std::string dataset_id, std::string generator_id,
                            std::int64_t source_index) {
    return LabeledGraph{std::move(g), Authenticity::Generated, std::move(dataset_id),
                        std::move(generator_id), source_index};
}

void check_labels(const LabeledGraph& item) {
    const bool generated = item.authenticity == Authenticity::Generated;
    if (generated != item.generator_id.has_value()) {
        throw ArgumentError("generator id must be present exactly for generated graphs");
    }
}

std::string identity_key(const LabeledGraph& item) {
    std::string key(to_string(item.authenticity));
    key += '|';
    key += item.dataset_id;
    key += '|';
    key += item.generator_id.value_or("");
    key += '|';
    key += std::to_string(item.source_index);
    return key;
}

std::size_t Corpus::count(Authenticity a) const noexcept {
    return static_cast<std::size_t>(std::count_if(
        items.begin(), items.end(), [a](const LabeledGraph& x) { return x.authenticity == a; }));
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
    std::vector<std::size_t> out(g.node_count());
    for (std::size_t u = 0; u < g.node_count(); ++u) out[u] = g.degree(static_cast<NodeId>(u));
    return out;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    const auto n = g.node_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<NodeId>> components;
    std::vector<NodeId> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<NodeId> comp;
        stack.push_back(static_cast<NodeId>(start));
        seen[start] = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

Split split_corpus(const Corpus& c, double train_fraction, std::uint64_t seed) {
    if (c.size() < 2) throw SplitError("cannot split a corpus with fewer than 2 items");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw SplitError("train fraction must lie in (0, 1)");
    }
    std::vector<std::size_t> order(c.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(c.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, c.size() - 1);

    Split out;
    out.train.seed = derive_seed(seed, 1);
    out.test.seed = derive_seed(seed, 2);
    out.train.items.reserve(n_train);
    out.test.items.reserve(c.size() - n_train);
    for (std::size_t k = 0; k < order.size(); ++k) {
        (k < n_train ? out.train : out.test).items.push_back(c.items[order[k]]);
    }
    return out;
}

Graph relabel_nodes(const Graph& g, std::span<const NodeId> permutation) {
    const auto n = g.node_count();
    if (permutation.size() != n) throw ArgumentError("permutation length differs from node count");
    std::vector<char> hit(n, 0);
    for (NodeId p : permutation) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || hit[p]) {
            throw ArgumentError("permutation is not a bijection");
        }
        hit[p] = 1;
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back({permutation[e.u], permutation[e.v]});
    return Graph(n, std::move(edges));
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<NodeId> position(g.node_count(), -1);
    for (std::size_t k = 0; k < nodes.size(); ++k) position[nodes[k]] = static_cast<NodeId>(k);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (position[e.u] >= 0 && position[e.v] >= 0) edges.push_back({position[e.u], position[e.v]});
    }
    return Graph(nodes.size(), std::move(edges));
}

}  // namespace ggd
