#include "ggd/detectors/augment.hpp"

#include <algorithm>
#include <cmath>

#include "ggd/error.hpp"
#include "ggd/generators/traditional.hpp"
#include "ggd/random.hpp"

namespace ggd::detect {

std::string_view to_string(Augmentation kind) noexcept {
    switch (kind) {
        case Augmentation::NodeDrop: return "node_drop";
        case Augmentation::EdgePerturb: return "edge_perturb";
        case Augmentation::Subgraph: return "subgraph";
    }
    return "?";
}

namespace {

Graph keep_nodes(const Graph& g, std::vector<NodeId> nodes) {
    std::sort(nodes.begin(), nodes.end());
    return induced_subgraph(g, nodes);
}

Graph node_drop(const Graph& g, double ratio, Rng& rng) {
    const std::size_t n = g.node_count();
    const auto drop = std::min(static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n))), n - 1);
    std::vector<NodeId> kept;
    for (auto i : rng.choose(n, n - drop)) kept.push_back(static_cast<NodeId>(i));
    return keep_nodes(g, std::move(kept));
}

Graph edge_perturb(const Graph& g, double ratio, Rng& rng) {
    const std::size_t n = g.node_count();
    const std::size_t m = g.edge_count();
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<std::size_t> non_edges;
    non_edges.reserve(pairs - m);
    for (std::size_t t = 0; t < pairs; ++t) {
        const Edge e = gen::pair_from_index(n, t);
        if (!g.has_edge(e.u, e.v)) non_edges.push_back(t);
    }
    // Rewiring can only move edges onto existing non-edges.
    const auto k = std::min(static_cast<std::size_t>(std::floor(ratio * static_cast<double>(m))), non_edges.size());
    if (k == 0) return g;

    std::vector<bool> removed(m, false);
    for (auto i : rng.choose(m, k)) removed[i] = true;
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!removed[i]) edges.push_back(g.edges()[i]);
    }
    for (auto i : rng.choose(non_edges.size(), k)) edges.push_back(gen::pair_from_index(n, non_edges[i]));
    return Graph(n, std::move(edges));
}

// Grows a connected node set from a random start by repeatedly stepping to
// a random frontier neighbor; jumps to a random unvisited node when the
// current component is exhausted.
Graph random_walk_subgraph(const Graph& g, double ratio, Rng& rng) {
    const std::size_t n = g.node_count();
    const auto target = std::max<std::size_t>(
        1, std::min(n, static_cast<std::size_t>(std::ceil((1.0 - ratio) * static_cast<double>(n) - 1e-9))));
    std::vector<bool> in_set(n, false);
    std::vector<NodeId> chosen;
    std::vector<NodeId> frontier;
    auto add = [&](NodeId u) {
        in_set[u] = true;
        chosen.push_back(u);
        for (NodeId v : g.neighbors(u)) frontier.push_back(v);
    };
    add(static_cast<NodeId>(rng.below(n)));
    while (chosen.size() < target) {
        std::erase_if(frontier, [&](NodeId v) { return in_set[v]; });
        if (frontier.empty()) {
            std::vector<NodeId> rest;
            for (std::size_t u = 0; u < n; ++u) {
                if (!in_set[u]) rest.push_back(static_cast<NodeId>(u));
            }
            add(rest[rng.below(rest.size())]);
        } else {
            add(frontier[rng.below(frontier.size())]);
        }
    }
    return keep_nodes(g, std::move(chosen));
}

}  // namespace

Graph augment(const Graph& g, Augmentation kind, double ratio, std::uint64_t seed) {
    if (!(ratio >= 0.0 && ratio < 1.0)) throw ArgumentError("augmentation ratio must lie in [0, 1)");
    if (ratio == 0.0 || g.node_count() < 2) return g;
    Rng rng(seed);
    switch (kind) {
        case Augmentation::NodeDrop: return node_drop(g, ratio, rng);
        case Augmentation::EdgePerturb: return edge_perturb(g, ratio, rng);
        case Augmentation::Subgraph: return random_walk_subgraph(g, ratio, rng);
    }
    return g;
}

}  // namespace ggd::detect
