#include "ggd/generators/traditional.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "ggd/error.hpp"
#include "ggd/random.hpp"

namespace ggd::gen {

Edge pair_from_index(std::size_t n, std::size_t t) {
    std::size_t u = 0;
    std::size_t row = n - 1;
    while (t >= row) {
        t -= row;
        ++u;
        --row;
    }
    return Edge{static_cast<NodeId>(u), static_cast<NodeId>(u + 1 + t)};
}

Graph er_generate_p(std::size_t n, double p, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("ER needs n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("ER edge probability must lie in [0, 1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.bernoulli(p)) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
        }
    }
    return Graph(n, std::move(edges));
}

Graph er_generate_m(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("ER needs n >= 1");
    const std::size_t pairs = n * (n - 1) / 2;
    if (m > pairs) throw ArgumentError("ER edge count exceeds n(n-1)/2");
    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (auto t : rng.choose(pairs, m)) edges.push_back(pair_from_index(n, t));
    return Graph(n, std::move(edges));
}

Graph ba_generate(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw ArgumentError("BA needs 1 <= m < n");
    Rng rng(seed);
    std::vector<double> weight(n, 1.0);  // degree + 1
    std::vector<Edge> edges;
    edges.reserve(m * (n - m));
    std::vector<NodeId> targets;
    for (std::size_t v = m; v < n; ++v) {
        targets.clear();
        double total = 0.0;
        for (std::size_t u = 0; u < v; ++u) total += weight[u];
        while (targets.size() < m) {
            double r = rng.uniform() * total;
            std::size_t pick = 0;
            while (pick + 1 < v && r >= weight[pick]) {
                r -= weight[pick];
                ++pick;
            }
            const auto node = static_cast<NodeId>(pick);
            if (std::find(targets.begin(), targets.end(), node) == targets.end()) targets.push_back(node);
        }
        for (NodeId u : targets) {
            edges.push_back({u, static_cast<NodeId>(v)});
            weight[u] += 1.0;
        }
        weight[v] += static_cast<double>(m);
    }
    return Graph(n, std::move(edges));
}

Graph ws_generate(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
    if (k % 2 != 0 || k >= n) throw ArgumentError("WS needs an even k < n");
    if (!(beta >= 0.0 && beta <= 1.0)) throw ArgumentError("WS rewiring probability must lie in [0, 1]");
    Rng rng(seed);
    std::vector<std::set<NodeId>> adj(n);
    auto link = [&](std::size_t a, std::size_t b) {
        adj[a].insert(static_cast<NodeId>(b));
        adj[b].insert(static_cast<NodeId>(a));
    };
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t j = 1; j <= k / 2; ++j) link(u, (u + j) % n);
    }
    for (std::size_t j = 1; j <= k / 2; ++j) {
        for (std::size_t u = 0; u < n; ++u) {
            const std::size_t v = (u + j) % n;
            if (!adj[u].contains(static_cast<NodeId>(v))) continue;  // already rewired away
            if (!rng.bernoulli(beta)) continue;
            if (adj[u].size() >= n - 1) continue;
            std::size_t w = rng.below(n);
            while (w == u || adj[u].contains(static_cast<NodeId>(w))) w = rng.below(n);
            adj[u].erase(static_cast<NodeId>(v));
            adj[v].erase(static_cast<NodeId>(u));
            link(u, w);
        }
    }
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (NodeId v : adj[u]) {
            if (static_cast<std::size_t>(v) > u) edges.push_back({static_cast<NodeId>(u), v});
        }
    }
    return Graph(n, std::move(edges));
}

}  // namespace ggd::gen
