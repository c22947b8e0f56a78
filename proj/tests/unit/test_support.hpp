#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "ggd/detectors/config.hpp"
#include "ggd/generators/traditional.hpp"
#include "ggd/graph.hpp"
#include "ggd/random.hpp"

namespace ggd::testing {

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    const auto k = static_cast<NodeId>(n);
    for (NodeId u = 0; u < k; ++u)
        for (NodeId v = u + 1; v < k; ++v) edges.push_back({u, v});
    return Graph(n, edges);
}

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u + 1 < static_cast<NodeId>(n); ++u) edges.push_back({u, u + 1});
    return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<Edge> edges;
    const auto k = static_cast<NodeId>(n);
    for (NodeId u = 0; u < k; ++u) edges.push_back({std::min<NodeId>(u, (u + 1) % k), std::max<NodeId>(u, (u + 1) % k)});
    return Graph(n, edges);
}

inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v <= static_cast<NodeId>(leaves); ++v) edges.push_back({0, v});
    return Graph(leaves + 1, edges);
}

inline Graph edgeless_graph(std::size_t n) { return Graph(n, {}); }

inline std::vector<NodeId> random_permutation(std::size_t n, Rng& rng) {
    std::vector<NodeId> p(n);
    std::iota(p.begin(), p.end(), NodeId{0});
    rng.shuffle(p);
    return p;
}

// Random G(n, p) with n drawn from [lo, hi].
inline Graph random_graph(Rng& rng, std::size_t lo = 3, std::size_t hi = 12, double p = 0.3) {
    const auto n = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
    return gen::er_generate_p(n, p, rng.next());
}

inline Corpus corpus_of(const std::vector<Graph>& graphs, Authenticity a, const std::string& dataset = "toy",
                        const std::string& generator = "gen") {
    Corpus c;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        c.items.push_back(a == Authenticity::Real
                              ? make_real(graphs[i], dataset, static_cast<std::int64_t>(i))
                              : make_generated(graphs[i], dataset, generator, static_cast<std::int64_t>(i)));
    }
    return c;
}

inline Corpus concat(Corpus a, const Corpus& b) {
    a.items.insert(a.items.end(), b.items.begin(), b.items.end());
    return a;
}

// Real = triangles, generated = edgeless 3-node graphs.
inline Corpus separable_corpus(std::size_t per_class) {
    return concat(corpus_of(std::vector<Graph>(per_class, complete_graph(3)), Authenticity::Real),
                  corpus_of(std::vector<Graph>(per_class, edgeless_graph(3)), Authenticity::Generated));
}

// Real = cycles, generated = dense random graphs, sizes varied.
inline Corpus varied_separable_corpus(std::size_t per_class, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Graph> real, fake;
    for (std::size_t i = 0; i < per_class; ++i) {
        real.push_back(cycle_graph(static_cast<std::size_t>(rng.range(5, 9))));
        fake.push_back(gen::er_generate_p(static_cast<std::size_t>(rng.range(5, 9)), 0.7, rng.next()));
    }
    return concat(corpus_of(real, Authenticity::Real), corpus_of(fake, Authenticity::Generated));
}

inline detect::DetectorConfig small_detector(std::uint64_t seed = 7) {
    detect::DetectorConfig c;
    c.encoder.max_degree_bucket = 7;
    c.encoder.widths = {16, 16, 16, 16};
    c.epochs = 40;
    c.batch_size = 8;
    c.lr = 0.01;
    c.seed = seed;
    c.projection_hidden = 16;
    c.contrastive_epochs = 10;
    c.classifier_epochs = 300;
    c.n_ps = 200;
    c.n_k = 5;
    c.pair_epochs = 15;
    c.pair_batch_size = 32;
    c.reference_cap = 20;
    c.feature_hidden = 16;
    c.feature_epochs = 150;
    return c;
}

}  // namespace ggd::testing
