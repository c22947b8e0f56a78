#include "ggd/detectors/featurizer.hpp"

#include <algorithm>

#include "ggd/error.hpp"
#include "ggd/parallel.hpp"

namespace ggd::detect {

nn::Matrix NodeFeaturizer::operator()(const Graph& g) const {
    if (g.node_count() == 0) throw ArgumentError("node features need at least one node");
    nn::Matrix x = nn::Matrix::Zero(static_cast<Eigen::Index>(g.node_count()),
                                    static_cast<Eigen::Index>(width()));
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        const auto bucket = std::min(g.degree(static_cast<NodeId>(u)), max_degree_bucket);
        x(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(bucket)) = 1;
    }
    return x;
}

nn::Matrix node_features(const Graph& g, const NodeFeaturizer& featurizer) { return featurizer(g); }

GraphInput prepare_input(const Graph& g, const NodeFeaturizer& featurizer) {
    return GraphInput{nn::normalized_adjacency_sparse(g), featurizer(g)};
}

std::vector<GraphInput> prepare_inputs(const Corpus& corpus, const NodeFeaturizer& featurizer) {
    std::vector<GraphInput> out(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) { out[i] = prepare_input(corpus[i].graph, featurizer); });
    return out;
}

}  // namespace ggd::detect
