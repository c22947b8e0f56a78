#pragma once

#include <string>
#include <vector>

#include "ggd/detectors/config.hpp"
#include "ggd/detectors/featurizer.hpp"
#include "ggd/nn/layers.hpp"

namespace ggd::detect {

// Stack of GCN layers followed by mean pooling. ReLU between layers, no
// activation after the last one.
struct GcnEncoder {
    NodeFeaturizer featurizer;
    std::vector<nn::GcnLayer> layers;

    struct Cache {
        std::vector<nn::Matrix> inputs;  // input of every layer
        std::vector<nn::GcnLayer::Cache> layers;
    };

    static GcnEncoder init(const EncoderConfig& config, Rng& rng);

    std::size_t embedding_width() const noexcept;
    GraphInput prepare(const Graph& g) const { return prepare_input(g, featurizer); }

    // Node embeddings of the last layer.
    nn::Matrix node_embeddings(const GraphInput& input, Cache* cache = nullptr) const;
    // 1 x embedding_width graph embedding.
    nn::Matrix embed(const GraphInput& input, Cache* cache = nullptr) const;
    nn::Matrix embed(const Graph& g) const { return embed(prepare(g)); }
    // Adds the layer-weight gradients for dL/d(embedding) into grads[0..layers).
    void backward(const GraphInput& input, const Cache& cache, const nn::Matrix& d_embedding,
                  nn::Matrix* grads) const;

    void collect(nn::ParamList& out, const std::string& prefix);
};

}  // namespace ggd::detect
