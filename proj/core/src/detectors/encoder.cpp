#include "ggd/detectors/encoder.hpp"

#include "ggd/error.hpp"

namespace ggd::detect {

GcnEncoder GcnEncoder::init(const EncoderConfig& config, Rng& rng) {
    if (config.widths.empty()) throw ConfigError("encoder needs at least one layer");
    GcnEncoder enc;
    enc.featurizer = NodeFeaturizer{config.max_degree_bucket};
    auto d_in = static_cast<Eigen::Index>(enc.featurizer.width());
    for (std::size_t i = 0; i < config.widths.size(); ++i) {
        const auto d_out = static_cast<Eigen::Index>(config.widths[i]);
        const auto act = i + 1 == config.widths.size() ? nn::Activation::Identity : nn::Activation::ReLU;
        enc.layers.push_back(nn::GcnLayer::init(d_in, d_out, act, rng));
        d_in = d_out;
    }
    return enc;
}

std::size_t GcnEncoder::embedding_width() const noexcept {
    return layers.empty() ? 0 : static_cast<std::size_t>(layers.back().weight.cols());
}

nn::Matrix GcnEncoder::node_embeddings(const GraphInput& input, Cache* cache) const {
    if (cache) {
        cache->inputs.resize(layers.size());
        cache->layers.resize(layers.size());
    }
    nn::Matrix h = input.features;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        nn::Matrix next = layers[i].forward(input.adjacency, h, cache ? &cache->layers[i] : nullptr);
        if (cache) cache->inputs[i] = std::move(h);
        h = std::move(next);
    }
    return h;
}

nn::Matrix GcnEncoder::embed(const GraphInput& input, Cache* cache) const {
    return nn::mean_pool(node_embeddings(input, cache));
}

void GcnEncoder::backward(const GraphInput& input, const Cache& cache, const nn::Matrix& d_embedding,
                          nn::Matrix* grads) const {
    nn::Matrix d = nn::mean_pool_backward(input.features.rows(), d_embedding);
    for (std::size_t i = layers.size(); i-- > 0;) {
        d = layers[i].backward(input.adjacency, cache.layers[i], d, grads[i]);
    }
}

void GcnEncoder::collect(nn::ParamList& out, const std::string& prefix) {
    for (std::size_t i = 0; i < layers.size(); ++i) layers[i].collect(out, prefix + ".gcn" + std::to_string(i));
}

}  // namespace ggd::detect
