#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ggd/detectors/config.hpp"
#include "ggd/detectors/encoder.hpp"
#include "ggd/detectors/prediction.hpp"

namespace ggd::detect {

struct GraphPair {
    std::size_t first = 0;
    std::size_t second = 0;
    int same = 0;  // 1 when both graphs carry the same key
    bool operator==(const GraphPair&) const = default;
};

// n_same pairs whose keys agree (a key uniformly among those with at least
// two graphs, then two distinct graphs of it) and n_different pairs whose
// keys differ (two distinct keys uniformly, then one graph of each). Throws
// PairError when no key has two graphs or fewer than two keys exist.
std::vector<GraphPair> sample_pairs(const std::vector<std::string>& keys, std::size_t n_same,
                                    std::size_t n_different, std::uint64_t seed);
// Authenticity pairs: n_ps same-label and n_ps different-label pairs.
std::vector<GraphPair> sample_pairs(const Corpus& train, std::size_t n_ps, std::uint64_t seed);

// Siamese network: a shared GCN encoder and a head
//   p = sigmoid(w . |h_i - h_j| + b).
struct MetricModel {
    GcnEncoder encoder;
    nn::Matrix head_weight;  // 1 x d
    nn::Matrix head_bias;    // 1 x 1
    DetectorConfig config;
    Corpus references;  // labelled graphs used at inference
    std::vector<double> training_log;

    static MetricModel init(const DetectorConfig& config);
    nn::ParamList params();

    nn::Real posterior(const nn::Matrix& h_first, const nn::Matrix& h_second) const;
    nn::Real posterior(const Graph& first, const Graph& second) const;
    // Summed BCE over the pairs of one batch; adds gradients when grads is set.
    nn::Real batch_loss(const std::vector<GraphInput>& inputs, const std::vector<GraphPair>& pairs,
                        nn::Gradients* grads) const;
};

// Trains the siamese network on pairs of graphs from `graphs`.
MetricModel train_siamese(const std::vector<Graph>& graphs, const std::vector<GraphPair>& pairs,
                          const DetectorConfig& config);
// Samples authenticity pairs from `train`, trains, and keeps up to
// reference_cap graphs per label as inference references.
MetricModel train_metric(const Corpus& train, const DetectorConfig& config);

// Reference embeddings grouped by label, computed once per model.
struct ReferenceBank {
    std::vector<nn::Matrix> real;
    std::vector<nn::Matrix> generated;
};
ReferenceBank make_reference_bank(const MetricModel& model, const Corpus& references);

// For each label, averages the posteriors of g against n_k of that label's
// references (chosen by seed, summed in reference order) and predicts the
// label with the larger mean. Throws ArgumentError when a label has fewer
// than n_k references.
Prediction metric_predict(const MetricModel& model, const ReferenceBank& bank, const Graph& g, std::size_t n_k,
                          std::uint64_t seed);
Prediction metric_predict(const MetricModel& model, const Graph& g, const Corpus& references, std::size_t n_k,
                          std::uint64_t seed);

// Posterior that g1 and g2 come from the same generator, for a model
// trained on generator-keyed pairs. Threshold 0.5.
double attribution_predict(const MetricModel& model, const Graph& g1, const Graph& g2);

}  // namespace ggd::detect
