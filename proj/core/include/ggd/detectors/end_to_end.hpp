#pragma once

#include <vector>

#include "ggd/detectors/config.hpp"
#include "ggd/detectors/encoder.hpp"
#include "ggd/detectors/prediction.hpp"

namespace ggd::detect {

// GCN encoder, mean pooling and one linear layer to two logits.
struct EndToEndModel {
    GcnEncoder encoder;
    nn::Linear classifier;
    DetectorConfig config;
    std::vector<double> training_log;

    static EndToEndModel init(const DetectorConfig& config);
    nn::ParamList params();
    // Cross-entropy of one graph; adds parameter gradients when grads is set.
    nn::Real loss(const GraphInput& input, Authenticity truth, nn::Gradients* grads) const;
    nn::Matrix logits(const GraphInput& input) const;
};

EndToEndModel train_end_to_end(const Corpus& train, const DetectorConfig& config);
Prediction predict_end_to_end(const EndToEndModel& model, const Graph& g);

}  // namespace ggd::detect
