#pragma once

#include <vector>

#include "ggd/detectors/config.hpp"
#include "ggd/detectors/prediction.hpp"
#include "ggd/nn/layers.hpp"
#include "ggd/stats.hpp"

namespace ggd::detect {

// MLP over the six standardized statistical features. The scaler is fitted
// on the training corpus only.
struct FeatureModel {
    stats::FeatureScaler scaler;
    nn::Mlp mlp;
    DetectorConfig config;
    std::vector<double> training_log;

    nn::ParamList params();
    nn::Matrix logits(const stats::FeatureVector& raw) const;
};

FeatureModel train_feature_classifier(const Corpus& train, const DetectorConfig& config);
Prediction predict_feature(const FeatureModel& model, const Graph& g);

}  // namespace ggd::detect
