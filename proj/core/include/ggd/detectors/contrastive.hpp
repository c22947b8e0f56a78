#pragma once

#include <vector>

#include "ggd/detectors/config.hpp"
#include "ggd/detectors/encoder.hpp"
#include "ggd/detectors/prediction.hpp"

namespace ggd::detect {

// Linear max-margin classifier on standardized embeddings. Positive scores
// mean Real; a score of exactly 0 also counts as Real.
struct LinearClassifier {
    nn::Matrix center;  // 1 x d, fixed after training
    nn::Matrix scale;   // 1 x d, reciprocal standard deviations
    nn::Matrix weight;  // 1 x d
    nn::Matrix bias;    // 1 x 1
    std::vector<double> training_log;

    nn::Real score(const nn::Matrix& embedding) const;
    void collect(nn::ParamList& out, const std::string& prefix);
};

// Mean hinge loss plus l2 * |w|^2, minimized by full-batch Adam. Labels are
// +1 (Real) and -1 (Generated), one per row of `embeddings`.
LinearClassifier train_linear_classifier(const nn::Matrix& embeddings, const std::vector<int>& labels,
                                         double l2_penalty, std::size_t epochs, double lr);

struct ContrastiveEncoder {
    GcnEncoder encoder;
    nn::Mlp projection;
    std::vector<double> training_log;
    std::size_t skipped_batches = 0;

    nn::ParamList params();
};

// Self-supervised NT-Xent training on unlabeled graphs. The first view of
// every graph is a node drop; the second is drawn uniformly from node drop,
// edge perturbation and subgraph.
ContrastiveEncoder train_contrastive_encoder(const std::vector<Graph>& graphs, const DetectorConfig& config);

// NT-Xent loss of one batch and, when grads is set, its parameter gradients.
nn::Real contrastive_batch_loss(const ContrastiveEncoder& model, const std::vector<GraphInput>& first_views,
                                const std::vector<GraphInput>& second_views, nn::Real tau, nn::Gradients* grads);

struct ContrastiveModel {
    GcnEncoder encoder;
    LinearClassifier classifier;
    DetectorConfig config;
    std::vector<double> training_log;  // encoder epochs
};

ContrastiveModel train_contrastive(const Corpus& train, const DetectorConfig& config);
Prediction predict_contrastive(const ContrastiveModel& model, const Graph& g);

}  // namespace ggd::detect
