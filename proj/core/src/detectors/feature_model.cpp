#include "ggd/detectors/feature_model.hpp"

#include "ggd/nn/loss.hpp"
#include "ggd/nn/trainer.hpp"

namespace ggd::detect {

using nn::Matrix;
using nn::Real;

namespace {
Matrix row_of(const stats::FeatureVector& v) {
    Matrix m(1, static_cast<Eigen::Index>(stats::kFeatureCount));
    for (std::size_t k = 0; k < stats::kFeatureCount; ++k) m(0, static_cast<Eigen::Index>(k)) = static_cast<Real>(v[k]);
    return m;
}
}  // namespace

nn::ParamList FeatureModel::params() {
    nn::ParamList out;
    mlp.collect(out, "mlp");
    return out;
}

Matrix FeatureModel::logits(const stats::FeatureVector& raw) const {
    return mlp.forward(row_of(scaler.transform(raw)));
}

FeatureModel train_feature_classifier(const Corpus& train, const DetectorConfig& config) {
    config.validate();
    require_both_labels(train, "feature classifier training");
    const auto raw = stats::corpus_features(train);
    FeatureModel model;
    model.config = config;
    model.scaler = stats::FeatureScaler::fit(raw);
    Rng rng(derive_seed(config.seed, 0x66656174ULL));
    model.mlp = nn::Mlp::init(static_cast<Eigen::Index>(stats::kFeatureCount),
                              static_cast<Eigen::Index>(config.feature_hidden), 2, rng);
    std::vector<Matrix> rows;
    rows.reserve(raw.size());
    for (const auto& r : raw) rows.push_back(row_of(model.scaler.transform(r)));

    auto params = model.params();
    nn::AdamState adam(static_cast<Real>(config.lr));
    const nn::EpochPlan plan{train.size(), config.feature_epochs, config.batch_size,
                             derive_seed(config.seed, 0x6f726465ULL)};
    model.training_log = nn::train_minibatches(
        params, adam, plan,
        [&](std::size_t i, std::size_t, nn::Gradients& grads) {
            nn::Mlp::Cache cache;
            const auto ce = nn::cross_entropy(model.mlp.forward(rows[i], &cache), label_index(train[i].authenticity));
            model.mlp.backward(cache, ce.grad, grads.data());
            return ce.loss;
        },
        "feature classifier");
    return model;
}

Prediction predict_feature(const FeatureModel& model, const Graph& g) {
    const Matrix p = nn::softmax(model.logits(stats::stat_features(g).as_array()));
    return decide(static_cast<double>(p(0, 0)), static_cast<double>(p(0, 1)));
}

}  // namespace ggd::detect
