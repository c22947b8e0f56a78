#include "ggd/detectors/end_to_end.hpp"

#include "ggd/error.hpp"
#include "ggd/nn/loss.hpp"
#include "ggd/nn/trainer.hpp"
#include "ggd/random.hpp"

namespace ggd::detect {

Prediction decide(double p_real, double p_generated) noexcept {
    return Prediction{p_generated > p_real ? Authenticity::Generated : Authenticity::Real, p_real, p_generated};
}

void require_both_labels(const Corpus& corpus, std::string_view what) {
    if (corpus.count(Authenticity::Real) == 0 || corpus.count(Authenticity::Generated) == 0) {
        throw TrainError(std::string(what) + " needs both real and generated training graphs");
    }
}

EndToEndModel EndToEndModel::init(const DetectorConfig& config) {
    config.validate();
    Rng rng(derive_seed(config.seed, 0x65326520ULL));
    EndToEndModel m;
    m.config = config;
    m.encoder = GcnEncoder::init(config.encoder, rng);
    m.classifier = nn::Linear::init(static_cast<Eigen::Index>(m.encoder.embedding_width()), 2, rng);
    return m;
}

nn::ParamList EndToEndModel::params() {
    nn::ParamList out;
    encoder.collect(out, "encoder");
    classifier.collect(out, "classifier");
    return out;
}

nn::Matrix EndToEndModel::logits(const GraphInput& input) const {
    return classifier.forward(encoder.embed(input));
}

nn::Real EndToEndModel::loss(const GraphInput& input, Authenticity truth, nn::Gradients* grads) const {
    GcnEncoder::Cache cache;
    const nn::Matrix h = encoder.embed(input, grads ? &cache : nullptr);
    const auto ce = nn::cross_entropy(classifier.forward(h), label_index(truth));
    if (grads) {
        const std::size_t k = encoder.layers.size();
        const nn::Matrix d_h = classifier.backward(h, ce.grad, (*grads)[k], (*grads)[k + 1]);
        encoder.backward(input, cache, d_h, grads->data());
    }
    return ce.loss;
}

EndToEndModel train_end_to_end(const Corpus& train, const DetectorConfig& config) {
    require_both_labels(train, "end-to-end training");
    EndToEndModel model = EndToEndModel::init(config);
    const auto inputs = prepare_inputs(train, model.encoder.featurizer);
    auto params = model.params();
    nn::AdamState adam(static_cast<nn::Real>(config.lr));
    const nn::EpochPlan plan{train.size(), config.epochs, config.batch_size, derive_seed(config.seed, 0x6f726465ULL)};
    model.training_log = nn::train_minibatches(
        params, adam, plan,
        [&](std::size_t i, std::size_t, nn::Gradients& grads) {
            return model.loss(inputs[i], train[i].authenticity, &grads);
        },
        "end-to-end");
    return model;
}

Prediction predict_end_to_end(const EndToEndModel& model, const Graph& g) {
    const nn::Matrix p = nn::softmax(model.logits(model.encoder.prepare(g)));
    return decide(static_cast<double>(p(0, 0)), static_cast<double>(p(0, 1)));
}

}  // namespace ggd::detect
