#include "ggd/detectors/contrastive.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "ggd/detectors/augment.hpp"
#include "ggd/error.hpp"
#include "ggd/nn/adam.hpp"
#include "ggd/nn/loss.hpp"
#include "ggd/parallel.hpp"

namespace ggd::detect {

using nn::Matrix;
using nn::Real;

Real LinearClassifier::score(const Matrix& embedding) const {
    const Matrix z = (embedding - center).cwiseProduct(scale);
    return (z * weight.transpose())(0, 0) + bias(0, 0);
}

void LinearClassifier::collect(nn::ParamList& out, const std::string& prefix) {
    out.push_back({prefix + ".weight", &weight});
    out.push_back({prefix + ".bias", &bias});
}

LinearClassifier train_linear_classifier(const Matrix& embeddings, const std::vector<int>& labels,
                                         double l2_penalty, std::size_t epochs, double lr) {
    const Eigen::Index n = embeddings.rows();
    const Eigen::Index d = embeddings.cols();
    if (static_cast<std::size_t>(n) != labels.size()) throw ShapeError("one label per embedding row is required");
    const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
    const bool has_neg = std::find(labels.begin(), labels.end(), -1) != labels.end();
    if (!has_pos || !has_neg) throw TrainError("linear classifier needs both classes");

    LinearClassifier c;
    c.center = embeddings.colwise().mean();
    const Matrix centered = embeddings.rowwise() - c.center.row(0);
    c.scale = Matrix(1, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const Real sd = std::sqrt(centered.col(k).squaredNorm() / static_cast<Real>(n));
        c.scale(0, k) = Real(1) / std::max(sd, Real(1e-8));
    }
    const Matrix x = centered.array().rowwise() * c.scale.row(0).array();
    c.weight = Matrix::Zero(1, d);
    c.bias = Matrix::Zero(1, 1);

    nn::ParamList params;
    c.collect(params, "classifier");
    nn::AdamState adam(static_cast<Real>(lr));
    const Real inv_n = Real(1) / static_cast<Real>(n);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        const Matrix scores = x * c.weight.transpose();
        nn::Gradients grads{Real(2 * l2_penalty) * c.weight, Matrix::Zero(1, 1)};
        Real loss = static_cast<Real>(l2_penalty) * c.weight.squaredNorm();
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto h = nn::hinge_loss(scores(i, 0) + c.bias(0, 0), labels[static_cast<std::size_t>(i)]);
            loss += h.loss * inv_n;
            if (h.grad != 0) {
                grads[0] += (h.grad * inv_n) * x.row(i);
                grads[1](0, 0) += h.grad * inv_n;
            }
        }
        c.training_log.push_back(static_cast<double>(loss));
        nn::adam_step(adam, params, grads);
    }
    return c;
}

nn::ParamList ContrastiveEncoder::params() {
    nn::ParamList out;
    encoder.collect(out, "encoder");
    projection.collect(out, "projection");
    return out;
}

Real contrastive_batch_loss(const ContrastiveEncoder& model, const std::vector<GraphInput>& first_views,
                            const std::vector<GraphInput>& second_views, Real tau, nn::Gradients* grads) {
    const std::size_t n = first_views.size();
    if (second_views.size() != n) throw ShapeError("both view lists must have the same length");
    const auto width = static_cast<Eigen::Index>(model.projection.second.weight.cols());
    struct View {
        GcnEncoder::Cache encoder_cache;
        nn::Mlp::Cache projection_cache;
    };
    std::vector<View> views(2 * n);
    Matrix z1(static_cast<Eigen::Index>(n), width);
    Matrix z2(static_cast<Eigen::Index>(n), width);
    parallel_for(2 * n, [&](std::size_t k) {
        const bool second = k >= n;
        const std::size_t i = second ? k - n : k;
        const GraphInput& input = second ? second_views[i] : first_views[i];
        const Matrix h = model.encoder.embed(input, &views[k].encoder_cache);
        const Matrix z = model.projection.forward(h, &views[k].projection_cache);
        (second ? z2 : z1).row(static_cast<Eigen::Index>(i)) = z.row(0);
    });
    const auto value = nn::nt_xent(z1, z2, tau);
    if (!grads) return value.loss;

    std::vector<nn::Gradients> per(2 * n);
    nn::ParamList shapes = const_cast<ContrastiveEncoder&>(model).params();
    const std::size_t layers = model.encoder.layers.size();
    parallel_for(2 * n, [&](std::size_t k) {
        const bool second = k >= n;
        const std::size_t i = second ? k - n : k;
        per[k] = nn::zero_gradients(shapes);
        const Matrix d_z = (second ? value.grad_second : value.grad_first).row(static_cast<Eigen::Index>(i));
        const Matrix d_h = model.projection.backward(views[k].projection_cache, d_z, per[k].data() + layers);
        model.encoder.backward(second ? second_views[i] : first_views[i], views[k].encoder_cache, d_h,
                               per[k].data());
    });
    for (auto& g : per) nn::accumulate(*grads, g);
    return value.loss;
}

ContrastiveEncoder train_contrastive_encoder(const std::vector<Graph>& graphs, const DetectorConfig& config) {
    config.validate();
    if (graphs.size() < 2) throw TrainError("contrastive training needs at least 2 graphs");
    Rng init_rng(derive_seed(config.seed, 0x636c7220ULL));
    ContrastiveEncoder model;
    model.encoder = GcnEncoder::init(config.encoder, init_rng);
    const auto width = static_cast<Eigen::Index>(model.encoder.embedding_width());
    model.projection = nn::Mlp::init(width, static_cast<Eigen::Index>(config.projection_hidden), width, init_rng);

    auto params = model.params();
    nn::AdamState adam(static_cast<Real>(config.lr));
    Rng order_rng(derive_seed(config.seed, 0x6f726465ULL));
    std::vector<std::size_t> order(graphs.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t batch = config.batch_size;
    constexpr Augmentation pool[] = {Augmentation::NodeDrop, Augmentation::EdgePerturb, Augmentation::Subgraph};

    for (std::size_t epoch = 0; epoch < config.contrastive_epochs; ++epoch) {
        order_rng.shuffle(order);
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t count = std::min(batch, order.size() - start);
            if (count < 2) {
                ++model.skipped_batches;
                std::cerr << "warning: skipping contrastive batch of size 1 in epoch " << epoch << '\n';
                continue;
            }
            std::vector<GraphInput> first(count), second(count);
            parallel_for(count, [&](std::size_t k) {
                const std::size_t idx = order[start + k];
                const Graph& g = graphs[idx];
                Rng pick(derive_seed(config.seed, {epoch, idx, 2}));
                const Augmentation kind = pool[pick.below(3)];
                first[k] = model.encoder.prepare(
                    augment(g, Augmentation::NodeDrop, config.augment_ratio, derive_seed(config.seed, {epoch, idx, 1})));
                second[k] = model.encoder.prepare(
                    augment(g, kind, config.augment_ratio, derive_seed(config.seed, {epoch, idx, 3})));
            });
            nn::Gradients grads = nn::zero_gradients(params);
            epoch_loss += static_cast<double>(
                contrastive_batch_loss(model, first, second, static_cast<Real>(config.tau), &grads));
            ++batches;
            nn::adam_step(adam, params, grads);
        }
        if (batches == 0) throw TrainError("contrastive training produced no usable batch");
        epoch_loss /= static_cast<double>(batches);
        if (!std::isfinite(epoch_loss) || !nn::all_finite(params)) {
            throw TrainError("contrastive loss diverged at epoch " + std::to_string(epoch));
        }
        model.training_log.push_back(epoch_loss);
    }
    return model;
}

ContrastiveModel train_contrastive(const Corpus& train, const DetectorConfig& config) {
    require_both_labels(train, "contrastive training");
    std::vector<Graph> graphs;
    graphs.reserve(train.size());
    for (const auto& item : train) graphs.push_back(item.graph);
    auto pretrained = train_contrastive_encoder(graphs, config);

    ContrastiveModel model;
    model.encoder = std::move(pretrained.encoder);
    model.config = config;
    model.training_log = std::move(pretrained.training_log);

    const auto width = static_cast<Eigen::Index>(model.encoder.embedding_width());
    Matrix embeddings(static_cast<Eigen::Index>(train.size()), width);
    parallel_for(train.size(), [&](std::size_t i) {
        embeddings.row(static_cast<Eigen::Index>(i)) = model.encoder.embed(train[i].graph).row(0);
    });
    std::vector<int> labels;
    labels.reserve(train.size());
    for (const auto& item : train) labels.push_back(item.authenticity == Authenticity::Real ? 1 : -1);
    model.classifier =
        train_linear_classifier(embeddings, labels, config.l2_penalty, config.classifier_epochs, config.classifier_lr);
    return model;
}

Prediction predict_contrastive(const ContrastiveModel& model, const Graph& g) {
    const Real s = model.classifier.score(model.encoder.embed(g));
    const double p_real = static_cast<double>(nn::sigmoid(s));
    if (s >= 0) return Prediction{Authenticity::Real, p_real, 1.0 - p_real};
    return Prediction{Authenticity::Generated, p_real, 1.0 - p_real};
}

}  // namespace ggd::detect
