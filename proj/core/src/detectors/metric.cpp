#include "ggd/detectors/metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ggd/error.hpp"
#include "ggd/nn/adam.hpp"
#include "ggd/nn/loss.hpp"
#include "ggd/parallel.hpp"

namespace ggd::detect {

using nn::Matrix;
using nn::Real;

std::vector<GraphPair> sample_pairs(const std::vector<std::string>& keys, std::size_t n_same,
                                    std::size_t n_different, std::uint64_t seed) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);
    std::vector<const std::vector<std::size_t>*> all;
    std::vector<const std::vector<std::size_t>*> pairable;
    for (const auto& [key, members] : groups) {
        all.push_back(&members);
        if (members.size() >= 2) pairable.push_back(&members);
    }
    if (n_same > 0 && pairable.empty()) throw PairError("no label has two graphs to form a same-label pair");
    if (n_different > 0 && all.size() < 2) throw PairError("different-label pairs need at least two labels");

    Rng rng(seed);
    std::vector<GraphPair> out;
    out.reserve(n_same + n_different);
    for (std::size_t k = 0; k < n_same; ++k) {
        const auto& members = *pairable[rng.below(pairable.size())];
        const std::size_t a = rng.below(members.size());
        std::size_t b = rng.below(members.size() - 1);
        if (b >= a) ++b;
        out.push_back({members[a], members[b], 1});
    }
    for (std::size_t k = 0; k < n_different; ++k) {
        const std::size_t x = rng.below(all.size());
        std::size_t y = rng.below(all.size() - 1);
        if (y >= x) ++y;
        const auto& first = *all[x];
        const auto& second = *all[y];
        out.push_back({first[rng.below(first.size())], second[rng.below(second.size())], 0});
    }
    return out;
}

std::vector<GraphPair> sample_pairs(const Corpus& train, std::size_t n_ps, std::uint64_t seed) {
    if (train.count(Authenticity::Real) < 2 || train.count(Authenticity::Generated) < 2) {
        throw PairError("each label needs at least 2 graphs to form pairs");
    }
    std::vector<std::string> keys;
    keys.reserve(train.size());
    for (const auto& item : train) keys.emplace_back(to_string(item.authenticity));
    return sample_pairs(keys, n_ps, n_ps, seed);
}

MetricModel MetricModel::init(const DetectorConfig& config) {
    config.validate();
    Rng rng(derive_seed(config.seed, 0x6d657472ULL));
    MetricModel m;
    m.config = config;
    m.encoder = GcnEncoder::init(config.encoder, rng);
    const auto width = static_cast<Eigen::Index>(m.encoder.embedding_width());
    m.head_weight = nn::glorot(1, width, rng);
    m.head_bias = Matrix::Zero(1, 1);
    return m;
}

nn::ParamList MetricModel::params() {
    nn::ParamList out;
    encoder.collect(out, "encoder");
    out.push_back({"head.weight", &head_weight});
    out.push_back({"head.bias", &head_bias});
    return out;
}

Real MetricModel::posterior(const Matrix& h_first, const Matrix& h_second) const {
    const Real logit = (h_first - h_second).cwiseAbs().cwiseProduct(head_weight).sum() + head_bias(0, 0);
    return nn::sigmoid(logit);
}

Real MetricModel::posterior(const Graph& first, const Graph& second) const {
    return posterior(encoder.embed(first), encoder.embed(second));
}

Real MetricModel::batch_loss(const std::vector<GraphInput>& inputs, const std::vector<GraphPair>& pairs,
                             nn::Gradients* grads) const {
    // Embed every distinct graph of the batch once.
    std::map<std::size_t, std::size_t> slot;
    std::vector<std::size_t> members;
    for (const auto& p : pairs) {
        for (auto g : {p.first, p.second}) {
            if (slot.emplace(g, members.size()).second) members.push_back(g);
        }
    }
    std::vector<GcnEncoder::Cache> caches(members.size());
    std::vector<Matrix> h(members.size());
    parallel_for(members.size(), [&](std::size_t k) {
        h[k] = encoder.embed(inputs[members[k]], grads ? &caches[k] : nullptr);
    });

    const std::size_t layers = encoder.layers.size();
    std::vector<Matrix> d_h;
    if (grads) d_h.assign(members.size(), Matrix::Zero(1, head_weight.cols()));
    Real total = 0;
    for (const auto& p : pairs) {
        const std::size_t a = slot[p.first];
        const std::size_t b = slot[p.second];
        const Matrix diff = h[a] - h[b];
        const Matrix dist = diff.cwiseAbs();
        const Real logit = dist.cwiseProduct(head_weight).sum() + head_bias(0, 0);
        const auto l = nn::bce_with_logit(logit, p.same);
        total += l.loss;
        if (grads) {
            (*grads)[layers] += l.grad * dist;
            (*grads)[layers + 1](0, 0) += l.grad;
            const Matrix d_diff = (l.grad * head_weight).cwiseProduct(diff.unaryExpr([](Real v) {
                return v > 0 ? Real(1) : (v < 0 ? Real(-1) : Real(0));
            }));
            d_h[a] += d_diff;
            d_h[b] -= d_diff;
        }
    }
    if (grads) {
        nn::ParamList shapes = const_cast<MetricModel&>(*this).params();
        std::vector<nn::Gradients> per(members.size());
        parallel_for(members.size(), [&](std::size_t k) {
            per[k].reserve(layers);
            for (std::size_t i = 0; i < layers; ++i) {
                per[k].push_back(Matrix::Zero(shapes[i].value->rows(), shapes[i].value->cols()));
            }
            encoder.backward(inputs[members[k]], caches[k], d_h[k], per[k].data());
        });
        for (const auto& g : per) {
            for (std::size_t i = 0; i < layers; ++i) (*grads)[i] += g[i];
        }
    }
    return total;
}

MetricModel train_siamese(const std::vector<Graph>& graphs, const std::vector<GraphPair>& pairs,
                          const DetectorConfig& config) {
    if (pairs.empty()) throw TrainError("siamese training needs at least one pair");
    for (const auto& p : pairs) {
        if (p.first >= graphs.size() || p.second >= graphs.size()) throw ArgumentError("pair index out of range");
    }
    MetricModel model = MetricModel::init(config);
    std::vector<GraphInput> inputs(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t i) { inputs[i] = model.encoder.prepare(graphs[i]); });

    auto params = model.params();
    nn::AdamState adam(static_cast<Real>(config.lr));
    Rng order_rng(derive_seed(config.seed, 0x6f726465ULL));
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t batch = config.pair_batch_size;
    for (std::size_t epoch = 0; epoch < config.pair_epochs; ++epoch) {
        order_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t count = std::min(batch, order.size() - start);
            std::vector<GraphPair> chunk;
            chunk.reserve(count);
            for (std::size_t k = 0; k < count; ++k) chunk.push_back(pairs[order[start + k]]);
            nn::Gradients grads = nn::zero_gradients(params);
            epoch_loss += static_cast<double>(model.batch_loss(inputs, chunk, &grads));
            nn::scale(grads, Real(1) / static_cast<Real>(count));
            nn::adam_step(adam, params, grads);
        }
        epoch_loss /= static_cast<double>(pairs.size());
        if (!std::isfinite(epoch_loss) || !nn::all_finite(params)) {
            throw TrainError("siamese loss diverged at epoch " + std::to_string(epoch));
        }
        model.training_log.push_back(epoch_loss);
    }
    return model;
}

MetricModel train_metric(const Corpus& train, const DetectorConfig& config) {
    require_both_labels(train, "metric training");
    const auto pairs = sample_pairs(train, config.n_ps, derive_seed(config.seed, 0x70616972ULL));
    std::vector<Graph> graphs;
    graphs.reserve(train.size());
    for (const auto& item : train) graphs.push_back(item.graph);
    MetricModel model = train_siamese(graphs, pairs, config);

    Rng rng(derive_seed(config.seed, 0x72656673ULL));
    for (auto label : {Authenticity::Real, Authenticity::Generated}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < train.size(); ++i) {
            if (train[i].authenticity == label) members.push_back(i);
        }
        const std::size_t keep = config.reference_cap == 0 ? members.size() : std::min(config.reference_cap, members.size());
        for (auto k : rng.choose(members.size(), keep)) model.references.items.push_back(train[members[k]]);
    }
    model.references.seed = config.seed;
    return model;
}

ReferenceBank make_reference_bank(const MetricModel& model, const Corpus& references) {
    std::vector<Matrix> all(references.size());
    parallel_for(references.size(), [&](std::size_t i) { all[i] = model.encoder.embed(references[i].graph); });
    ReferenceBank bank;
    for (std::size_t i = 0; i < references.size(); ++i) {
        (references[i].authenticity == Authenticity::Real ? bank.real : bank.generated).push_back(std::move(all[i]));
    }
    return bank;
}

Prediction metric_predict(const MetricModel& model, const ReferenceBank& bank, const Graph& g, std::size_t n_k,
                          std::uint64_t seed) {
    if (n_k == 0) throw ArgumentError("n_k must be positive");
    if (bank.real.size() < n_k || bank.generated.size() < n_k) {
        throw ArgumentError("metric inference needs at least " + std::to_string(n_k) + " references per label");
    }
    const Matrix h = model.encoder.embed(g);
    auto mean_posterior = [&](const std::vector<Matrix>& refs, std::uint64_t tag) {
        Rng rng(derive_seed(seed, tag));
        double sum = 0.0;
        for (auto i : rng.choose(refs.size(), n_k)) sum += static_cast<double>(model.posterior(h, refs[i]));
        return sum / static_cast<double>(n_k);
    };
    return decide(mean_posterior(bank.real, 0), mean_posterior(bank.generated, 1));
}

Prediction metric_predict(const MetricModel& model, const Graph& g, const Corpus& references, std::size_t n_k,
                          std::uint64_t seed) {
    return metric_predict(model, make_reference_bank(model, references), g, n_k, seed);
}

double attribution_predict(const MetricModel& model, const Graph& g1, const Graph& g2) {
    return static_cast<double>(model.posterior(g1, g2));
}

}  // namespace ggd::detect
