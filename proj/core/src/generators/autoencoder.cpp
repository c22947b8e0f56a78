#include "ggd/generators/autoencoder.hpp"

#include <cmath>
#include <numeric>

#include "ggd/error.hpp"
#include "ggd/nn/adam.hpp"
#include "ggd/parallel.hpp"

namespace ggd::gen {

using nn::Matrix;
using nn::Real;

GraphAutoencoder GraphAutoencoder::init(const AutoencoderConfig& config, std::size_t input_width, Rng& rng) {
    const auto d_in = static_cast<Eigen::Index>(input_width);
    const auto hidden = static_cast<Eigen::Index>(config.hidden_dim);
    const auto latent = static_cast<Eigen::Index>(config.latent_dim);
    GraphAutoencoder m;
    m.encoder_hidden = nn::GcnLayer::init(d_in, hidden, nn::Activation::ReLU, rng);
    m.encoder_mean = nn::GcnLayer::init(hidden, latent, nn::Activation::Identity, rng);
    m.encoder_log_sigma = nn::GcnLayer::init(hidden, latent, nn::Activation::Identity, rng);
    for (std::size_t r = 0; r < config.refinement_rounds; ++r) {
        m.refinement.push_back(nn::glorot(latent, latent, rng) * Real(0.5));
    }
    return m;
}

nn::ParamList GraphAutoencoder::params() {
    nn::ParamList out;
    encoder_hidden.collect(out, "encoder.hidden");
    encoder_mean.collect(out, "encoder.mean");
    encoder_log_sigma.collect(out, "encoder.log_sigma");
    for (std::size_t r = 0; r < refinement.size(); ++r) {
        out.push_back({"decoder.refine." + std::to_string(r), &refinement[r]});
    }
    return out;
}

Matrix GraphAutoencoder::refine(const Matrix& latents, std::vector<RoundCache>* caches) const {
    Matrix z = latents;
    const auto n = z.rows();
    for (const auto& weight : refinement) {
        RoundCache c;
        c.norms.resize(static_cast<std::size_t>(n));
        c.unit = Matrix::Zero(n, z.cols());
        for (Eigen::Index i = 0; i < n; ++i) {
            const Real norm = z.row(i).norm();
            c.norms[static_cast<std::size_t>(i)] = norm;
            if (norm > Real(1e-12)) c.unit.row(i) = z.row(i) / norm;
        }
        c.scores = (c.unit * c.unit.transpose()).array() + Real(1);
        c.scores /= static_cast<Real>(n);
        c.propagated = c.scores * z;
        Matrix next = z + c.propagated * weight;
        if (caches) {
            c.input = z;
            caches->push_back(std::move(c));
        }
        z = std::move(next);
    }
    return z;
}

Matrix GraphAutoencoder::refine_backward(const std::vector<RoundCache>& caches, const Matrix& d_out,
                                         Matrix* grads) const {
    Matrix d_z = d_out;
    for (std::size_t r = refinement.size(); r-- > 0;) {
        const auto& c = caches[r];
        const auto& weight = refinement[r];
        const auto n = c.input.rows();
        const Matrix& d_next = d_z;
        grads[r].noalias() += c.propagated.transpose() * d_next;
        const Matrix d_propagated = d_next * weight.transpose();
        const Matrix d_scores = d_propagated * c.input.transpose();
        Matrix d_in = d_next + c.scores.transpose() * d_propagated;
        const Matrix d_unit = (d_scores + d_scores.transpose()) * c.unit / static_cast<Real>(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Real norm = c.norms[static_cast<std::size_t>(i)];
            if (norm <= Real(1e-12)) continue;
            const Real proj = c.unit.row(i).dot(d_unit.row(i));
            d_in.row(i) += (d_unit.row(i) - proj * c.unit.row(i)) / norm;
        }
        d_z = std::move(d_in);
    }
    return d_z;
}

Matrix GraphAutoencoder::edge_probabilities(const Matrix& latents) const {
    const Matrix z = refine(latents);
    return nn::sigmoid(Matrix(z * z.transpose()));
}

Real kl_divergence(const Matrix& mean, const Matrix& log_sigma) {
    const auto n = static_cast<Real>(mean.rows());
    const Real s = (Real(1) + Real(2) * log_sigma.array() - mean.array().square() -
                    (Real(2) * log_sigma.array()).exp())
                       .sum();
    return -Real(0.5) / (n * n) * s;
}

Real GraphAutoencoder::loss(const detect::GraphInput& input, const Graph& g, const Matrix& noise,
                            nn::Gradients* grads) const {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    nn::GcnLayer::Cache c_hidden, c_mean, c_sigma;
    const bool want = grads != nullptr;
    const Matrix h = encoder_hidden.forward(input.adjacency, input.features, want ? &c_hidden : nullptr);
    const Matrix mean = encoder_mean.forward(input.adjacency, h, want ? &c_mean : nullptr);
    const Matrix log_sigma = encoder_log_sigma.forward(input.adjacency, h, want ? &c_sigma : nullptr);
    const Matrix sigma = log_sigma.array().exp().matrix();
    const Matrix z = mean + sigma.cwiseProduct(noise);
    std::vector<RoundCache> rounds;
    const Matrix refined = refine(z, want ? &rounds : nullptr);
    const Matrix logits = refined * refined.transpose();

    Matrix target = Matrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        target(e.u, e.v) = 1;
        target(e.v, e.u) = 1;
    }
    const Real pos_weight =
        g.edge_count() > 0 ? static_cast<Real>(n * n) / static_cast<Real>(2 * g.edge_count()) : Real(1);
    const Real pair_count = n > 1 ? static_cast<Real>(n * (n - 1)) : Real(1);

    Real recon = 0;
    Matrix d_logits = Matrix::Zero(n, n);
    for (Eigen::Index u = 0; u < n; ++u) {
        for (Eigen::Index v = 0; v < n; ++v) {
            if (u == v) continue;
            const Real l = logits(u, v);
            // softplus(-l) = -log σ(l), softplus(l) = -log(1 - σ(l))
            const Real sp_neg = std::max(-l, Real(0)) + std::log1p(std::exp(-std::abs(l)));
            const Real sp_pos = sp_neg + l;
            const Real p = nn::sigmoid(l);
            if (target(u, v) > 0) {
                recon += pos_weight * sp_neg;
                d_logits(u, v) = -pos_weight * (Real(1) - p) / pair_count;
            } else {
                recon += sp_pos;
                d_logits(u, v) = p / pair_count;
            }
        }
    }
    recon /= pair_count;
    const Real total = recon + kl_divergence(mean, log_sigma);
    if (!grads) return total;

    auto& gr = *grads;
    const Real inv_n2 = Real(1) / static_cast<Real>(n * n);
    const Matrix d_refined = (d_logits + d_logits.transpose()) * refined;
    const Matrix d_z = refine_backward(rounds, d_refined, gr.data() + 3);
    const Matrix d_mean = d_z + mean * inv_n2;
    const Matrix d_log_sigma =
        d_z.cwiseProduct(sigma).cwiseProduct(noise) +
        ((Real(2) * log_sigma.array()).exp() - Real(1)).matrix() * inv_n2;
    Matrix d_h = encoder_mean.backward(input.adjacency, c_mean, d_mean, gr[1]);
    d_h += encoder_log_sigma.backward(input.adjacency, c_sigma, d_log_sigma, gr[2]);
    encoder_hidden.backward(input.adjacency, c_hidden, d_h, gr[0]);
    return total;
}

Graph GraphAutoencoder::sample(std::size_t n, Rng& rng) const {
    const Matrix latents = nn::random_normal(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(latent_dim()), rng);
    const Matrix probs = edge_probabilities(latents);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.bernoulli(probs(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)))) {
                edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
            }
        }
    }
    return Graph(n, std::move(edges));
}

std::vector<double> train_autoencoder(GraphAutoencoder& model, const Corpus& corpus,
                                      const AutoencoderConfig& config) {
    if (corpus.empty()) throw TrainError("cannot train an autoencoder on an empty corpus");
    const detect::NodeFeaturizer featurizer{config.max_degree_bucket};
    const auto inputs = detect::prepare_inputs(corpus, featurizer);
    auto params = model.params();
    nn::AdamState adam(static_cast<Real>(config.lr));
    Rng order_rng(derive_seed(config.seed, 0x6f72646572ULL));
    const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
    const auto latent = static_cast<Eigen::Index>(model.latent_dim());

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> log;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        order_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t count = std::min(batch, order.size() - start);
            std::vector<nn::Gradients> per(count);
            std::vector<Real> losses(count);
            parallel_for(count, [&](std::size_t k) {
                const std::size_t idx = order[start + k];
                Rng noise_rng(derive_seed(config.seed, {epoch, idx}));
                const auto n = static_cast<Eigen::Index>(corpus[idx].graph.node_count());
                const Matrix noise = nn::random_normal(n, latent, noise_rng);
                per[k] = nn::zero_gradients(params);
                losses[k] = model.loss(inputs[idx], corpus[idx].graph, noise, &per[k]);
            });
            nn::Gradients total = nn::zero_gradients(params);
            for (std::size_t k = 0; k < count; ++k) {
                nn::accumulate(total, per[k]);
                epoch_loss += static_cast<double>(losses[k]);
            }
            nn::scale(total, Real(1) / static_cast<Real>(count));
            adam_step(adam, params, total);
        }
        epoch_loss /= static_cast<double>(order.size());
        if (!std::isfinite(epoch_loss) || !nn::all_finite(params)) {
            throw TrainError("autoencoder loss diverged at epoch " + std::to_string(epoch));
        }
        log.push_back(epoch_loss);
    }
    return log;
}

}  // namespace ggd::gen
