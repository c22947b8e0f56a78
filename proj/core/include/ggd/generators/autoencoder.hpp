#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ggd/detectors/featurizer.hpp"
#include "ggd/graph.hpp"
#include "ggd/nn/layers.hpp"

namespace ggd::gen {

struct AutoencoderConfig {
    std::size_t latent_dim = 16;
    std::size_t hidden_dim = 32;
    std::size_t epochs = 200;
    std::size_t batch_size = 16;
    double lr = 0.01;
    // 0 gives the plain inner-product decoder (VGAE); >= 1 adds iterative
    // refinement rounds before the inner product (Graphite).
    std::size_t refinement_rounds = 0;
    std::size_t max_degree_bucket = 31;
    std::uint64_t seed = 0;
};

// Variational graph autoencoder with an optional refining decoder.
// Encoder: H = ReLU(Â X W1), μ = Â H Wμ, logσ = Â H Wσ, Z = μ + σ ⊙ ε.
// Refinement round r: Ẑ = row-normalized Z, S = (Ẑ Ẑᵀ + 1) / n,
// Z ← Z + S Z R_r. Decoder: P(u ~ v) = σ(z_u · z_v).
class GraphAutoencoder {
public:
    nn::GcnLayer encoder_hidden;
    nn::GcnLayer encoder_mean;
    nn::GcnLayer encoder_log_sigma;
    std::vector<nn::Matrix> refinement;  // latent x latent, one per round

    static GraphAutoencoder init(const AutoencoderConfig& config, std::size_t input_width, Rng& rng);

    nn::ParamList params();
    std::size_t latent_dim() const noexcept { return static_cast<std::size_t>(encoder_mean.weight.cols()); }

    struct RoundCache {
        nn::Matrix input, unit, scores, propagated;
        std::vector<nn::Real> norms;
    };

    nn::Matrix refine(const nn::Matrix& latents, std::vector<RoundCache>* caches = nullptr) const;
    // Accumulates refinement-weight gradients (grads[0..rounds)) and returns dL/dZ.
    nn::Matrix refine_backward(const std::vector<RoundCache>& caches, const nn::Matrix& d_out,
                               nn::Matrix* grads) const;

    // σ(Z* Z*ᵀ) with Z* = refine(latents).
    nn::Matrix edge_probabilities(const nn::Matrix& latents) const;

    // Reconstruction + KL loss on one graph for reparameterization noise
    // `noise` (n x latent). Fills grads (params() order) when non-null.
    nn::Real loss(const detect::GraphInput& input, const Graph& g, const nn::Matrix& noise,
                  nn::Gradients* grads) const;

    // Latents from N(0, I), refined, then Bernoulli edges.
    Graph sample(std::size_t n, Rng& rng) const;
};

// KL(q || N(0, I)) term as weighted in the VGAE objective:
// -(0.5 / n²) Σ_i Σ_d (1 + 2 logσ - μ² - σ²).
nn::Real kl_divergence(const nn::Matrix& mean, const nn::Matrix& log_sigma);

// Adam over mini-batches of graphs; returns the per-epoch mean loss.
// Throws TrainError (naming the epoch) when the loss stops being finite.
std::vector<double> train_autoencoder(GraphAutoencoder& model, const Corpus& corpus,
                                      const AutoencoderConfig& config);

}  // namespace ggd::gen
