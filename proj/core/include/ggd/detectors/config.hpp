#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ggd::detect {

inline constexpr std::size_t kEmbeddingWidth = 128;

struct EncoderConfig {
    std::size_t max_degree_bucket = 31;
    // Output widths of the GCN layers; the last one is the embedding width.
    std::vector<std::size_t> widths{128, 128, 128, kEmbeddingWidth};
};

// Settings shared by the three graph detectors and the feature baseline.
struct DetectorConfig {
    EncoderConfig encoder;
    std::size_t epochs = 200;
    std::size_t batch_size = 32;
    double lr = 0.001;
    std::uint64_t seed = 0;

    // contrastive
    double augment_ratio = 0.2;
    double tau = 0.5;
    std::size_t projection_hidden = 128;
    std::size_t contrastive_epochs = 200;
    std::size_t classifier_epochs = 200;
    double classifier_lr = 0.01;
    double l2_penalty = 1e-4;

    // metric
    std::size_t n_ps = 20000;
    std::size_t n_k = 10;
    std::size_t pair_epochs = 200;
    std::size_t pair_batch_size = 64;
    // Reference graphs kept per label for inference; 0 keeps every one.
    std::size_t reference_cap = 100;

    // feature baseline
    std::size_t feature_hidden = 32;
    std::size_t feature_epochs = 200;

    // Throws ConfigError on impossible values.
    void validate() const;
};

std::string config_to_json(const DetectorConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
DetectorConfig config_from_json(const std::string& text, DetectorConfig base = {});

}  // namespace ggd::detect
