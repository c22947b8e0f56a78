#pragma once

#include <cstdint>

#include "ggd/detectors/config.hpp"
#include "ggd/scenarios/metrics.hpp"

namespace ggd::scen {

struct AttributionResult {
    Metrics metrics;  // pair accuracy / F1 with "same generator" as the positive class
    std::size_t train_pairs = 0;
    std::size_t test_pairs = 0;
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

// Same-generator attribution: the generated graphs are split 8:2, n_pos
// same-generator and n_neg different-generator pairs are drawn (80% from
// the training graphs, the rest from the held-out graphs), a siamese model
// is trained on the first share and scored on the second with threshold
// 0.5. Throws ConfigError when fewer than two generators are present.
AttributionResult run_attribution(const Corpus& unseen_fakes, std::size_t n_pos, std::size_t n_neg,
                                  const detect::DetectorConfig& config, std::uint64_t seed);

}  // namespace ggd::scen
