#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "ggd/nn/adam.hpp"

namespace ggd::nn {

struct EpochPlan {
    std::size_t sample_count = 0;
    std::size_t epochs = 1;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;  // drives the per-epoch shuffle
};

// Loss of one sample; adds its parameter gradients into `grads`. Called
// concurrently for samples of the same batch.
using SampleLoss = std::function<Real(std::size_t index, std::size_t epoch, Gradients& grads)>;

// Shuffled mini-batch Adam. Per-sample gradients are summed in batch order
// and averaged, so results do not depend on the worker count. Returns the
// mean loss of every epoch; throws TrainError naming `what` on divergence.
std::vector<double> train_minibatches(const ParamList& params, AdamState& adam, const EpochPlan& plan,
                                      const SampleLoss& loss, std::string_view what);

}  // namespace ggd::nn
