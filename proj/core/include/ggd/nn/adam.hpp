#pragma once

#include <cstdint>

#include "ggd/nn/tensor.hpp"

namespace ggd::nn {

struct AdamState {
    Real lr = Real(0.001);
    Real beta1 = Real(0.9);
    Real beta2 = Real(0.999);
    Real eps = Real(1e-8);
    Gradients first_moment;
    Gradients second_moment;
    std::int64_t step = 0;

    explicit AdamState(Real learning_rate = Real(0.001)) : lr(learning_rate) {}
};

// Bias-corrected Adam update applied in place to `params`. Moment buffers
// are created on the first call.
void adam_step(AdamState& state, const ParamList& params, const Gradients& grads);

}  // namespace ggd::nn
