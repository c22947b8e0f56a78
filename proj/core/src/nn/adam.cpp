#include "ggd/nn/adam.hpp"

#include <cmath>

namespace ggd::nn {

void adam_step(AdamState& state, const ParamList& params, const Gradients& grads) {
    require_shape(params.size() == grads.size(), "parameter and gradient lists differ in length");
    if (state.first_moment.empty()) {
        state.first_moment = zero_gradients(params);
        state.second_moment = zero_gradients(params);
    }
    require_shape(state.first_moment.size() == params.size(), "optimizer state belongs to another model");
    for (std::size_t i = 0; i < params.size(); ++i) {
        require_shape(params[i].value->rows() == grads[i].rows() && params[i].value->cols() == grads[i].cols(),
                      "gradient shape mismatch for " + params[i].name);
    }
    ++state.step;
    const Real correction1 = Real(1) - std::pow(state.beta1, static_cast<Real>(state.step));
    const Real correction2 = Real(1) - std::pow(state.beta2, static_cast<Real>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto& m = state.first_moment[i];
        auto& v = state.second_moment[i];
        m = state.beta1 * m + (Real(1) - state.beta1) * grads[i];
        v = state.beta2 * v + (Real(1) - state.beta2) * grads[i].cwiseProduct(grads[i]);
        const auto m_hat = m.array() / correction1;
        const auto v_hat = v.array() / correction2;
        params[i].value->array() -= state.lr * m_hat / (v_hat.sqrt() + state.eps);
    }
}

}  // namespace ggd::nn
