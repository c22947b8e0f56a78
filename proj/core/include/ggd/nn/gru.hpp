#pragma once

#include <string>

#include "ggd/nn/tensor.hpp"

namespace ggd::nn {

// Gated recurrent unit over row batches (B x d_in inputs, B x hidden states):
//   r  = σ(x W_r + b_ir + h U_r + b_hr)
//   z  = σ(x W_z + b_iz + h U_z + b_hz)
//   c  = tanh(x W_c + b_ic + r ⊙ (h U_c + b_hc))
//   h' = (1 - z) ⊙ c + z ⊙ h
// Gate blocks are packed column-wise in [r | z | c] order.
struct GruCell {
    Matrix input_weight;   // d_in x 3h
    Matrix hidden_weight;  // h x 3h
    Matrix input_bias;     // 1 x 3h
    Matrix hidden_bias;    // 1 x 3h

    struct Cache {
        Matrix x, h, r, z, c, hidden_candidate;
    };

    static GruCell init(Eigen::Index d_in, Eigen::Index hidden, Rng& rng);
    Eigen::Index hidden_size() const noexcept { return hidden_weight.rows(); }

    Matrix forward(const Matrix& x, const Matrix& h, Cache* cache = nullptr) const;
    // Accumulates parameter gradients (collect() order); writes dL/dx and dL/dh.
    void backward(const Cache& cache, const Matrix& d_next, Matrix* grads, Matrix& d_x,
                  Matrix& d_h) const;

    void collect(ParamList& out, const std::string& prefix);
};

}  // namespace ggd::nn
