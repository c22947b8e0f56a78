#pragma once

#include "ggd/nn/tensor.hpp"

namespace ggd::nn {

// Scalar loss plus its gradient with respect to the loss input.
struct LossValue {
    Real loss = 0;
    Matrix grad;
};

struct ScalarLoss {
    Real loss = 0;
    Real grad = 0;
};

// Softmax + negative log-likelihood of `label` over a 1 x C logit row.
LossValue cross_entropy(const Matrix& logits, Eigen::Index label);
Matrix softmax(const Matrix& logits);

inline constexpr Real kBceClamp = Real(1e-7);

// -(y log p + (1 - y) log(1 - p)) with p clamped to [1e-7, 1 - 1e-7];
// grad is dLoss/dp.
ScalarLoss bce(Real p, int y);
// bce(sigmoid(logit), y) evaluated stably; grad is dLoss/dlogit = p - y.
ScalarLoss bce_with_logit(Real logit, int y);

// max(0, 1 - y * score), y in {-1, +1}; grad is a subgradient w.r.t. score.
ScalarLoss hinge_loss(Real score, int y);

struct NtXentValue {
    Real loss = 0;  // mean over the batch; may be negative
    Matrix grad_first;
    Matrix grad_second;
    bool zero_norm = false;  // some embedding had zero norm; its similarities were taken as 0
};

// Per anchor n: -log[ exp(sim(a_n, b_n)/τ) / Σ_{m≠n} exp(sim(a_n, b_m)/τ) ],
// cosine similarity, positive pair excluded from the denominator.
NtXentValue nt_xent(const Matrix& first, const Matrix& second, Real tau);

}  // namespace ggd::nn
