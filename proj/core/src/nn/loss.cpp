#include "ggd/nn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ggd/error.hpp"
#include "ggd/nn/layers.hpp"

namespace ggd::nn {

Matrix softmax(const Matrix& logits) {
    Matrix out(logits.rows(), logits.cols());
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const Real top = logits.row(r).maxCoeff();
        out.row(r) = (logits.row(r).array() - top).exp().matrix();
        out.row(r) /= out.row(r).sum();
    }
    return out;
}

LossValue cross_entropy(const Matrix& logits, Eigen::Index label) {
    require_shape(logits.rows() == 1 && logits.cols() >= 2, "cross entropy expects a 1 x C row, C >= 2");
    if (label < 0 || label >= logits.cols()) throw ArgumentError("label out of range");
    const Real top = logits.maxCoeff();
    const Real log_sum = top + std::log((logits.array() - top).exp().sum());
    LossValue v;
    v.loss = log_sum - logits(0, label);
    v.grad = softmax(logits);
    v.grad(0, label) -= Real(1);
    return v;
}

ScalarLoss bce(Real p, int y) {
    const Real q = std::clamp(p, kBceClamp, Real(1) - kBceClamp);
    const Real t = static_cast<Real>(y);
    ScalarLoss v;
    v.loss = -(t * std::log(q) + (Real(1) - t) * std::log(Real(1) - q));
    v.grad = -t / q + (Real(1) - t) / (Real(1) - q);
    return v;
}

ScalarLoss bce_with_logit(Real logit, int y) {
    const Real t = static_cast<Real>(y);
    ScalarLoss v;
    // softplus(s) - y s
    v.loss = std::max(logit, Real(0)) - logit * t + std::log1p(std::exp(-std::abs(logit)));
    v.grad = sigmoid(logit) - t;
    return v;
}

ScalarLoss hinge_loss(Real score, int y) {
    const Real t = static_cast<Real>(y);
    const Real margin = Real(1) - t * score;
    if (margin > 0) return {margin, -t};
    return {Real(0), Real(0)};
}

NtXentValue nt_xent(const Matrix& first, const Matrix& second, Real tau) {
    require_shape(first.rows() == second.rows() && first.cols() == second.cols(),
                  "NT-Xent views must have identical shapes");
    if (first.rows() < 2) throw ArgumentError("NT-Xent needs a batch of at least 2");
    if (!(tau > 0)) throw ArgumentError("temperature must be positive");
    const Eigen::Index n = first.rows();

    NtXentValue out;
    Eigen::Matrix<Real, Eigen::Dynamic, 1> norm_a(n), norm_b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        norm_a(i) = first.row(i).norm();
        norm_b(i) = second.row(i).norm();
        if (norm_a(i) == 0 || norm_b(i) == 0) out.zero_norm = true;
    }
    Matrix sim = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (norm_a(i) > 0 && norm_b(j) > 0) {
                sim(i, j) = first.row(i).dot(second.row(j)) / (norm_a(i) * norm_b(j));
            }
        }
    }

    // dL/dsim
    Matrix d_sim = Matrix::Zero(n, n);
    const Real inv_n = Real(1) / static_cast<Real>(n);
    Real total = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Real top = -std::numeric_limits<Real>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) top = std::max(top, sim(i, j) / tau);
        }
        Real denom = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) denom += std::exp(sim(i, j) / tau - top);
        }
        total += -sim(i, i) / tau + top + std::log(denom);
        d_sim(i, i) = -inv_n / tau;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) d_sim(i, j) = inv_n / tau * std::exp(sim(i, j) / tau - top) / denom;
        }
    }
    out.loss = total * inv_n;

    out.grad_first = Matrix::Zero(n, first.cols());
    out.grad_second = Matrix::Zero(n, second.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (norm_a(i) == 0 || norm_b(j) == 0) continue;
            const Real g = d_sim(i, j);
            const Real inv = Real(1) / (norm_a(i) * norm_b(j));
            out.grad_first.row(i) +=
                g * (second.row(j) * inv - sim(i, j) * first.row(i) / (norm_a(i) * norm_a(i)));
            out.grad_second.row(j) +=
                g * (first.row(i) * inv - sim(i, j) * second.row(j) / (norm_b(j) * norm_b(j)));
        }
    }
    return out;
}

}  // namespace ggd::nn
