#pragma once

#include <string>

#include "ggd/nn/tensor.hpp"

namespace ggd::nn {

enum class Activation { ReLU, Identity };

Matrix activate(Activation act, const Matrix& pre);
// d_out * act'(pre)
Matrix activation_backward(Activation act, const Matrix& pre, const Matrix& d_out);

// Graph convolution: activation(Â · H · W).
struct GcnLayer {
    Matrix weight;  // d_in x d_out
    Activation activation = Activation::ReLU;

    struct Cache {
        Matrix aggregated;  // Â · H
        Matrix pre;         // Â · H · W
    };

    static GcnLayer init(Eigen::Index d_in, Eigen::Index d_out, Activation act, Rng& rng);

    Matrix forward(const SparseMatrix& a_hat, const Matrix& h, Cache* cache = nullptr) const;
    Matrix forward(const Matrix& a_hat, const Matrix& h, Cache* cache = nullptr) const;
    // Accumulates dL/dW into d_weight and returns dL/dH. Â must be symmetric.
    Matrix backward(const SparseMatrix& a_hat, const Cache& cache, const Matrix& d_out,
                    Matrix& d_weight) const;
    Matrix backward(const Matrix& a_hat, const Cache& cache, const Matrix& d_out,
                    Matrix& d_weight) const;

    void collect(ParamList& out, const std::string& prefix);
};

// Shape-checked single-layer forward on a dense normalized adjacency.
Matrix gcn_forward(const GcnLayer& layer, const Matrix& a_hat, const Matrix& h);

// Fully connected layer: X · W + b.
struct Linear {
    Matrix weight;  // d_in x d_out
    Matrix bias;    // 1 x d_out

    static Linear init(Eigen::Index d_in, Eigen::Index d_out, Rng& rng);
    Matrix forward(const Matrix& x) const;
    // Accumulates parameter gradients and returns dL/dX.
    Matrix backward(const Matrix& x, const Matrix& d_out, Matrix& d_weight, Matrix& d_bias) const;
    void collect(ParamList& out, const std::string& prefix);
};

// Two linear layers with a ReLU in between.
struct Mlp {
    Linear first;
    Linear second;

    struct Cache {
        Matrix input;
        Matrix hidden_pre;
        Matrix hidden;
    };

    static Mlp init(Eigen::Index d_in, Eigen::Index d_hidden, Eigen::Index d_out, Rng& rng);
    Matrix forward(const Matrix& x, Cache* cache = nullptr) const;
    // grads: [first.weight, first.bias, second.weight, second.bias]
    Matrix backward(const Cache& cache, const Matrix& d_out, Matrix* grads) const;
    void collect(ParamList& out, const std::string& prefix);
};

// Graph read-out: the average of the node rows, as a 1 x d row.
Matrix mean_pool(const Matrix& h);
Matrix mean_pool_backward(Eigen::Index node_count, const Matrix& d_pooled);

Real sigmoid(Real x) noexcept;
Matrix sigmoid(const Matrix& x);

}  // namespace ggd::nn
