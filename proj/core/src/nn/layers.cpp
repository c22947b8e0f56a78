#include "ggd/nn/layers.hpp"

#include <cmath>

#include "ggd/error.hpp"

namespace ggd::nn {

Matrix activate(Activation act, const Matrix& pre) {
    if (act == Activation::Identity) return pre;
    return pre.cwiseMax(Real(0));
}

Matrix activation_backward(Activation act, const Matrix& pre, const Matrix& d_out) {
    if (act == Activation::Identity) return d_out;
    return (pre.array() > Real(0)).select(d_out, Real(0));
}

GcnLayer GcnLayer::init(Eigen::Index d_in, Eigen::Index d_out, Activation act, Rng& rng) {
    return GcnLayer{glorot(d_in, d_out, rng), act};
}

namespace {

template <typename Adjacency>
Matrix gcn_forward_impl(const GcnLayer& layer, const Adjacency& a_hat, const Matrix& h,
                        GcnLayer::Cache* cache) {
    require_shape(a_hat.rows() == h.rows() && a_hat.cols() == h.rows(),
                  "adjacency and node features disagree on node count");
    require_shape(h.cols() == layer.weight.rows(), "feature width " + std::to_string(h.cols()) +
                                                       " does not match layer input " +
                                                       std::to_string(layer.weight.rows()));
    Matrix aggregated = a_hat * h;
    Matrix pre = aggregated * layer.weight;
    Matrix out = activate(layer.activation, pre);
    if (cache) {
        cache->aggregated = std::move(aggregated);
        cache->pre = std::move(pre);
    }
    return out;
}

template <typename Adjacency>
Matrix gcn_backward_impl(const GcnLayer& layer, const Adjacency& a_hat, const GcnLayer::Cache& cache,
                         const Matrix& d_out, Matrix& d_weight) {
    const Matrix d_pre = activation_backward(layer.activation, cache.pre, d_out);
    d_weight.noalias() += cache.aggregated.transpose() * d_pre;
    const Matrix d_aggregated = d_pre * layer.weight.transpose();
    return a_hat * d_aggregated;
}

}  // namespace

Matrix GcnLayer::forward(const SparseMatrix& a_hat, const Matrix& h, Cache* cache) const {
    return gcn_forward_impl(*this, a_hat, h, cache);
}
Matrix GcnLayer::forward(const Matrix& a_hat, const Matrix& h, Cache* cache) const {
    return gcn_forward_impl(*this, a_hat, h, cache);
}
Matrix GcnLayer::backward(const SparseMatrix& a_hat, const Cache& cache, const Matrix& d_out,
                          Matrix& d_weight) const {
    return gcn_backward_impl(*this, a_hat, cache, d_out, d_weight);
}
Matrix GcnLayer::backward(const Matrix& a_hat, const Cache& cache, const Matrix& d_out,
                          Matrix& d_weight) const {
    return gcn_backward_impl(*this, a_hat, cache, d_out, d_weight);
}

void GcnLayer::collect(ParamList& out, const std::string& prefix) {
    out.push_back({prefix + ".weight", &weight});
}

Matrix gcn_forward(const GcnLayer& layer, const Matrix& a_hat, const Matrix& h) {
    return layer.forward(a_hat, h);
}

Linear Linear::init(Eigen::Index d_in, Eigen::Index d_out, Rng& rng) {
    return Linear{glorot(d_in, d_out, rng), Matrix::Zero(1, d_out)};
}

Matrix Linear::forward(const Matrix& x) const {
    require_shape(x.cols() == weight.rows(), "linear input " + shape_string(x) +
                                                 " does not match weight " + shape_string(weight));
    Matrix out = x * weight;
    out.rowwise() += bias.row(0);
    return out;
}

Matrix Linear::backward(const Matrix& x, const Matrix& d_out, Matrix& d_weight, Matrix& d_bias) const {
    d_weight.noalias() += x.transpose() * d_out;
    d_bias += d_out.colwise().sum();
    return d_out * weight.transpose();
}

void Linear::collect(ParamList& out, const std::string& prefix) {
    out.push_back({prefix + ".weight", &weight});
    out.push_back({prefix + ".bias", &bias});
}

Mlp Mlp::init(Eigen::Index d_in, Eigen::Index d_hidden, Eigen::Index d_out, Rng& rng) {
    Mlp m;
    m.first = Linear::init(d_in, d_hidden, rng);
    m.second = Linear::init(d_hidden, d_out, rng);
    return m;
}

Matrix Mlp::forward(const Matrix& x, Cache* cache) const {
    Matrix pre = first.forward(x);
    Matrix hidden = pre.cwiseMax(Real(0));
    Matrix out = second.forward(hidden);
    if (cache) {
        cache->input = x;
        cache->hidden_pre = std::move(pre);
        cache->hidden = std::move(hidden);
    }
    return out;
}

Matrix Mlp::backward(const Cache& cache, const Matrix& d_out, Matrix* grads) const {
    const Matrix d_hidden = second.backward(cache.hidden, d_out, grads[2], grads[3]);
    const Matrix d_pre = activation_backward(Activation::ReLU, cache.hidden_pre, d_hidden);
    return first.backward(cache.input, d_pre, grads[0], grads[1]);
}

void Mlp::collect(ParamList& out, const std::string& prefix) {
    first.collect(out, prefix + ".0");
    second.collect(out, prefix + ".1");
}

Matrix mean_pool(const Matrix& h) {
    if (h.rows() == 0) throw ArgumentError("mean pooling needs at least one node");
    return h.colwise().mean();
}

Matrix mean_pool_backward(Eigen::Index node_count, const Matrix& d_pooled) {
    return (d_pooled / static_cast<Real>(node_count)).replicate(node_count, 1);
}

Real sigmoid(Real x) noexcept {
    if (x >= 0) return Real(1) / (Real(1) + std::exp(-x));
    const Real e = std::exp(x);
    return e / (Real(1) + e);
}

Matrix sigmoid(const Matrix& x) {
    return x.unaryExpr([](Real v) { return sigmoid(v); });
}

}  // namespace ggd::nn
