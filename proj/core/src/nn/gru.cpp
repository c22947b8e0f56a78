#include "ggd/nn/gru.hpp"

#include <cmath>

#include "ggd/nn/layers.hpp"

namespace ggd::nn {

GruCell GruCell::init(Eigen::Index d_in, Eigen::Index hidden, Rng& rng) {
    GruCell cell;
    cell.input_weight = glorot(d_in, 3 * hidden, rng);
    cell.hidden_weight = glorot(hidden, 3 * hidden, rng);
    cell.input_bias = Matrix::Zero(1, 3 * hidden);
    cell.hidden_bias = Matrix::Zero(1, 3 * hidden);
    return cell;
}

Matrix GruCell::forward(const Matrix& x, const Matrix& h, Cache* cache) const {
    const Eigen::Index hs = hidden_size();
    require_shape(x.cols() == input_weight.rows(), "GRU input width mismatch");
    require_shape(h.cols() == hs && h.rows() == x.rows(), "GRU hidden state shape mismatch");
    Matrix gi = x * input_weight;
    gi.rowwise() += input_bias.row(0);
    Matrix gh = h * hidden_weight;
    gh.rowwise() += hidden_bias.row(0);

    const Matrix r = sigmoid(Matrix(gi.leftCols(hs) + gh.leftCols(hs)));
    const Matrix z = sigmoid(Matrix(gi.middleCols(hs, hs) + gh.middleCols(hs, hs)));
    const Matrix hidden_candidate = gh.rightCols(hs);
    const Matrix c = (gi.rightCols(hs).array() + r.array() * hidden_candidate.array()).tanh().matrix();
    Matrix next = ((Real(1) - z.array()) * c.array() + z.array() * h.array()).matrix();
    if (cache) {
        cache->x = x;
        cache->h = h;
        cache->r = r;
        cache->z = z;
        cache->c = c;
        cache->hidden_candidate = hidden_candidate;
    }
    return next;
}

void GruCell::backward(const Cache& k, const Matrix& d_next, Matrix* grads, Matrix& d_x,
                       Matrix& d_h) const {
    const Eigen::Index hs = hidden_size();
    const auto one = Real(1);
    const Matrix d_c = (d_next.array() * (one - k.z.array())).matrix();
    const Matrix d_z = (d_next.array() * (k.h.array() - k.c.array())).matrix();
    const Matrix d_c_pre = (d_c.array() * (one - k.c.array().square())).matrix();
    const Matrix d_r = (d_c_pre.array() * k.hidden_candidate.array()).matrix();
    const Matrix d_hidden_candidate = (d_c_pre.array() * k.r.array()).matrix();
    const Matrix d_r_pre = (d_r.array() * k.r.array() * (one - k.r.array())).matrix();
    const Matrix d_z_pre = (d_z.array() * k.z.array() * (one - k.z.array())).matrix();

    const Eigen::Index rows = d_next.rows();
    Matrix d_gi(rows, 3 * hs);
    d_gi << d_r_pre, d_z_pre, d_c_pre;
    Matrix d_gh(rows, 3 * hs);
    d_gh << d_r_pre, d_z_pre, d_hidden_candidate;

    grads[0].noalias() += k.x.transpose() * d_gi;
    grads[1].noalias() += k.h.transpose() * d_gh;
    grads[2] += d_gi.colwise().sum();
    grads[3] += d_gh.colwise().sum();

    d_x = d_gi * input_weight.transpose();
    d_h = d_gh * hidden_weight.transpose();
    d_h += (d_next.array() * k.z.array()).matrix();
}

void GruCell::collect(ParamList& out, const std::string& prefix) {
    out.push_back({prefix + ".input_weight", &input_weight});
    out.push_back({prefix + ".hidden_weight", &hidden_weight});
    out.push_back({prefix + ".input_bias", &input_bias});
    out.push_back({prefix + ".hidden_bias", &hidden_bias});
}

}  // namespace ggd::nn
