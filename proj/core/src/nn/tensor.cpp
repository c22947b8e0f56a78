#include "ggd/nn/tensor.hpp"

#include <cmath>

#include "ggd/error.hpp"

namespace ggd::nn {

void require_shape(bool ok, const std::string& what) {
    if (!ok) throw ShapeError(what);
}

std::string shape_string(const Matrix& m) {
    return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
}

Matrix glorot(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = static_cast<Real>((2.0 * rng.uniform() - 1.0) * limit);
    }
    return m;
}

Matrix random_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng, Real scale) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<Real>(rng.normal()) * scale;
    return m;
}

namespace {
std::vector<Real> inv_sqrt_degrees(const Graph& g) {
    std::vector<Real> out(g.node_count());
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        out[u] = static_cast<Real>(1.0 / std::sqrt(static_cast<double>(g.degree(static_cast<NodeId>(u)) + 1)));
    }
    return out;
}
}  // namespace

Matrix normalize_adjacency(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto s = inv_sqrt_degrees(g);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index u = 0; u < n; ++u) a(u, u) = s[u] * s[u];
    for (const auto& e : g.edges()) {
        a(e.u, e.v) = s[e.u] * s[e.v];
        a(e.v, e.u) = s[e.u] * s[e.v];
    }
    return a;
}

SparseMatrix normalized_adjacency_sparse(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto s = inv_sqrt_degrees(g);
    std::vector<Eigen::Triplet<Real>> triplets;
    triplets.reserve(g.node_count() + 2 * g.edge_count());
    for (Eigen::Index u = 0; u < n; ++u) triplets.emplace_back(u, u, s[u] * s[u]);
    for (const auto& e : g.edges()) {
        const Real w = s[e.u] * s[e.v];
        triplets.emplace_back(e.u, e.v, w);
        triplets.emplace_back(e.v, e.u, w);
    }
    SparseMatrix a(n, n);
    a.setFromTriplets(triplets.begin(), triplets.end());
    return a;
}

Gradients zero_gradients(const ParamList& params) {
    Gradients out;
    out.reserve(params.size());
    for (const auto& p : params) out.push_back(Matrix::Zero(p.value->rows(), p.value->cols()));
    return out;
}

void accumulate(Gradients& into, const Gradients& from) {
    require_shape(into.size() == from.size(), "gradient lists differ in length");
    for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

void scale(Gradients& grads, Real factor) {
    for (auto& g : grads) g *= factor;
}

std::size_t parameter_count(const ParamList& params) {
    std::size_t n = 0;
    for (const auto& p : params) n += static_cast<std::size_t>(p.value->size());
    return n;
}

bool all_finite(const ParamList& params) {
    for (const auto& p : params) {
        if (!p.value->allFinite()) return false;
    }
    return true;
}

}  // namespace ggd::nn
