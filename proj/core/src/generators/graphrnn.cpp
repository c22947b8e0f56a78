#include "ggd/generators/graphrnn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "ggd/error.hpp"
#include "ggd/nn/adam.hpp"
#include "ggd/nn/loss.hpp"
#include "ggd/parallel.hpp"

namespace ggd::gen {

using nn::Matrix;
using nn::Real;

std::vector<NodeId> bfs_order(const Graph& g, NodeId start) {
    const auto n = g.node_count();
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    std::size_t next_unvisited = 0;
    NodeId root = start;
    while (order.size() < n) {
        std::queue<NodeId> frontier;
        frontier.push(root);
        seen[root] = 1;
        while (!frontier.empty()) {
            const NodeId u = frontier.front();
            frontier.pop();
            order.push_back(u);
            for (NodeId v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = 1;
                    frontier.push(v);
                }
            }
        }
        while (next_unvisited < n && seen[next_unvisited]) ++next_unvisited;
        if (next_unvisited < n) root = static_cast<NodeId>(next_unvisited);
    }
    return order;
}

std::size_t sequence_width(const Graph& g, const std::vector<NodeId>& order) {
    std::vector<std::size_t> position(g.node_count());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::size_t width = 0;
    for (const auto& e : g.edges()) {
        const auto a = position[e.u];
        const auto b = position[e.v];
        width = std::max(width, a > b ? a - b : b - a);
    }
    return width;
}

BfsEncoding bfs_encode(const Graph& g, NodeId start, std::size_t width) {
    BfsEncoding enc;
    enc.order = bfs_order(g, start);
    enc.width = width;
    std::vector<std::size_t> position(g.node_count());
    for (std::size_t i = 0; i < enc.order.size(); ++i) position[enc.order[i]] = i;
    enc.vectors.assign(g.node_count() > 0 ? g.node_count() - 1 : 0, std::vector<std::uint8_t>(width, 0));
    for (const auto& e : g.edges()) {
        const auto a = std::max(position[e.u], position[e.v]);
        const auto b = std::min(position[e.u], position[e.v]);
        const auto offset = a - b;
        if (offset <= width) enc.vectors[a - 1][offset - 1] = 1;
    }
    return enc;
}

std::size_t bfs_bandwidth(const Graph& g) {
    std::size_t width = 0;
    for (std::size_t s = 0; s < g.node_count(); ++s) {
        width = std::max(width, sequence_width(g, bfs_order(g, static_cast<NodeId>(s))));
    }
    return width;
}

GraphRnnModel GraphRnnModel::init(std::size_t width, std::size_t hidden_dim, Rng& rng) {
    GraphRnnModel m;
    m.width = width;
    const auto w = static_cast<Eigen::Index>(width);
    const auto h = static_cast<Eigen::Index>(hidden_dim);
    m.cell = nn::GruCell::init(w, h, rng);
    m.head = nn::Linear::init(h, w, rng);
    return m;
}

nn::ParamList GraphRnnModel::params() {
    nn::ParamList out;
    cell.collect(out, "gru");
    head.collect(out, "head");
    return out;
}

Real GraphRnnModel::loss(const BfsEncoding& enc, nn::Gradients* grads) const {
    const auto w = static_cast<Eigen::Index>(width);
    const std::size_t steps = enc.vectors.size();
    if (steps == 0) return 0;
    Matrix h = Matrix::Zero(1, cell.hidden_size());
    Matrix x = Matrix::Ones(1, w);  // start-of-sequence token
    std::vector<nn::GruCell::Cache> caches(grads ? steps : 0);
    std::vector<Matrix> hidden(grads ? steps : 0);
    std::vector<Matrix> d_logits(grads ? steps : 0);
    Real total = 0;
    for (std::size_t t = 0; t < steps; ++t) {
        h = cell.forward(x, h, grads ? &caches[t] : nullptr);
        const Matrix logits = head.forward(h);
        // node t + 1 can only link back to offsets 1..t+1
        const auto valid = std::min<std::size_t>(width, t + 1);
        Matrix d = Matrix::Zero(1, w);
        for (std::size_t j = 0; j < valid; ++j) {
            const auto v = nn::bce_with_logit(logits(0, static_cast<Eigen::Index>(j)), enc.vectors[t][j]);
            total += v.loss;
            d(0, static_cast<Eigen::Index>(j)) = v.grad;
        }
        if (grads) {
            hidden[t] = h;
            d_logits[t] = std::move(d);
        }
        x = Matrix(1, w);
        for (Eigen::Index j = 0; j < w; ++j) x(0, j) = enc.vectors[t][static_cast<std::size_t>(j)];
    }
    if (!grads) return total;

    auto& g = *grads;
    Matrix d_h_carry = Matrix::Zero(1, cell.hidden_size());
    for (std::size_t t = steps; t-- > 0;) {
        Matrix d_h = head.backward(hidden[t], d_logits[t], g[4], g[5]) + d_h_carry;
        Matrix d_x, d_prev;
        cell.backward(caches[t], d_h, g.data(), d_x, d_prev);
        d_h_carry = std::move(d_prev);
    }
    return total;
}

Graph GraphRnnModel::sample(std::size_t n, Rng& rng) const {
    const auto w = static_cast<Eigen::Index>(width);
    std::vector<Edge> edges;
    Matrix h = Matrix::Zero(1, cell.hidden_size());
    Matrix x = Matrix::Ones(1, w);
    for (std::size_t i = 1; i < n; ++i) {
        h = cell.forward(x, h);
        const Matrix probs = nn::sigmoid(head.forward(h));
        x = Matrix::Zero(1, w);
        const auto valid = std::min<std::size_t>(width, i);
        for (std::size_t j = 0; j < valid; ++j) {
            if (rng.bernoulli(probs(0, static_cast<Eigen::Index>(j)))) {
                x(0, static_cast<Eigen::Index>(j)) = 1;
                edges.push_back({static_cast<NodeId>(i - j - 1), static_cast<NodeId>(i)});
            }
        }
    }
    return Graph(n, std::move(edges));
}

GraphRnnModel fit_graphrnn_model(const Corpus& corpus, const GraphRnnConfig& config,
                                 std::vector<double>* log) {
    if (corpus.empty()) throw TrainError("cannot train GraphRNN on an empty corpus");
    std::vector<std::size_t> widths(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) { widths[i] = bfs_bandwidth(corpus[i].graph); });
    const std::size_t width = *std::max_element(widths.begin(), widths.end());
    if (width == 0) throw TrainError("training corpus has no edges to model");

    Rng init_rng(derive_seed(config.seed, 0x696e6974ULL));
    GraphRnnModel model = GraphRnnModel::init(width, config.hidden_dim, init_rng);
    auto params = model.params();
    nn::AdamState adam(static_cast<Real>(config.lr));
    Rng order_rng(derive_seed(config.seed, 0x6f72646572ULL));
    const std::size_t batch = std::max<std::size_t>(1, config.batch_size);

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        order_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t count = std::min(batch, order.size() - start);
            std::vector<nn::Gradients> per(count);
            std::vector<Real> losses(count);
            parallel_for(count, [&](std::size_t k) {
                const std::size_t idx = order[start + k];
                const Graph& g = corpus[idx].graph;
                Rng start_rng(derive_seed(config.seed, {epoch, idx}));
                const auto root = static_cast<NodeId>(start_rng.below(g.node_count()));
                per[k] = nn::zero_gradients(params);
                losses[k] = model.loss(bfs_encode(g, root, width), &per[k]);
            });
            nn::Gradients total = nn::zero_gradients(params);
            for (std::size_t k = 0; k < count; ++k) {
                nn::accumulate(total, per[k]);
                epoch_loss += static_cast<double>(losses[k]);
            }
            nn::scale(total, Real(1) / static_cast<Real>(count));
            adam_step(adam, params, total);
        }
        epoch_loss /= static_cast<double>(order.size());
        if (!std::isfinite(epoch_loss) || !nn::all_finite(params)) {
            throw TrainError("GraphRNN loss diverged at epoch " + std::to_string(epoch));
        }
        if (log) log->push_back(epoch_loss);
    }
    return model;
}

}  // namespace ggd::gen
