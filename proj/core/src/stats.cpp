#include "ggd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "ggd/error.hpp"
#include "ggd/parallel.hpp"

namespace ggd::stats {

namespace {

std::size_t bfs_eccentricity(const Graph& g, NodeId source, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<NodeId> frontier;
    frontier.push(source);
    dist[source] = 0;
    int far = 0;
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                far = std::max(far, dist[v]);
                frontier.push(v);
            }
        }
    }
    return static_cast<std::size_t>(far);
}

// Triangles through each node, by sorted-neighbor intersection.
std::vector<std::size_t> node_triangles(const Graph& g) {
    std::vector<std::size_t> tri(g.node_count(), 0);
    for (const auto& e : g.edges()) {
        auto a = g.neighbors(e.u);
        auto b = g.neighbors(e.v);
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) {
                ++i;
            } else if (b[j] < a[i]) {
                ++j;
            } else {
                // each triangle is seen once per edge, three edges per triangle
                const NodeId w = a[i];
                if (w > e.v) {
                    ++tri[e.u];
                    ++tri[e.v];
                    ++tri[w];
                }
                ++i;
                ++j;
            }
        }
    }
    return tri;
}

}  // namespace

std::vector<double> local_clustering(const Graph& g) {
    const auto tri = node_triangles(g);
    std::vector<double> out(g.node_count(), 0.0);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        const double d = static_cast<double>(g.degree(static_cast<NodeId>(u)));
        if (d >= 2) out[u] = 2.0 * static_cast<double>(tri[u]) / (d * (d - 1.0));
    }
    return out;
}

std::size_t triangle_count(const Graph& g) {
    const auto tri = node_triangles(g);
    return std::accumulate(tri.begin(), tri.end(), std::size_t{0}) / 3;
}

StatFeatures stat_features(const Graph& g) {
    const auto n = g.node_count();
    if (n == 0) throw ArgumentError("stat_features requires at least one node");
    StatFeatures f;
    f.num_nodes = static_cast<double>(n);
    f.num_edges = static_cast<double>(g.edge_count());
    f.density = n >= 2 ? 2.0 * f.num_edges / (static_cast<double>(n) * static_cast<double>(n - 1)) : 0.0;

    // Several components can tie for the largest; taking the widest of them
    // keeps the value independent of node numbering.
    const auto components = connected_components(g);
    std::size_t largest = 0;
    for (const auto& c : components) largest = std::max(largest, c.size());
    std::vector<int> dist(n);
    std::size_t diameter = 0;
    for (const auto& c : components) {
        if (c.size() != largest) continue;
        for (NodeId u : c) diameter = std::max(diameter, bfs_eccentricity(g, u, dist));
    }
    f.diameter = static_cast<double>(diameter);

    const auto tri = node_triangles(g);
    double clustering_sum = 0.0;
    double triangles3 = 0.0;
    double triples = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        const double d = static_cast<double>(g.degree(static_cast<NodeId>(u)));
        const double pairs = d * (d - 1.0) / 2.0;
        if (d >= 2) clustering_sum += static_cast<double>(tri[u]) / pairs;
        triangles3 += static_cast<double>(tri[u]);  // sum over nodes = 3 * triangles
        triples += pairs;
    }
    f.avg_clustering = clustering_sum / static_cast<double>(n);
    f.transitivity = triples > 0 ? triangles3 / triples : 0.0;
    return f;
}

std::vector<FeatureVector> corpus_features(const Corpus& c) {
    std::vector<FeatureVector> out(c.size());
    parallel_for(c.size(), [&](std::size_t i) { out[i] = stat_features(c[i].graph).as_array(); });
    return out;
}

FeatureScaler FeatureScaler::fit(std::span<const FeatureVector> rows) {
    if (rows.empty()) throw ArgumentError("cannot fit a scaler on an empty set");
    FeatureScaler s;
    const double count = static_cast<double>(rows.size());
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
        double mean = 0.0;
        for (const auto& r : rows) mean += r[k];
        mean /= count;
        double var = 0.0;
        for (const auto& r : rows) var += (r[k] - mean) * (r[k] - mean);
        var /= count;
        s.mean_[k] = mean;
        s.std_[k] = std::max(std::sqrt(var), kStdFloor);
    }
    return s;
}

FeatureScaler FeatureScaler::from_moments(const FeatureVector& mean, const FeatureVector& stddev) {
    FeatureScaler s;
    s.mean_ = mean;
    for (std::size_t k = 0; k < kFeatureCount; ++k) s.std_[k] = std::max(stddev[k], kStdFloor);
    return s;
}

FeatureVector FeatureScaler::transform(const FeatureVector& row) const noexcept {
    FeatureVector out;
    for (std::size_t k = 0; k < kFeatureCount; ++k) out[k] = (row[k] - mean_[k]) / std_[k];
    return out;
}

std::vector<FeatureVector> FeatureScaler::transform(std::span<const FeatureVector> rows) const {
    std::vector<FeatureVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(transform(r));
    return out;
}

double euclidean(const FeatureVector& a, const FeatureVector& b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < kFeatureCount; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

std::vector<double> nearest_real_distances(const Corpus& generated, const Corpus& real) {
    if (real.empty()) throw ArgumentError("real corpus is empty");
    if (generated.empty()) throw ArgumentError("generated corpus is empty");
    const auto real_raw = corpus_features(real);
    const auto scaler = FeatureScaler::fit(real_raw);
    const auto real_z = scaler.transform(real_raw);
    const auto gen_z = scaler.transform(corpus_features(generated));
    std::vector<double> out(gen_z.size());
    parallel_for(gen_z.size(), [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : real_z) best = std::min(best, euclidean(gen_z[i], r));
        out[i] = best;
    });
    return out;
}

std::size_t kept_count(std::size_t total, double keep_fraction) {
    const double raw = keep_fraction * static_cast<double>(total);
    // Guard against products such as 0.7 * 10 = 7.000000000000001.
    const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(total, k);
}

Corpus knn_filter(const Corpus& generated, const Corpus& real, double keep_fraction) {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
        throw ArgumentError("keep fraction must lie in (0, 1]");
    }
    const auto dist = nearest_real_distances(generated, real);
    std::vector<std::size_t> order(dist.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return dist[x] < dist[y]; });
    order.resize(kept_count(generated.size(), keep_fraction));
    std::sort(order.begin(), order.end());
    Corpus out;
    out.seed = generated.seed;
    out.items.reserve(order.size());
    for (auto i : order) out.items.push_back(generated[i]);
    return out;
}

MmdResult mmd_features(std::span<const FeatureVector> a, std::span<const FeatureVector> b,
                       std::optional<double> bandwidth) {
    if (a.empty() || b.empty()) throw ArgumentError("mmd requires non-empty sets");
    std::vector<FeatureVector> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto scaler = FeatureScaler::fit(pooled);
    const auto za = scaler.transform(a);
    const auto zb = scaler.transform(b);
    const auto zall = scaler.transform(pooled);

    MmdResult result;
    if (bandwidth) {
        if (!(*bandwidth > 0.0)) throw ArgumentError("bandwidth must be positive");
        result.bandwidth = *bandwidth;
    } else {
        std::vector<double> dists;
        dists.reserve(zall.size() * (zall.size() - 1) / 2);
        for (std::size_t i = 0; i < zall.size(); ++i) {
            for (std::size_t j = i + 1; j < zall.size(); ++j) dists.push_back(euclidean(zall[i], zall[j]));
        }
        double median = 0.0;
        if (!dists.empty()) {
            const std::size_t mid = dists.size() / 2;
            std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
            median = dists[mid];
            if (dists.size() % 2 == 0) {
                const double lower = *std::max_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid));
                median = 0.5 * (median + lower);
            }
        }
        if (median > 0.0) {
            result.bandwidth = median;
        } else {
            result.bandwidth = 1.0;
            result.bandwidth_fallback = true;
        }
    }

    const double inv = 1.0 / (2.0 * result.bandwidth * result.bandwidth);
    auto mean_kernel = [&](const std::vector<FeatureVector>& x, const std::vector<FeatureVector>& y) {
        double s = 0.0;
        for (const auto& p : x) {
            for (const auto& q : y) {
                double d2 = 0.0;
                for (std::size_t k = 0; k < kFeatureCount; ++k) d2 += (p[k] - q[k]) * (p[k] - q[k]);
                s += std::exp(-d2 * inv);
            }
        }
        return s / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
    };
    const double kxx = mean_kernel(za, za);
    const double kyy = mean_kernel(zb, zb);
    const double kxy = mean_kernel(za, zb);
    result.value = std::max(0.0, kxx + kyy - 2.0 * kxy);
    return result;
}

MmdResult mmd(const Corpus& a, const Corpus& b, std::optional<double> bandwidth) {
    return mmd_features(corpus_features(a), corpus_features(b), bandwidth);
}

}  // namespace ggd::stats
