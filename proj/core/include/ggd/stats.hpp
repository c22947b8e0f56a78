#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ggd/graph.hpp"

namespace ggd::stats {

inline constexpr std::size_t kFeatureCount = 6;
using FeatureVector = std::array<double, kFeatureCount>;

// The six topological descriptors used for quality filtering, MMD and the
// feature baseline.
struct StatFeatures {
    double num_nodes = 0;
    double num_edges = 0;
    double density = 0;
    double diameter = 0;  // of the largest connected component (widest one on ties)
    double avg_clustering = 0;
    double transitivity = 0;

    FeatureVector as_array() const noexcept {
        return {num_nodes, num_edges, density, diameter, avg_clustering, transitivity};
    }
    bool operator==(const StatFeatures&) const = default;
};

// Throws ArgumentError for n = 0.
StatFeatures stat_features(const Graph& g);
std::vector<FeatureVector> corpus_features(const Corpus& c);

// Per-node local clustering coefficients (0 for degree < 2).
std::vector<double> local_clustering(const Graph& g);
std::size_t triangle_count(const Graph& g);

// z-score standardization; std components floored at 1e-8.
class FeatureScaler {
public:
    static constexpr double kStdFloor = 1e-8;

    FeatureScaler() { std_.fill(1.0); }
    static FeatureScaler fit(std::span<const FeatureVector> rows);

    FeatureVector transform(const FeatureVector& row) const noexcept;
    std::vector<FeatureVector> transform(std::span<const FeatureVector> rows) const;

    const FeatureVector& mean() const noexcept { return mean_; }
    const FeatureVector& stddev() const noexcept { return std_; }
    static FeatureScaler from_moments(const FeatureVector& mean, const FeatureVector& stddev);

private:
    FeatureVector mean_{};
    FeatureVector std_{};
};

double euclidean(const FeatureVector& a, const FeatureVector& b) noexcept;

// Distance from each generated graph to its nearest real graph, in the
// feature space standardized by a scaler fitted on `real`.
std::vector<double> nearest_real_distances(const Corpus& generated, const Corpus& real);

// Keeps the ceil(keep_fraction * |generated|) generated graphs closest to the
// real set (ties broken by corpus order). Output preserves corpus order.
Corpus knn_filter(const Corpus& generated, const Corpus& real, double keep_fraction = 0.2);
std::size_t kept_count(std::size_t total, double keep_fraction);

struct MmdResult {
    double value = 0;
    double bandwidth = 0;
    // True when the median pairwise distance was 0 and bandwidth 1.0 was used.
    bool bandwidth_fallback = false;
};

// Biased (V-statistic) squared MMD with a Gaussian kernel
// k(x, y) = exp(-|x - y|^2 / (2 sigma^2)) on features standardized over a ∪ b.
// Bandwidth defaults to the median pairwise distance over a ∪ b.
MmdResult mmd(const Corpus& a, const Corpus& b, std::optional<double> bandwidth = std::nullopt);
MmdResult mmd_features(std::span<const FeatureVector> a, std::span<const FeatureVector> b,
                       std::optional<double> bandwidth = std::nullopt);

}  // namespace ggd::stats
