#include "ggd/generators/node_sampler.hpp"

#include <algorithm>
#include <numeric>

#include "ggd/error.hpp"

namespace ggd::gen {

NodeCountSampler::NodeCountSampler(std::vector<std::size_t> observed) : observed_(std::move(observed)) {
    std::sort(observed_.begin(), observed_.end());
}

NodeCountSampler NodeCountSampler::from_corpus(const Corpus& reference) {
    std::vector<std::size_t> counts;
    counts.reserve(reference.size());
    for (const auto& item : reference) counts.push_back(item.graph.node_count());
    return NodeCountSampler(std::move(counts));
}

std::size_t NodeCountSampler::sample(Rng& rng) const {
    if (observed_.empty()) throw ArgumentError("node-count sampler has no reference graphs");
    return observed_[rng.below(observed_.size())];
}

double NodeCountSampler::mean() const noexcept {
    if (observed_.empty()) return 0.0;
    return static_cast<double>(std::accumulate(observed_.begin(), observed_.end(), std::size_t{0})) /
           static_cast<double>(observed_.size());
}

}  // namespace ggd::gen
