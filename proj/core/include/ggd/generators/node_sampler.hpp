#pragma once

#include <cstddef>
#include <vector>

#include "ggd/graph.hpp"
#include "ggd/random.hpp"

namespace ggd::gen {

// Empirical node-count distribution of a reference corpus. Samples only
// values observed in the reference.
class NodeCountSampler {
public:
    NodeCountSampler() = default;
    explicit NodeCountSampler(std::vector<std::size_t> observed);
    static NodeCountSampler from_corpus(const Corpus& reference);

    std::size_t sample(Rng& rng) const;
    const std::vector<std::size_t>& observed() const noexcept { return observed_; }
    bool empty() const noexcept { return observed_.empty(); }
    double mean() const noexcept;

private:
    std::vector<std::size_t> observed_;  // sorted, with multiplicity
};

}  // namespace ggd::gen
