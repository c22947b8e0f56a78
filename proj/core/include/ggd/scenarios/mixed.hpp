#pragma once

#include <cstdint>
#include <vector>

#include "ggd/generators/generator.hpp"

namespace ggd::scen {

// Dataset-oblivious corpus: from every dataset d, per_dataset reals drawn
// without replacement from real_corpora[d] plus per_dataset fakes from
// generators[d], split evenly across those generators (remainder to the
// earliest generator ids) and passed through the 1-NN filter against the
// dataset's reals. The result is shuffled by seed. Throws ConfigError when
// a dataset has fewer than per_dataset reals or no generator.
Corpus build_mixed(const std::vector<Corpus>& real_corpora,
                   const std::vector<std::vector<gen::TrainedGenerator>>& generators, std::size_t per_dataset,
                   std::uint64_t seed, double keep_fraction = 0.2);

}  // namespace ggd::scen
