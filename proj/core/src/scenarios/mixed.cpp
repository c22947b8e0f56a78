#include "ggd/scenarios/mixed.hpp"

#include <algorithm>
#include <numeric>

#include "ggd/error.hpp"
#include "ggd/scenarios/scenario.hpp"

namespace ggd::scen {

Corpus build_mixed(const std::vector<Corpus>& real_corpora,
                   const std::vector<std::vector<gen::TrainedGenerator>>& generators, std::size_t per_dataset,
                   std::uint64_t seed, double keep_fraction) {
    if (generators.size() != real_corpora.size()) throw ConfigError("one generator list per dataset is required");
    Corpus out;
    out.seed = seed;
    for (std::size_t d = 0; d < real_corpora.size(); ++d) {
        const Corpus& reals = real_corpora[d];
        if (reals.size() < per_dataset) {
            throw ConfigError("dataset " + std::to_string(d) + " has " + std::to_string(reals.size()) +
                              " reals, fewer than " + std::to_string(per_dataset));
        }
        if (generators[d].empty()) throw ConfigError("dataset " + std::to_string(d) + " has no generator");
        Rng rng(derive_seed(seed, {d, 0}));
        for (auto i : rng.choose(reals.size(), per_dataset)) out.items.push_back(reals[i]);

        std::vector<std::size_t> by_id(generators[d].size());
        std::iota(by_id.begin(), by_id.end(), 0);
        std::stable_sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
            return generators[d][a].spec.id < generators[d][b].spec.id;
        });
        const auto shares = even_split(per_dataset, by_id.size());
        for (std::size_t k = 0; k < by_id.size(); ++k) {
            const auto& gen = generators[d][by_id[k]];
            const Corpus fakes = filtered_samples(gen, reals, shares[k], keep_fraction,
                                                  derive_seed(seed, {d, 1, hash_string(gen.spec.id)}));
            out.items.insert(out.items.end(), fakes.items.begin(), fakes.items.end());
        }
    }
    Rng shuffle_rng(derive_seed(seed, 0x6d6978ULL));
    shuffle_rng.shuffle(out.items);
    return out;
}

}  // namespace ggd::scen
