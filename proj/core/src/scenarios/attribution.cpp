#include "ggd/scenarios/attribution.hpp"

#include <cmath>
#include <set>

#include "ggd/detectors/metric.hpp"
#include "ggd/error.hpp"
#include "ggd/parallel.hpp"

namespace ggd::scen {

namespace {
std::vector<std::string> generator_keys(const Corpus& c) {
    std::vector<std::string> keys;
    keys.reserve(c.size());
    for (const auto& item : c) {
        if (!item.generator_id) throw ConfigError("attribution needs generated graphs only");
        keys.push_back(*item.generator_id);
    }
    return keys;
}
}  // namespace

AttributionResult run_attribution(const Corpus& unseen_fakes, std::size_t n_pos, std::size_t n_neg,
                                  const detect::DetectorConfig& config, std::uint64_t seed) {
    const auto keys = generator_keys(unseen_fakes);
    if (std::set<std::string>(keys.begin(), keys.end()).size() < 2) {
        throw ConfigError("attribution needs graphs from at least two generators");
    }
    const Split split = split_corpus(unseen_fakes, 0.8, derive_seed(seed, 1));
    const auto train_pos = static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(n_pos)));
    const auto train_neg = static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(n_neg)));
    const auto train_pairs = detect::sample_pairs(generator_keys(split.train), train_pos, train_neg, derive_seed(seed, 2));
    const auto test_pairs =
        detect::sample_pairs(generator_keys(split.test), n_pos - train_pos, n_neg - train_neg, derive_seed(seed, 3));

    std::vector<Graph> train_graphs;
    for (const auto& item : split.train) train_graphs.push_back(item.graph);
    detect::DetectorConfig cfg = config;
    cfg.seed = derive_seed(seed, 4);
    const auto model = detect::train_siamese(train_graphs, train_pairs, cfg);

    std::vector<nn::Matrix> h(split.test.size());
    parallel_for(split.test.size(), [&](std::size_t i) { h[i] = model.encoder.embed(split.test[i].graph); });
    std::vector<int> truth, predicted;
    for (const auto& p : test_pairs) {
        truth.push_back(p.same);
        predicted.push_back(model.posterior(h[p.first], h[p.second]) >= nn::Real(0.5) ? 1 : 0);
    }
    AttributionResult result;
    result.metrics = evaluate_binary(truth, predicted);
    result.train_pairs = train_pairs.size();
    result.test_pairs = test_pairs.size();
    for (const auto* list : {&train_pairs, &test_pairs}) {
        for (const auto& p : *list) (p.same ? result.positives : result.negatives)++;
    }
    return result;
}

}  // namespace ggd::scen
