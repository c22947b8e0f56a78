#include "ggd/scenarios/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "ggd/error.hpp"
#include "ggd/random.hpp"
#include "ggd/stats.hpp"

namespace ggd::scen {

std::string_view to_string(ScenarioKind kind) noexcept {
    switch (kind) {
        case ScenarioKind::ClosedWorld: return "closed_world";
        case ScenarioKind::OpenGenerator: return "open_generator";
        case ScenarioKind::OpenSet: return "open_set";
        case ScenarioKind::OpenWorld: return "open_world";
    }
    return "?";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
    for (auto k : kAllScenarios) {
        if (to_string(k) == text) return k;
    }
    throw ConfigError("unknown scenario '" + std::string(text) + "'");
}

void ScenarioConfig::validate() const {
    if (seen_datasets.empty()) throw ConfigError("at least one seen dataset is required");
    if (seen_generators.empty()) throw ConfigError("at least one seen generator is required");
    std::set<std::string> datasets;
    for (const auto& d : seen_datasets) {
        if (!datasets.insert(d).second) throw ConfigError("dataset '" + d + "' is listed twice");
    }
    for (const auto& d : unseen_datasets) {
        if (!datasets.insert(d).second) throw ConfigError("dataset '" + d + "' is both seen and unseen or repeated");
    }
    std::set<std::string> ids;
    for (const auto* list : {&seen_generators, &unseen_generators}) {
        for (const auto& g : *list) {
            g.validate();
            if (!ids.insert(g.id).second) throw ConfigError("generator id '" + g.id + "' is used twice");
        }
    }
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train_fraction must lie in (0, 1)");
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) throw ConfigError("keep_fraction must lie in (0, 1]");
    if (test_per_class == 0) throw ConfigError("test_per_class must be positive");
}

void ScenarioConfig::validate_for(ScenarioKind kind) const {
    validate();
    const bool needs_generators = kind == ScenarioKind::OpenGenerator || kind == ScenarioKind::OpenWorld;
    const bool needs_datasets = kind == ScenarioKind::OpenSet || kind == ScenarioKind::OpenWorld;
    if (needs_generators && unseen_generators.empty()) {
        throw ConfigError(std::string(to_string(kind)) + " needs at least one unseen generator");
    }
    if (needs_datasets && unseen_datasets.empty()) {
        throw ConfigError(std::string(to_string(kind)) + " needs at least one unseen dataset");
    }
}

std::vector<std::size_t> even_split(std::size_t total, std::size_t parts) {
    if (parts == 0) throw ArgumentError("cannot split into zero parts");
    std::vector<std::size_t> out(parts, total / parts);
    for (std::size_t i = 0; i < total % parts; ++i) ++out[i];
    return out;
}

void check_no_leak(const Corpus& train, const Corpus& test) {
    std::unordered_set<std::string> seen;
    seen.reserve(train.size());
    for (const auto& item : train) seen.insert(identity_key(item));
    for (const auto& item : test) {
        if (seen.contains(identity_key(item))) {
            throw LeakError("graph " + identity_key(item) + " appears in both train and test");
        }
    }
}

Corpus filtered_samples(const gen::TrainedGenerator& gen, const Corpus& reference, std::size_t count,
                        double keep_fraction, std::uint64_t seed) {
    Corpus out;
    out.seed = seed;
    if (count == 0) return out;
    auto pool_size = static_cast<std::size_t>(std::ceil(static_cast<double>(count) / keep_fraction));
    while (stats::kept_count(pool_size, keep_fraction) < count) ++pool_size;
    const Corpus pool = gen::sample_generator(gen, pool_size, seed);
    Corpus kept = stats::knn_filter(pool, reference, keep_fraction);
    kept.items.resize(count);
    return kept;
}

namespace {

void append(Corpus& into, const Corpus& from, std::size_t begin = 0, std::size_t end = SIZE_MAX) {
    end = std::min(end, from.size());
    for (std::size_t i = begin; i < end; ++i) into.items.push_back(from[i]);
}

Corpus capped(const Corpus& c, std::size_t cap, std::uint64_t seed) {
    if (cap == 0 || c.size() <= cap) return c;
    Rng rng(seed);
    Corpus out;
    out.seed = seed;
    for (auto i : rng.choose(c.size(), cap)) out.items.push_back(c[i]);
    return out;
}

const Corpus& corpus_for(const RealCorpora& reals, const std::string& id) {
    auto it = reals.find(id);
    if (it == reals.end()) throw ConfigError("no real corpus named '" + id + "' was loaded");
    if (it->second.size() < 2) throw ConfigError("dataset '" + id + "' has fewer than 2 graphs");
    return it->second;
}

struct Builder {
    const ScenarioConfig& config;
    std::size_t fitted = 0;

    gen::TrainedGenerator fit(const gen::GeneratorSpec& spec, const std::string& dataset, const Corpus& reference) {
        gen::GeneratorSpec s = spec;
        s.seed = derive_seed(config.seed, {hash_string(dataset), hash_string(spec.id), spec.seed});
        ++fitted;
        return gen::fit_generator(s, capped(reference, config.generator_fit_cap,
                                            derive_seed(config.seed, {hash_string(dataset), 0x636170ULL})));
    }

    // Fakes from every generator in `specs`, fitted on `fit_reference` and
    // filtered against it, split evenly so that the shares sum to each entry
    // of `totals`. Result k holds the fakes for totals[k].
    std::vector<Corpus> fakes(const std::vector<gen::GeneratorSpec>& specs, const std::string& dataset,
                              const Corpus& fit_reference, const std::vector<std::size_t>& totals,
                              std::uint64_t tag) {
        std::vector<std::vector<std::size_t>> shares;
        for (auto t : totals) shares.push_back(even_split(t, specs.size()));
        std::vector<Corpus> out(totals.size());
        for (std::size_t g = 0; g < specs.size(); ++g) {
            std::size_t need = 0;
            for (const auto& s : shares) need += s[g];
            const auto generator = fit(specs[g], dataset, fit_reference);
            const Corpus pool = filtered_samples(
                generator, fit_reference, need, config.keep_fraction,
                derive_seed(config.seed, {hash_string(dataset), hash_string(specs[g].id), tag}));
            std::size_t offset = 0;
            for (std::size_t k = 0; k < totals.size(); ++k) {
                append(out[k], pool, offset, offset + shares[k][g]);
                offset += shares[k][g];
            }
        }
        return out;
    }
};

bool wants(const std::vector<ScenarioKind>& kinds, ScenarioKind k) {
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

}  // namespace

ExperimentData build_experiment(const ScenarioConfig& config, const RealCorpora& reals,
                                const std::vector<ScenarioKind>& kinds) {
    for (auto k : kinds) config.validate_for(k);
    config.validate();
    Builder builder{config};
    ExperimentData data;
    data.train.seed = config.seed;
    Corpus closed, open_generator, open_set, open_world;

    for (const auto& dataset : config.seen_datasets) {
        const Corpus& all = corpus_for(reals, dataset);
        const Split split = split_corpus(all, config.train_fraction, derive_seed(config.seed, {hash_string(dataset), 1}));
        append(data.train, split.train);
        const auto seen_fakes =
            builder.fakes(config.seen_generators, dataset, split.train, {split.train.size(), split.test.size()}, 1);
        append(data.train, seen_fakes[0]);
        if (wants(kinds, ScenarioKind::ClosedWorld)) {
            append(closed, split.test);
            append(closed, seen_fakes[1]);
        }
        if (wants(kinds, ScenarioKind::OpenGenerator)) {
            append(open_generator, split.test);
            append(open_generator, builder.fakes(config.unseen_generators, dataset, split.train, {split.test.size()}, 2)[0]);
        }
    }

    if (wants(kinds, ScenarioKind::OpenSet) || wants(kinds, ScenarioKind::OpenWorld)) {
        const auto per_dataset = even_split(config.test_per_class, config.unseen_datasets.size());
        for (std::size_t d = 0; d < config.unseen_datasets.size(); ++d) {
            const auto& dataset = config.unseen_datasets[d];
            const Corpus& all = corpus_for(reals, dataset);
            // Test reals come first in a seeded shuffle; the rest is what the
            // generators are fitted on.
            const std::size_t test_count = per_dataset[d];
            if (test_count >= all.size()) {
                throw ConfigError("dataset '" + dataset + "' has " + std::to_string(all.size()) +
                                  " graphs; more than " + std::to_string(test_count) + " are needed");
            }
            std::vector<std::size_t> order(all.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            Rng rng(derive_seed(config.seed, {hash_string(dataset), 3}));
            rng.shuffle(order);
            Corpus test_reals, fit_reals;
            for (std::size_t i = 0; i < order.size(); ++i) (i < test_count ? test_reals : fit_reals).items.push_back(all[order[i]]);

            if (wants(kinds, ScenarioKind::OpenSet)) {
                append(open_set, test_reals);
                append(open_set, builder.fakes(config.seen_generators, dataset, fit_reals, {test_count}, 3)[0]);
            }
            if (wants(kinds, ScenarioKind::OpenWorld)) {
                append(open_world, test_reals);
                append(open_world, builder.fakes(config.unseen_generators, dataset, fit_reals, {test_count}, 4)[0]);
            }
        }
    }

    auto finish = [&](ScenarioKind kind, Corpus& test) {
        if (!wants(kinds, kind)) return;
        test.seed = config.seed;
        check_no_leak(data.train, test);
        data.tests.emplace(kind, std::move(test));
    };
    finish(ScenarioKind::ClosedWorld, closed);
    finish(ScenarioKind::OpenGenerator, open_generator);
    finish(ScenarioKind::OpenSet, open_set);
    finish(ScenarioKind::OpenWorld, open_world);
    data.generators_fitted = builder.fitted;
    return data;
}

ScenarioData build_scenario(const ScenarioConfig& config, ScenarioKind kind, const RealCorpora& reals) {
    auto data = build_experiment(config, reals, {kind});
    return ScenarioData{kind, std::move(data.train), std::move(data.tests.at(kind))};
}

}  // namespace ggd::scen
