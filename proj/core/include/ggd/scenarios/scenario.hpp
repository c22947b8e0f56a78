#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ggd/generators/generator.hpp"
#include "ggd/graph.hpp"

namespace ggd::scen {

enum class ScenarioKind { ClosedWorld, OpenGenerator, OpenSet, OpenWorld };

inline constexpr ScenarioKind kAllScenarios[] = {ScenarioKind::ClosedWorld, ScenarioKind::OpenGenerator,
                                                 ScenarioKind::OpenSet, ScenarioKind::OpenWorld};

// "closed_world", "open_generator", "open_set", "open_world"
std::string_view to_string(ScenarioKind kind) noexcept;
ScenarioKind parse_scenario_kind(std::string_view text);

struct ScenarioConfig {
    std::vector<std::string> seen_datasets;
    std::vector<std::string> unseen_datasets;
    std::vector<gen::GeneratorSpec> seen_generators;
    std::vector<gen::GeneratorSpec> unseen_generators;
    double train_fraction = 0.8;
    double keep_fraction = 0.2;     // share of every generated pool kept by the 1-NN filter
    std::size_t test_per_class = 2000;  // test size per class on unseen datasets
    std::size_t generator_fit_cap = 0;  // max graphs a generator is fitted on; 0 = all
    std::uint64_t seed = 0;

    // Throws ConfigError on overlapping or missing lists.
    void validate() const;
    // Additionally checks the lists `kind` needs.
    void validate_for(ScenarioKind kind) const;
};

using RealCorpora = std::map<std::string, Corpus>;

// The training corpus is identical for every scenario of one config, so it
// is built once together with the test corpora of all requested kinds.
//   train: seen-dataset reals (train share) + seen-generator fakes
//   ClosedWorld    held-out seen reals + seen-generator fakes
//   OpenGenerator  held-out seen reals + unseen-generator fakes
//   OpenSet        unseen-dataset reals + seen-generator fakes refitted on unseen data
//   OpenWorld      unseen-dataset reals + unseen-generator fakes fitted on unseen data
// Every generated pool passes the 1-NN filter against its reference reals,
// and every corpus is class-balanced.
struct ExperimentData {
    Corpus train;
    std::map<ScenarioKind, Corpus> tests;
    std::size_t generators_fitted = 0;
};

ExperimentData build_experiment(const ScenarioConfig& config, const RealCorpora& reals,
                                const std::vector<ScenarioKind>& kinds);

struct ScenarioData {
    ScenarioKind kind = ScenarioKind::ClosedWorld;
    Corpus train;
    Corpus test;
};

ScenarioData build_scenario(const ScenarioConfig& config, ScenarioKind kind, const RealCorpora& reals);

// Throws LeakError naming the first graph present in both corpora.
void check_no_leak(const Corpus& train, const Corpus& test);

// Splits `total` into `parts` near-equal shares; the remainder goes to the
// first shares.
std::vector<std::size_t> even_split(std::size_t total, std::size_t parts);

// Draws a pool large enough that the 1-NN filter against `reference` keeps
// at least `count` graphs, filters it and returns the first `count` kept.
Corpus filtered_samples(const gen::TrainedGenerator& gen, const Corpus& reference, std::size_t count,
                        double keep_fraction, std::uint64_t seed);

}  // namespace ggd::scen
