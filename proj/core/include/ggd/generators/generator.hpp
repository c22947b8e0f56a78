#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ggd/generators/autoencoder.hpp"
#include "ggd/generators/graphrnn.hpp"
#include "ggd/generators/node_sampler.hpp"
#include "ggd/graph.hpp"

namespace ggd::gen {

enum class GeneratorKind { ER, BA, WS, VGAE, Graphite, GraphRNN_S };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& text);
bool is_neural(GeneratorKind kind) noexcept;

// Generator configuration. Recognized params per kind:
//   ER        p | m (edge count), n
//   BA        m, n
//   WS        k, beta, n
//   VGAE      latent_dim, hidden_dim, epochs, batch_size, lr
//   Graphite  as VGAE plus rounds
//   GraphRNN_S hidden_dim, epochs, batch_size, lr
// Traditional parameters that are absent are fitted from the reference
// corpus; "n" fixes the node count instead of sampling it.
struct GeneratorSpec {
    std::string id;
    GeneratorKind kind = GeneratorKind::ER;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;

    std::optional<double> param(const std::string& key) const;
    // Throws ConfigError on unknown keys or out-of-range values.
    void validate() const;
    bool operator==(const GeneratorSpec&) const = default;
};

std::string spec_to_json(const GeneratorSpec& spec);
GeneratorSpec spec_from_json(const std::string& text);

struct TrainedGenerator {
    GeneratorSpec spec;
    NodeCountSampler node_sampler;
    std::string dataset_id;                   // reference the generator was fitted on
    std::map<std::string, double> resolved;  // fitted traditional parameters
    std::optional<GraphAutoencoder> autoencoder;
    std::optional<GraphRnnModel> rnn;
    std::vector<double> training_log;

    std::size_t parameter_count() const;
    // One sample drawn from the given sample seed.
    Graph sample_one(std::uint64_t sample_seed) const;
};

// Fits `spec` on a reference corpus of real graphs. The reference may be
// empty only for traditional generators with a fixed "n".
TrainedGenerator fit_generator(const GeneratorSpec& spec, const Corpus& reference);

// `count` graphs; sample i uses seed derive_seed(seed, first_index + i) and
// gets source_index first_index + i.
Corpus sample_generator(const TrainedGenerator& gen, std::size_t count, std::uint64_t seed,
                        std::size_t first_index = 0);

TrainedGenerator fit_vgae(const Corpus& real, const AutoencoderConfig& config, std::string id = "vgae");
TrainedGenerator fit_graphite(const Corpus& real, const AutoencoderConfig& config,
                              std::string id = "graphite");
TrainedGenerator fit_graphrnn_s(const Corpus& real, const GraphRnnConfig& config,
                                std::string id = "graphrnn_s");

void save_generator(const std::filesystem::path& path, const TrainedGenerator& gen);
TrainedGenerator load_generator(const std::filesystem::path& path);

}  // namespace ggd::gen
