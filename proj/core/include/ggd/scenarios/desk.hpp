#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ggd/scenarios/matrix.hpp"

namespace ggd::scen {

// Synthetic stand-ins for real datasets. Node counts are uniform in [20, 40].
//   ws_family         Watts-Strogatz, k = 4, beta = 0.1
//   partition_family  two planted blocks, p_in = 0.3, p_out = 0.05
Corpus ws_family(std::size_t count, std::uint64_t seed, const std::string& id = "ws_family");
Corpus partition_family(std::size_t count, std::uint64_t seed, const std::string& id = "partition_family");
bool is_builtin_family(const std::string& name);

// Dataset root from the GGD_DATA_DIR environment variable.
std::optional<std::filesystem::path> data_dir_from_env();
bool dataset_available(const std::string& name, const std::optional<std::filesystem::path>& data_dir);

// A built-in family (generated with a seed fixed per family name, so the
// "real" data never changes between experiment seeds) or the TUDataset
// directory data_dir/name. count > 0 generates that many family graphs or
// subsamples a TUDataset corpus to at most that many.
Corpus load_dataset(const std::string& name, std::size_t count, const std::optional<std::filesystem::path>& data_dir);
RealCorpora load_real_corpora(const ExperimentSpec& spec, const std::optional<std::filesystem::path>& data_dir);

// Small offline profile: ws_family seen, partition_family unseen (plus AIDS
// when data_dir holds it), ER/BA/VGAE seen, Graphite/GraphRNN_S unseen.
ExperimentSpec desk_profile(const std::optional<std::filesystem::path>& data_dir = std::nullopt);
// Full-size settings over TUDataset corpora found under GGD_DATA_DIR.
ExperimentSpec paper_profile();
ExperimentSpec profile_by_name(const std::string& name, const std::optional<std::filesystem::path>& data_dir);

// Experiment JSON: {"profile": ..., "seeds": [...], "models": [...],
// "scenarios": [...], "seen_datasets": [...], "unseen_datasets": [...],
// "seen_generators": [spec...], "unseen_generators": [spec...],
// "train_fraction", "keep_fraction", "test_per_class", "generator_fit_cap",
// "reals_per_dataset", "record_time", "detector": {...}}. Keys that are
// absent keep the values of the named profile (desk by default).
std::string experiment_to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_from_json(const std::string& text, const std::optional<std::filesystem::path>& data_dir);

}  // namespace ggd::scen
