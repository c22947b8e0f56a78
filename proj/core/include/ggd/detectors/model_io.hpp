#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ggd/detectors/contrastive.hpp"
#include "ggd/detectors/end_to_end.hpp"
#include "ggd/detectors/feature_model.hpp"
#include "ggd/detectors/metric.hpp"

namespace ggd::detect {

enum class ModelKind { EndToEnd, Contrastive, Metric, Feature };

// "e2e", "contrastive", "metric", "feature"
std::string_view to_string(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view text);

using DetectorModel = std::variant<EndToEndModel, ContrastiveModel, MetricModel, FeatureModel>;

ModelKind kind_of(const DetectorModel& model) noexcept;
DetectorModel train_model(ModelKind kind, const Corpus& train, const DetectorConfig& config);

Prediction predict(const DetectorModel& model, const Graph& g, std::uint64_t seed = 0);
// Predictions for every graph, computed in parallel. The metric model draws
// the references of graph i with derive_seed(seed, i).
std::vector<Prediction> predict_corpus(const DetectorModel& model, const Corpus& corpus, std::uint64_t seed = 0);

// Pre-classifier graph embedding; ArgumentError for the feature baseline,
// which has none.
nn::Matrix embed_graph(const DetectorModel& model, const Graph& g);

std::string encode_model(const DetectorModel& model);
DetectorModel decode_model(std::string_view bytes);
void save_model(const std::filesystem::path& path, const DetectorModel& model);
DetectorModel load_model(const std::filesystem::path& path);

}  // namespace ggd::detect
