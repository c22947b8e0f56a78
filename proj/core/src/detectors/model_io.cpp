#include "ggd/detectors/model_io.hpp"

#include <json.hpp>

#include "ggd/corpus_io.hpp"
#include "ggd/error.hpp"
#include "ggd/nn/weights.hpp"
#include "ggd/parallel.hpp"

namespace ggd::detect {

using json = nlohmann::ordered_json;
using nn::Matrix;

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::EndToEnd: return "e2e";
        case ModelKind::Contrastive: return "contrastive";
        case ModelKind::Metric: return "metric";
        case ModelKind::Feature: return "feature";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view text) {
    for (auto k : {ModelKind::EndToEnd, ModelKind::Contrastive, ModelKind::Metric, ModelKind::Feature}) {
        if (to_string(k) == text) return k;
    }
    throw ConfigError("unknown model '" + std::string(text) + "' (expected e2e, contrastive, metric or feature)");
}

ModelKind kind_of(const DetectorModel& model) noexcept { return static_cast<ModelKind>(model.index()); }

DetectorModel train_model(ModelKind kind, const Corpus& train, const DetectorConfig& config) {
    switch (kind) {
        case ModelKind::EndToEnd: return train_end_to_end(train, config);
        case ModelKind::Contrastive: return train_contrastive(train, config);
        case ModelKind::Metric: return train_metric(train, config);
        case ModelKind::Feature: return train_feature_classifier(train, config);
    }
    throw ConfigError("unknown model kind");
}

namespace {
Prediction predict_direct(const DetectorModel& model, const Graph& g) {
    return std::visit(
        [&](const auto& mdl) -> Prediction {
            using T = std::decay_t<decltype(mdl)>;
            if constexpr (std::is_same_v<T, EndToEndModel>) return predict_end_to_end(mdl, g);
            else if constexpr (std::is_same_v<T, ContrastiveModel>) return predict_contrastive(mdl, g);
            else if constexpr (std::is_same_v<T, FeatureModel>) return predict_feature(mdl, g);
            else throw ArgumentError("the metric model needs a reference bank");
        },
        model);
}
}  // namespace

Prediction predict(const DetectorModel& model, const Graph& g, std::uint64_t seed) {
    if (const auto* m = std::get_if<MetricModel>(&model)) {
        return metric_predict(*m, make_reference_bank(*m, m->references), g, m->config.n_k, seed);
    }
    return predict_direct(model, g);
}

std::vector<Prediction> predict_corpus(const DetectorModel& model, const Corpus& corpus, std::uint64_t seed) {
    std::vector<Prediction> out(corpus.size());
    if (const auto* m = std::get_if<MetricModel>(&model)) {
        const auto bank = make_reference_bank(*m, m->references);
        parallel_for(corpus.size(), [&](std::size_t i) {
            out[i] = metric_predict(*m, bank, corpus[i].graph, m->config.n_k, derive_seed(seed, i));
        });
        return out;
    }
    parallel_for(corpus.size(), [&](std::size_t i) { out[i] = predict_direct(model, corpus[i].graph); });
    return out;
}

Matrix embed_graph(const DetectorModel& model, const Graph& g) {
    return std::visit(
        [&](const auto& mdl) -> Matrix {
            using T = std::decay_t<decltype(mdl)>;
            if constexpr (std::is_same_v<T, FeatureModel>) {
                throw ArgumentError("the feature baseline has no graph embedding");
            } else {
                return mdl.encoder.embed(g);
            }
        },
        model);
}

namespace {

constexpr std::string_view kFileKind = "detector";

void add(nn::ParamList& list, const std::string& name, Matrix& m) { list.push_back({name, &m}); }

struct Bundle {
    nn::ParamList params;
    json meta;
};

Bundle bundle_of(DetectorModel& model, Matrix* scaler_tensors) {
    Bundle b;
    b.meta["model"] = std::string(to_string(kind_of(model)));
    std::visit(
        [&](auto& mdl) {
            using T = std::decay_t<decltype(mdl)>;
            b.meta["config"] = json::parse(config_to_json(mdl.config));
            b.meta["training_log"] = mdl.training_log;
            if constexpr (std::is_same_v<T, EndToEndModel>) {
                b.params = mdl.params();
            } else if constexpr (std::is_same_v<T, ContrastiveModel>) {
                mdl.encoder.collect(b.params, "encoder");
                add(b.params, "classifier.center", mdl.classifier.center);
                add(b.params, "classifier.scale", mdl.classifier.scale);
                mdl.classifier.collect(b.params, "classifier");
            } else if constexpr (std::is_same_v<T, MetricModel>) {
                b.params = mdl.params();
                json refs = json::array();
                for (const auto& item : mdl.references) refs.push_back(json::parse(to_jsonl_line(item)));
                b.meta["references"] = refs;
            } else {
                b.params = mdl.params();
                add(b.params, "scaler.mean", scaler_tensors[0]);
                add(b.params, "scaler.std", scaler_tensors[1]);
            }
        },
        model);
    return b;
}

Matrix to_row(const stats::FeatureVector& v) {
    Matrix m(1, static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) m(0, static_cast<Eigen::Index>(k)) = static_cast<nn::Real>(v[k]);
    return m;
}

stats::FeatureVector from_row(const Matrix& m) {
    if (m.size() != static_cast<Eigen::Index>(stats::kFeatureCount)) throw ParseError("scaler tensor has wrong size");
    stats::FeatureVector v{};
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(m(0, static_cast<Eigen::Index>(k)));
    return v;
}

}  // namespace

std::string encode_model(const DetectorModel& model) {
    DetectorModel copy = model;
    Matrix scaler[2];
    if (const auto* f = std::get_if<FeatureModel>(&model)) {
        scaler[0] = to_row(f->scaler.mean());
        scaler[1] = to_row(f->scaler.stddev());
    }
    auto b = bundle_of(copy, scaler);
    return nn::encode_weights(nn::snapshot(std::string(kFileKind), b.params, b.meta.dump(), nn::BlobType::F64));
}

DetectorModel decode_model(std::string_view bytes) {
    const auto file = nn::decode_weights(bytes);
    if (file.kind != kFileKind) throw ParseError("not a detector model file (kind '" + file.kind + "')");
    try {
        const json meta = json::parse(file.meta_json);
        const auto kind = parse_model_kind(meta.at("model").get<std::string>());
        const auto config = config_from_json(meta.at("config").dump());
        const auto log = meta.at("training_log").get<std::vector<double>>();
        Rng rng(0);
        DetectorModel model;
        switch (kind) {
            case ModelKind::EndToEnd: {
                auto m = EndToEndModel::init(config);
                nn::restore(file, m.params());
                m.training_log = log;
                model = std::move(m);
                break;
            }
            case ModelKind::Contrastive: {
                ContrastiveModel m;
                m.config = config;
                m.encoder = GcnEncoder::init(config.encoder, rng);
                m.classifier.center = file.tensor("classifier.center");
                m.classifier.scale = file.tensor("classifier.scale");
                m.classifier.weight = file.tensor("classifier.weight");
                m.classifier.bias = file.tensor("classifier.bias");
                nn::ParamList params;
                m.encoder.collect(params, "encoder");
                nn::restore(file, params);
                m.training_log = log;
                model = std::move(m);
                break;
            }
            case ModelKind::Metric: {
                auto m = MetricModel::init(config);
                nn::restore(file, m.params());
                for (const auto& r : meta.at("references")) m.references.items.push_back(from_jsonl_line(r.dump()));
                m.references.seed = config.seed;
                m.training_log = log;
                model = std::move(m);
                break;
            }
            case ModelKind::Feature: {
                FeatureModel m;
                m.config = config;
                m.mlp = nn::Mlp::init(static_cast<Eigen::Index>(stats::kFeatureCount),
                                      static_cast<Eigen::Index>(config.feature_hidden), 2, rng);
                nn::restore(file, m.params());
                m.scaler = stats::FeatureScaler::from_moments(from_row(file.tensor("scaler.mean")),
                                                              from_row(file.tensor("scaler.std")));
                m.training_log = log;
                model = std::move(m);
                break;
            }
        }
        return model;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed detector metadata: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const DetectorModel& model) {
    write_file_atomic(path, encode_model(model));
}

DetectorModel load_model(const std::filesystem::path& path) { return decode_model(read_file(path)); }

}  // namespace ggd::detect
