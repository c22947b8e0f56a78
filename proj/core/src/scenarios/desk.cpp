#include "ggd/scenarios/desk.hpp"

#include <cstdlib>
#include <set>

#include <json.hpp>

#include "ggd/corpus_io.hpp"
#include "ggd/error.hpp"
#include "ggd/generators/traditional.hpp"
#include "ggd/random.hpp"

namespace ggd::scen {

using json = nlohmann::ordered_json;

namespace {

constexpr std::int64_t kMinNodes = 20;
constexpr std::int64_t kMaxNodes = 40;

template <typename Make>
Corpus family(std::size_t count, std::uint64_t seed, const std::string& id, Make make) {
    Corpus out;
    out.seed = seed;
    out.items.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        Rng rng(s);
        const auto n = static_cast<std::size_t>(rng.range(kMinNodes, kMaxNodes));
        out.items[i] = make_real(make(n, derive_seed(s, 1)), id, static_cast<std::int64_t>(i));
    }
    return out;
}

std::uint64_t family_seed(const std::string& name) { return derive_seed(hash_string(name), 0x66616dULL); }

}  // namespace

Corpus ws_family(std::size_t count, std::uint64_t seed, const std::string& id) {
    return family(count, seed, id, [](std::size_t n, std::uint64_t s) { return gen::ws_generate(n, 4, 0.1, s); });
}

Corpus partition_family(std::size_t count, std::uint64_t seed, const std::string& id) {
    return family(count, seed, id, [](std::size_t n, std::uint64_t s) {
        Rng rng(s);
        const std::size_t half = n / 2;
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                const bool same_block = (u < half) == (v < half);
                if (rng.bernoulli(same_block ? 0.3 : 0.05)) {
                    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
                }
            }
        }
        return Graph(n, std::move(edges));
    });
}

bool is_builtin_family(const std::string& name) { return name == "ws_family" || name == "partition_family"; }

std::optional<std::filesystem::path> data_dir_from_env() {
    const char* dir = std::getenv("GGD_DATA_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

bool dataset_available(const std::string& name, const std::optional<std::filesystem::path>& data_dir) {
    if (is_builtin_family(name)) return true;
    return data_dir && std::filesystem::exists(*data_dir / name / (name + "_A.txt"));
}

Corpus load_dataset(const std::string& name, std::size_t count, const std::optional<std::filesystem::path>& data_dir) {
    if (name == "ws_family") return ws_family(count, family_seed(name), name);
    if (name == "partition_family") return partition_family(count, family_seed(name), name);
    if (!data_dir) throw IoError("dataset '" + name + "' is not built in and GGD_DATA_DIR is not set");
    Corpus all = parse_tudataset(*data_dir / name);
    if (count == 0 || all.size() <= count) return all;
    Rng rng(family_seed(name));
    Corpus out;
    out.seed = all.seed;
    for (auto i : rng.choose(all.size(), count)) out.items.push_back(all[i]);
    return out;
}

RealCorpora load_real_corpora(const ExperimentSpec& spec, const std::optional<std::filesystem::path>& data_dir) {
    RealCorpora out;
    for (const auto* list : {&spec.scenario.seen_datasets, &spec.scenario.unseen_datasets}) {
        for (const auto& name : *list) out.emplace(name, load_dataset(name, spec.reals_per_dataset, data_dir));
    }
    return out;
}

namespace {
gen::GeneratorSpec make_spec(std::string id, gen::GeneratorKind kind, std::map<std::string, double> params) {
    gen::GeneratorSpec s;
    s.id = std::move(id);
    s.kind = kind;
    s.params = std::move(params);
    return s;
}
}  // namespace

ExperimentSpec desk_profile(const std::optional<std::filesystem::path>& data_dir) {
    using gen::GeneratorKind;
    ExperimentSpec spec;
    spec.profile = "desk";
    spec.reals_per_dataset = 2000;
    auto& sc = spec.scenario;
    sc.seen_datasets = {"ws_family"};
    sc.unseen_datasets = {"partition_family"};
    if (dataset_available("AIDS", data_dir)) sc.unseen_datasets.push_back("AIDS");
    const std::map<std::string, double> autoencoder{
        {"latent_dim", 16}, {"hidden_dim", 32}, {"epochs", 30}, {"batch_size", 16}, {"lr", 0.01}};
    auto graphite = autoencoder;
    graphite["rounds"] = 2;
    sc.seen_generators = {make_spec("er", GeneratorKind::ER, {}), make_spec("ba", GeneratorKind::BA, {}),
                          make_spec("vgae", GeneratorKind::VGAE, autoencoder)};
    sc.unseen_generators = {
        make_spec("graphite", GeneratorKind::Graphite, graphite),
        make_spec("graphrnn_s", GeneratorKind::GraphRNN_S,
                  {{"hidden_dim", 32}, {"epochs", 30}, {"batch_size", 16}, {"lr", 0.003}})};
    sc.test_per_class = 400;
    sc.generator_fit_cap = 200;

    auto& d = spec.detector;
    d.encoder.widths = {32, 32, 32, detect::kEmbeddingWidth};
    d.epochs = 30;
    d.contrastive_epochs = 20;
    d.classifier_epochs = 300;
    d.pair_epochs = 1;
    d.feature_epochs = 30;
    d.projection_hidden = 64;
    return spec;
}

ExperimentSpec paper_profile() {
    using gen::GeneratorKind;
    ExperimentSpec spec;
    spec.profile = "paper";
    spec.reals_per_dataset = 0;
    auto& sc = spec.scenario;
    sc.seen_datasets = {"AIDS", "Alchemy", "deezer_ego_nets", "DBLP_v1", "github_stargazers"};
    sc.unseen_datasets = {"COLLAB", "twitch_egos"};
    sc.seen_generators = {make_spec("er", GeneratorKind::ER, {}), make_spec("ba", GeneratorKind::BA, {}),
                          make_spec("vgae", GeneratorKind::VGAE, {}),
                          make_spec("graphite", GeneratorKind::Graphite, {})};
    sc.unseen_generators = {make_spec("graphrnn_s", GeneratorKind::GraphRNN_S, {}),
                            make_spec("ws", GeneratorKind::WS, {})};
    sc.test_per_class = 2000;
    return spec;
}

ExperimentSpec profile_by_name(const std::string& name, const std::optional<std::filesystem::path>& data_dir) {
    if (name == "desk") return desk_profile(data_dir);
    if (name == "paper") return paper_profile();
    throw ConfigError("unknown profile '" + name + "' (expected desk or paper)");
}

std::string experiment_to_json(const ExperimentSpec& spec) {
    json j;
    j["profile"] = spec.profile;
    j["seeds"] = spec.seeds;
    j["models"] = json::array();
    for (auto m : spec.models) j["models"].push_back(std::string(detect::to_string(m)));
    j["scenarios"] = json::array();
    for (auto s : spec.scenarios) j["scenarios"].push_back(std::string(to_string(s)));
    j["seen_datasets"] = spec.scenario.seen_datasets;
    j["unseen_datasets"] = spec.scenario.unseen_datasets;
    for (const auto* key : {"seen_generators", "unseen_generators"}) {
        const auto& list = std::string(key) == "seen_generators" ? spec.scenario.seen_generators
                                                                  : spec.scenario.unseen_generators;
        j[key] = json::array();
        for (const auto& g : list) j[key].push_back(json::parse(gen::spec_to_json(g)));
    }
    j["train_fraction"] = spec.scenario.train_fraction;
    j["keep_fraction"] = spec.scenario.keep_fraction;
    j["test_per_class"] = spec.scenario.test_per_class;
    j["generator_fit_cap"] = spec.scenario.generator_fit_cap;
    j["reals_per_dataset"] = spec.reals_per_dataset;
    j["record_time"] = spec.record_time;
    j["detector"] = json::parse(detect::config_to_json(spec.detector));
    return j.dump(2);
}

ExperimentSpec experiment_from_json(const std::string& text, const std::optional<std::filesystem::path>& data_dir) {
    try {
        const json j = json::parse(text);
        if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
        static const std::set<std::string> known{
            "profile", "seeds", "models", "scenarios", "seen_datasets", "unseen_datasets", "seen_generators",
            "unseen_generators", "train_fraction", "keep_fraction", "test_per_class", "generator_fit_cap",
            "reals_per_dataset", "record_time", "detector"};
        for (const auto& [key, value] : j.items()) {
            if (!known.contains(key)) throw ConfigError("unknown experiment setting '" + key + "'");
        }
        ExperimentSpec spec = profile_by_name(j.value("profile", std::string("desk")), data_dir);
        if (j.contains("seeds")) spec.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
        if (j.contains("models")) {
            spec.models.clear();
            for (const auto& m : j["models"]) spec.models.push_back(detect::parse_model_kind(m.get<std::string>()));
        }
        if (j.contains("scenarios")) {
            spec.scenarios.clear();
            for (const auto& s : j["scenarios"]) spec.scenarios.push_back(parse_scenario_kind(s.get<std::string>()));
        }
        auto& sc = spec.scenario;
        if (j.contains("seen_datasets")) sc.seen_datasets = j["seen_datasets"].get<std::vector<std::string>>();
        if (j.contains("unseen_datasets")) sc.unseen_datasets = j["unseen_datasets"].get<std::vector<std::string>>();
        for (const auto* key : {"seen_generators", "unseen_generators"}) {
            if (!j.contains(key)) continue;
            auto& list = std::string(key) == "seen_generators" ? sc.seen_generators : sc.unseen_generators;
            list.clear();
            for (const auto& g : j[key]) list.push_back(gen::spec_from_json(g.dump()));
        }
        if (j.contains("train_fraction")) sc.train_fraction = j["train_fraction"].get<double>();
        if (j.contains("keep_fraction")) sc.keep_fraction = j["keep_fraction"].get<double>();
        if (j.contains("test_per_class")) sc.test_per_class = j["test_per_class"].get<std::size_t>();
        if (j.contains("generator_fit_cap")) sc.generator_fit_cap = j["generator_fit_cap"].get<std::size_t>();
        if (j.contains("reals_per_dataset")) spec.reals_per_dataset = j["reals_per_dataset"].get<std::size_t>();
        if (j.contains("record_time")) spec.record_time = j["record_time"].get<bool>();
        if (j.contains("detector")) spec.detector = detect::config_from_json(j["detector"].dump(), spec.detector);
        sc.validate();
        if (spec.seeds.empty()) throw ConfigError("at least one seed is required");
        return spec;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid experiment config: ") + e.what());
    }
}

}  // namespace ggd::scen
