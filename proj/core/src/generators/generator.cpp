#include "ggd/generators/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "ggd/error.hpp"
#include "ggd/generators/traditional.hpp"
#include "ggd/nn/weights.hpp"
#include "ggd/parallel.hpp"

namespace ggd::gen {

using json = nlohmann::ordered_json;

std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::ER: return "ER";
        case GeneratorKind::BA: return "BA";
        case GeneratorKind::WS: return "WS";
        case GeneratorKind::VGAE: return "VGAE";
        case GeneratorKind::Graphite: return "Graphite";
        case GeneratorKind::GraphRNN_S: return "GraphRNN_S";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& text) {
    for (auto k : {GeneratorKind::ER, GeneratorKind::BA, GeneratorKind::WS, GeneratorKind::VGAE,
                   GeneratorKind::Graphite, GeneratorKind::GraphRNN_S}) {
        if (to_string(k) == text) return k;
    }
    throw ConfigError("unknown generator kind '" + text + "'");
}

bool is_neural(GeneratorKind kind) noexcept {
    return kind == GeneratorKind::VGAE || kind == GeneratorKind::Graphite || kind == GeneratorKind::GraphRNN_S;
}

std::optional<double> GeneratorSpec::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

namespace {

const std::set<std::string>& allowed_params(GeneratorKind kind) {
    static const std::set<std::string> er{"p", "m", "n"};
    static const std::set<std::string> ba{"m", "n"};
    static const std::set<std::string> ws{"k", "beta", "n"};
    static const std::set<std::string> vgae{"latent_dim", "hidden_dim", "epochs", "batch_size", "lr"};
    static const std::set<std::string> graphite{"latent_dim", "hidden_dim", "epochs", "batch_size", "lr", "rounds"};
    static const std::set<std::string> rnn{"hidden_dim", "epochs", "batch_size", "lr"};
    switch (kind) {
        case GeneratorKind::ER: return er;
        case GeneratorKind::BA: return ba;
        case GeneratorKind::WS: return ws;
        case GeneratorKind::VGAE: return vgae;
        case GeneratorKind::Graphite: return graphite;
        case GeneratorKind::GraphRNN_S: return rnn;
    }
    return er;
}

std::size_t as_count(double v) { return static_cast<std::size_t>(std::llround(v)); }

bool is_whole(double v) { return v >= 0 && std::floor(v) == v; }

AutoencoderConfig autoencoder_config(const GeneratorSpec& spec) {
    AutoencoderConfig c;
    c.seed = spec.seed;
    if (auto v = spec.param("latent_dim")) c.latent_dim = as_count(*v);
    if (auto v = spec.param("hidden_dim")) c.hidden_dim = as_count(*v);
    if (auto v = spec.param("epochs")) c.epochs = as_count(*v);
    if (auto v = spec.param("batch_size")) c.batch_size = as_count(*v);
    if (auto v = spec.param("lr")) c.lr = *v;
    c.refinement_rounds = spec.kind == GeneratorKind::Graphite ? 2 : 0;
    if (auto v = spec.param("rounds")) c.refinement_rounds = as_count(*v);
    return c;
}

GraphRnnConfig graphrnn_config(const GeneratorSpec& spec) {
    GraphRnnConfig c;
    c.seed = spec.seed;
    if (auto v = spec.param("hidden_dim")) c.hidden_dim = as_count(*v);
    if (auto v = spec.param("epochs")) c.epochs = as_count(*v);
    if (auto v = spec.param("batch_size")) c.batch_size = as_count(*v);
    if (auto v = spec.param("lr")) c.lr = *v;
    return c;
}

double mean_of(const Corpus& c, double (*f)(const Graph&)) {
    double s = 0.0;
    for (const auto& item : c) s += f(item.graph);
    return s / static_cast<double>(c.size());
}

}  // namespace

void GeneratorSpec::validate() const {
    if (id.empty()) throw ConfigError("generator id must not be empty");
    const auto& allowed = allowed_params(kind);
    for (const auto& [key, value] : params) {
        if (!allowed.contains(key)) {
            throw ConfigError("parameter '" + key + "' is not valid for generator kind " + to_string(kind));
        }
        if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
    }
    auto check = [&](const char* key, bool ok, const char* rule) {
        if (auto v = param(key); v && !ok) throw ConfigError(std::string(key) + " " + rule);
    };
    const auto p = [&](const char* key) { return param(key).value_or(0.0); };
    check("p", p("p") >= 0 && p("p") <= 1, "must lie in [0, 1]");
    check("beta", p("beta") >= 0 && p("beta") <= 1, "must lie in [0, 1]");
    check("n", is_whole(p("n")) && p("n") >= 1, "must be a positive integer");
    check("m", is_whole(p("m")) && (kind == GeneratorKind::ER || p("m") >= 1), "must be a valid integer");
    check("k", is_whole(p("k")) && as_count(p("k")) % 2 == 0, "must be an even integer");
    check("latent_dim", is_whole(p("latent_dim")) && p("latent_dim") >= 1, "must be a positive integer");
    check("hidden_dim", is_whole(p("hidden_dim")) && p("hidden_dim") >= 1, "must be a positive integer");
    check("epochs", is_whole(p("epochs")), "must be a non-negative integer");
    check("batch_size", is_whole(p("batch_size")) && p("batch_size") >= 1, "must be a positive integer");
    check("lr", p("lr") > 0, "must be positive");
    check("rounds", is_whole(p("rounds")), "must be a non-negative integer");
    if (param("p") && param("m")) throw ConfigError("ER takes either p or m, not both");
}

std::string spec_to_json(const GeneratorSpec& spec) {
    json j;
    j["id"] = spec.id;
    j["kind"] = to_string(spec.kind);
    j["params"] = json::object();
    for (const auto& [k, v] : spec.params) j["params"][k] = v;
    j["seed"] = spec.seed;
    return j.dump();
}

GeneratorSpec spec_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        GeneratorSpec spec;
        spec.id = j.at("id").get<std::string>();
        spec.kind = parse_generator_kind(j.at("kind").get<std::string>());
        if (j.contains("params")) {
            for (const auto& [k, v] : j.at("params").items()) spec.params[k] = v.get<double>();
        }
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid generator spec: ") + e.what());
    }
}

std::size_t TrainedGenerator::parameter_count() const {
    if (autoencoder) return nn::parameter_count(const_cast<GraphAutoencoder&>(*autoencoder).params());
    if (rnn) return nn::parameter_count(const_cast<GraphRnnModel&>(*rnn).params());
    return resolved.size();
}

Graph TrainedGenerator::sample_one(std::uint64_t sample_seed) const {
    Rng rng(sample_seed);
    std::size_t n = 0;
    if (auto fixed = spec.param("n")) {
        n = as_count(*fixed);
    } else {
        n = node_sampler.sample(rng);
    }
    const std::uint64_t inner = derive_seed(sample_seed, 1);
    switch (spec.kind) {
        case GeneratorKind::ER: {
            if (auto m = resolved.find("m"); m != resolved.end()) {
                return er_generate_m(n, std::min(as_count(m->second), n * (n - 1) / 2), inner);
            }
            return er_generate_p(n, resolved.at("p"), inner);
        }
        case GeneratorKind::BA: {
            if (n < 2) return Graph(n, {});
            return ba_generate(n, std::min(as_count(resolved.at("m")), n - 1), inner);
        }
        case GeneratorKind::WS: {
            std::size_t k = as_count(resolved.at("k"));
            const std::size_t max_k = n >= 1 ? ((n - 1) / 2) * 2 : 0;
            k = std::min(k, max_k);
            return ws_generate(n, k, resolved.at("beta"), inner);
        }
        case GeneratorKind::VGAE:
        case GeneratorKind::Graphite: return autoencoder->sample(n, rng);
        case GeneratorKind::GraphRNN_S: return rnn->sample(n, rng);
    }
    throw ConfigError("unknown generator kind");
}

TrainedGenerator fit_generator(const GeneratorSpec& spec, const Corpus& reference) {
    spec.validate();
    TrainedGenerator gen;
    gen.spec = spec;
    if (!reference.empty()) {
        gen.node_sampler = NodeCountSampler::from_corpus(reference);
        gen.dataset_id = reference[0].dataset_id;
    } else if (is_neural(spec.kind) || !spec.param("n")) {
        throw ConfigError("generator '" + spec.id + "' needs a reference corpus or a fixed n");
    } else {
        gen.dataset_id = "synthetic";
    }

    auto fitted = [&](const char* key, auto fit) {
        if (auto v = spec.param(key)) return *v;
        if (reference.empty()) throw ConfigError(std::string("cannot fit '") + key + "' without a reference corpus");
        return static_cast<double>(fit());
    };
    switch (spec.kind) {
        case GeneratorKind::ER:
            if (auto m = spec.param("m")) {
                gen.resolved["m"] = *m;
            } else {
                gen.resolved["p"] = fitted("p", [&] {
                    return mean_of(reference, [](const Graph& g) {
                        const auto n = static_cast<double>(g.node_count());
                        return n >= 2 ? 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1)) : 0.0;
                    });
                });
            }
            break;
        case GeneratorKind::BA:
            gen.resolved["m"] = fitted("m", [&] {
                const double edges = mean_of(reference, [](const Graph& g) { return static_cast<double>(g.edge_count()); });
                const double nodes = mean_of(reference, [](const Graph& g) { return static_cast<double>(g.node_count()); });
                return std::max<double>(1.0, std::round(edges / nodes));
            });
            break;
        case GeneratorKind::WS:
            gen.resolved["k"] = fitted("k", [&] {
                const double degree = mean_of(reference, [](const Graph& g) {
                    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
                });
                return std::max(2.0, 2.0 * std::round(degree / 2.0));
            });
            gen.resolved["beta"] = spec.param("beta").value_or(0.3);
            break;
        case GeneratorKind::VGAE:
        case GeneratorKind::Graphite: {
            const auto config = autoencoder_config(spec);
            Rng rng(derive_seed(spec.seed, 0x696e6974ULL));
            gen.autoencoder = GraphAutoencoder::init(config, config.max_degree_bucket + 1, rng);
            gen.training_log = train_autoencoder(*gen.autoencoder, reference, config);
            break;
        }
        case GeneratorKind::GraphRNN_S:
            gen.rnn = fit_graphrnn_model(reference, graphrnn_config(spec), &gen.training_log);
            break;
    }
    return gen;
}

Corpus sample_generator(const TrainedGenerator& gen, std::size_t count, std::uint64_t seed,
                        std::size_t first_index) {
    Corpus out;
    out.seed = seed;
    out.items.resize(count);
    parallel_for(count, [&](std::size_t i) {
        const std::size_t index = first_index + i;
        out.items[i] = make_generated(gen.sample_one(derive_seed(seed, index)), gen.dataset_id, gen.spec.id,
                                      static_cast<std::int64_t>(index));
    });
    return out;
}

namespace {
GeneratorSpec neural_spec(std::string id, GeneratorKind kind, const AutoencoderConfig& c) {
    GeneratorSpec spec;
    spec.id = std::move(id);
    spec.kind = kind;
    spec.seed = c.seed;
    spec.params = {{"latent_dim", static_cast<double>(c.latent_dim)},
                   {"hidden_dim", static_cast<double>(c.hidden_dim)},
                   {"epochs", static_cast<double>(c.epochs)},
                   {"batch_size", static_cast<double>(c.batch_size)},
                   {"lr", c.lr}};
    if (kind == GeneratorKind::Graphite) spec.params["rounds"] = static_cast<double>(c.refinement_rounds);
    return spec;
}
}  // namespace

TrainedGenerator fit_vgae(const Corpus& real, const AutoencoderConfig& config, std::string id) {
    return fit_generator(neural_spec(std::move(id), GeneratorKind::VGAE, config), real);
}

TrainedGenerator fit_graphite(const Corpus& real, const AutoencoderConfig& config, std::string id) {
    return fit_generator(neural_spec(std::move(id), GeneratorKind::Graphite, config), real);
}

TrainedGenerator fit_graphrnn_s(const Corpus& real, const GraphRnnConfig& config, std::string id) {
    GeneratorSpec spec;
    spec.id = std::move(id);
    spec.kind = GeneratorKind::GraphRNN_S;
    spec.seed = config.seed;
    spec.params = {{"hidden_dim", static_cast<double>(config.hidden_dim)},
                   {"epochs", static_cast<double>(config.epochs)},
                   {"batch_size", static_cast<double>(config.batch_size)},
                   {"lr", config.lr}};
    return fit_generator(spec, real);
}

void save_generator(const std::filesystem::path& path, const TrainedGenerator& gen) {
    json meta;
    meta["spec"] = json::parse(spec_to_json(gen.spec));
    meta["dataset"] = gen.dataset_id;
    meta["resolved"] = json::object();
    for (const auto& [k, v] : gen.resolved) meta["resolved"][k] = v;
    meta["node_counts"] = gen.node_sampler.observed();
    meta["training_log"] = gen.training_log;
    nn::ParamList params;
    auto copy = gen;
    if (copy.autoencoder) params = copy.autoencoder->params();
    if (copy.rnn) {
        params = copy.rnn->params();
        meta["width"] = copy.rnn->width;
    }
    nn::save_weights(path, nn::snapshot("generator", params, meta.dump(), nn::BlobType::F32));
}

TrainedGenerator load_generator(const std::filesystem::path& path) {
    const auto file = nn::load_weights(path);
    if (file.kind != "generator") throw ParseError(path.string() + " is not a generator file");
    try {
        const json meta = json::parse(file.meta_json);
        TrainedGenerator gen;
        gen.spec = spec_from_json(meta.at("spec").dump());
        gen.dataset_id = meta.at("dataset").get<std::string>();
        for (const auto& [k, v] : meta.at("resolved").items()) gen.resolved[k] = v.get<double>();
        gen.node_sampler = NodeCountSampler(meta.at("node_counts").get<std::vector<std::size_t>>());
        gen.training_log = meta.at("training_log").get<std::vector<double>>();
        Rng rng(0);
        if (gen.spec.kind == GeneratorKind::VGAE || gen.spec.kind == GeneratorKind::Graphite) {
            AutoencoderConfig c;
            const auto& w1 = file.tensor("encoder.hidden.weight");
            c.hidden_dim = static_cast<std::size_t>(w1.cols());
            c.latent_dim = static_cast<std::size_t>(file.tensor("encoder.mean.weight").cols());
            c.refinement_rounds = 0;
            for (const auto& t : file.tensors) {
                if (t.name.starts_with("decoder.refine.")) ++c.refinement_rounds;
            }
            gen.autoencoder = GraphAutoencoder::init(c, static_cast<std::size_t>(w1.rows()), rng);
            nn::restore(file, gen.autoencoder->params());
        } else if (gen.spec.kind == GeneratorKind::GraphRNN_S) {
            const auto hidden = static_cast<std::size_t>(file.tensor("gru.hidden_weight").rows());
            gen.rnn = GraphRnnModel::init(meta.at("width").get<std::size_t>(), hidden, rng);
            nn::restore(file, gen.rnn->params());
        }
        return gen;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed generator metadata: ") + e.what());
    }
}

}  // namespace ggd::gen
