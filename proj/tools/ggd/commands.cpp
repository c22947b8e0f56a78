#include "commands.hpp"

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ggd/corpus_io.hpp"
#include "ggd/detectors/embeddings.hpp"
#include "ggd/detectors/model_io.hpp"
#include "ggd/error.hpp"
#include "ggd/generators/generator.hpp"
#include "ggd/parallel.hpp"
#include "ggd/random.hpp"
#include "ggd/scenarios/attribution.hpp"
#include "ggd/scenarios/desk.hpp"
#include "ggd/scenarios/matrix.hpp"
#include "ggd/stats.hpp"

namespace ggd::cli {

using json = nlohmann::ordered_json;

namespace {

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) { write_file_atomic(path, content); }

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw ArgumentError("'" + part + "' is not a seed");
        }
    }
    if (out.empty()) throw ArgumentError("the seed list is empty");
    return out;
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw ArgumentError("'" + part + "' is not a number");
        }
    }
    if (out.empty()) throw ArgumentError("the value list is empty");
    return out;
}

detect::DetectorConfig base_detector(const GlobalOptions& g) {
    if (g.profile == "paper") return detect::DetectorConfig{};
    return scen::desk_profile().detector;
}

detect::DetectorConfig detector_config(const GlobalOptions& g, const std::string& path) {
    detect::DetectorConfig config = base_detector(g);
    if (!path.empty()) config = detect::config_from_json(read_file(path), config);
    config.seed = g.seed;
    config.validate();
    return config;
}

scen::ExperimentSpec experiment(const GlobalOptions& g, const std::string& path, const std::string& seeds) {
    const auto data_dir = scen::data_dir_from_env();
    scen::ExperimentSpec spec;
    if (path.empty()) {
        spec = scen::profile_by_name(g.profile, data_dir);
    } else {
        json j = json::parse(read_file(path), nullptr, false);
        if (j.is_discarded()) throw ConfigError("experiment config " + path + " is not valid JSON");
        if (!j.contains("profile")) j["profile"] = g.profile;
        spec = scen::experiment_from_json(j.dump(), data_dir);
    }
    if (!seeds.empty()) spec.seeds = parse_seed_list(seeds);
    return spec;
}

std::string metrics_json(const scen::Metrics& m) {
    json j;
    j["accuracy"] = m.accuracy;
    j["f1"] = m.f1;
    j["macro_f1"] = m.macro_f1;
    j["tp"] = m.confusion.tp;
    j["fp"] = m.confusion.fp;
    j["fn"] = m.confusion.fn;
    j["tn"] = m.confusion.tn;
    return j.dump(2) + "\n";
}

std::ostream* progress(const GlobalOptions& g) { return g.verbosity > 0 ? &std::cerr : nullptr; }

// --- import -----------------------------------------------------------------

void add_import(CLI::App& app, GlobalOptions&, Commands& commands) {
    struct Opts {
        std::string dir, out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("import", "Convert a TUDataset directory into a JSONL corpus");
    cmd->add_option("--tudataset", o->dir, "TUDataset directory holding <DS>_A.txt and <DS>_graph_indicator.txt")
        ->required();
    cmd->add_option("--out", o->out, "Output JSONL corpus")->required();
    commands.handlers["import"] = [o] {
        ParseStats stats;
        const Corpus c = parse_tudataset(o->dir, &stats);
        std::ostringstream out;
        write_jsonl(out, c);
        write_output(o->out, out.str());
        std::cerr << "imported " << c.size() << " graphs; dropped " << stats.self_loops_dropped << " self-loops and "
                  << stats.duplicate_edges_dropped << " duplicate edges\n";
    };
}

// --- generate ---------------------------------------------------------------

void add_generate(CLI::App& app, GlobalOptions& g, Commands& commands) {
    struct Opts {
        std::string kind, id, reference, out, model_in, model_out;
        std::vector<std::string> params;
        std::size_t count = 0;
        std::size_t first_index = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("generate", "Fit a generator and sample graphs from it");
    cmd->add_option("--kind", o->kind, "Generator kind: ER, BA, WS, VGAE, Graphite or GraphRNN_S");
    cmd->add_option("--id", o->id, "Generator id recorded on every sample (default: the kind in lower case)");
    cmd->add_option("--param", o->params, "Generator parameter KEY=VALUE; repeatable");
    cmd->add_option("--reference", o->reference, "JSONL corpus of real graphs to fit on");
    cmd->add_option("--count", o->count, "Number of graphs to sample")->required();
    cmd->add_option("--first-index", o->first_index, "Sample index of the first output graph")
        ->capture_default_str();
    cmd->add_option("--out", o->out, "Output JSONL corpus")->required();
    cmd->add_option("--model-in", o->model_in, "Load a fitted generator instead of fitting one");
    cmd->add_option("--model-out", o->model_out, "Save the fitted generator");
    commands.handlers["generate"] = [o, &g] {
        gen::TrainedGenerator trained;
        if (!o->model_in.empty()) {
            if (!o->kind.empty()) throw ArgumentError("--kind and --model-in are mutually exclusive");
            trained = gen::load_generator(o->model_in);
        } else {
            if (o->kind.empty()) throw ArgumentError("either --kind or --model-in is required");
            gen::GeneratorSpec spec;
            spec.kind = gen::parse_generator_kind(o->kind);
            spec.id = o->id;
            if (spec.id.empty()) {
                for (char c : o->kind) spec.id += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            spec.seed = g.seed;
            for (const auto& p : o->params) {
                const auto eq = p.find('=');
                if (eq == std::string::npos) throw ArgumentError("--param expects KEY=VALUE, got '" + p + "'");
                try {
                    spec.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
                } catch (const std::logic_error&) {
                    throw ArgumentError("parameter value in '" + p + "' is not a number");
                }
            }
            const Corpus reference = o->reference.empty() ? Corpus{} : read_jsonl(std::filesystem::path(o->reference));
            trained = gen::fit_generator(spec, reference);
        }
        if (!o->model_out.empty()) gen::save_generator(o->model_out, trained);
        const Corpus out = gen::sample_generator(trained, o->count, derive_seed(g.seed, 1), o->first_index);
        std::ostringstream text;
        write_jsonl(text, out);
        write_output(o->out, text.str());
    };
}

// --- stats / filter / mmd ---------------------------------------------------

void add_stats(CLI::App& app, GlobalOptions&, Commands& commands) {
    struct Opts {
        std::string in, out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("stats", "Compute the six statistical features of every graph");
    cmd->add_option("--in", o->in, "Input JSONL corpus")->required();
    cmd->add_option("--out", o->out, "Output CSV")->required();
    commands.handlers["stats"] = [o] {
        const Corpus c = read_jsonl(std::filesystem::path(o->in));
        const auto rows = stats::corpus_features(c);
        std::string out = "graph_id,num_nodes,num_edges,density,diameter,avg_clustering,transitivity\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out += std::to_string(i);
            for (double v : rows[i]) out += "," + number(v);
            out += '\n';
        }
        write_output(o->out, out);
    };
}

void add_filter(CLI::App& app, GlobalOptions&, Commands& commands) {
    struct Opts {
        std::string generated, real, out;
        double keep = 0.2;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("filter", "Keep the generated graphs closest to the real set");
    cmd->add_option("--generated", o->generated, "JSONL corpus of generated graphs")->required();
    cmd->add_option("--real", o->real, "JSONL corpus of real graphs")->required();
    cmd->add_option("--keep", o->keep, "Fraction of generated graphs to keep")->capture_default_str();
    cmd->add_option("--out", o->out, "Output JSONL corpus")->required();
    commands.handlers["filter"] = [o] {
        const Corpus kept = stats::knn_filter(read_jsonl(std::filesystem::path(o->generated)),
                                              read_jsonl(std::filesystem::path(o->real)), o->keep);
        std::ostringstream text;
        write_jsonl(text, kept);
        write_output(o->out, text.str());
    };
}

void add_mmd(CLI::App& app, GlobalOptions&, Commands& commands) {
    struct Opts {
        std::string first, second, out;
        double bandwidth = 0.0;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("mmd", "Gaussian-kernel MMD between two corpora over statistical features");
    cmd->add_option("--first", o->first, "First JSONL corpus")->required();
    cmd->add_option("--second", o->second, "Second JSONL corpus")->required();
    cmd->add_option("--bandwidth", o->bandwidth, "Kernel bandwidth; 0 uses the median heuristic")
        ->capture_default_str();
    cmd->add_option("--out", o->out, "Output JSON (default: standard output)");
    commands.handlers["mmd"] = [o] {
        const auto r = stats::mmd(read_jsonl(std::filesystem::path(o->first)), read_jsonl(std::filesystem::path(o->second)),
                                  o->bandwidth > 0 ? std::optional<double>(o->bandwidth) : std::nullopt);
        json j;
        j["mmd"] = r.value;
        j["bandwidth"] = r.bandwidth;
        j["bandwidth_fallback"] = r.bandwidth_fallback;
        const std::string text = j.dump(2) + "\n";
        if (o->out.empty()) {
            std::cout << text;
        } else {
            write_output(o->out, text);
        }
    };
}

// --- train / predict / embed ------------------------------------------------

void add_train(CLI::App& app, GlobalOptions& g, Commands& commands) {
    struct Opts {
        std::string model, train, config, out, log;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("train", "Train a detector on a labelled corpus");
    cmd->add_option("--model", o->model, "Detector: e2e, contrastive, metric or feature")->required();
    cmd->add_option("--train", o->train, "Labelled JSONL training corpus")->required();
    cmd->add_option("--config", o->config, "Detector settings JSON; absent keys keep the profile defaults");
    cmd->add_option("--out", o->out, "Output model file")->required();
    cmd->add_option("--log", o->log, "Per-epoch training loss CSV");
    commands.handlers["train"] = [o, &g] {
        const auto kind = detect::parse_model_kind(o->model);
        const auto config = detector_config(g, o->config);
        const auto model = detect::train_model(kind, read_jsonl(std::filesystem::path(o->train)), config);
        detect::save_model(o->out, model);
        if (!o->log.empty()) {
            const auto& log = std::visit([](const auto& m) -> const std::vector<double>& { return m.training_log; }, model);
            std::string text = "epoch,loss\n";
            for (std::size_t e = 0; e < log.size(); ++e) text += std::to_string(e) + "," + number(log[e]) + "\n";
            write_output(o->log, text);
        }
    };
}

void add_predict(CLI::App& app, GlobalOptions& g, Commands& commands) {
    struct Opts {
        std::string model, in, out, metrics_out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("predict", "Classify every graph of a corpus as real or generated");
    cmd->add_option("--model", o->model, "Model file written by train")->required();
    cmd->add_option("--in", o->in, "JSONL corpus to classify")->required();
    cmd->add_option("--out", o->out, "Output predictions CSV")->required();
    cmd->add_option("--metrics-out", o->metrics_out, "Accuracy/F1 JSON computed against the corpus labels");
    commands.handlers["predict"] = [o, &g] {
        const auto model = detect::load_model(o->model);
        const Corpus c = read_jsonl(std::filesystem::path(o->in));
        const auto predictions = detect::predict_corpus(model, c, g.seed);
        std::string text = "graph_id,truth,predicted,p_real,p_generated\n";
        std::vector<scen::Outcome> outcomes;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto& p = predictions[i];
            text += std::to_string(i) + "," + std::string(to_string(c[i].authenticity)) + "," +
                    std::string(to_string(p.label)) + "," + number(p.p_real) + "," + number(p.p_generated) + "\n";
            outcomes.push_back({c[i].authenticity, p.label});
        }
        write_output(o->out, text);
        if (!o->metrics_out.empty()) write_output(o->metrics_out, metrics_json(scen::evaluate(outcomes)));
    };
}

void add_embed(CLI::App& app, GlobalOptions&, Commands& commands) {
    struct Opts {
        std::string model, in, out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("embed", "Export the 128-dimensional graph embeddings of a detector");
    cmd->add_option("--model", o->model, "Model file written by train (e2e, contrastive or metric)")->required();
    cmd->add_option("--in", o->in, "JSONL corpus to embed")->required();
    cmd->add_option("--out", o->out, "Output CSV")->required();
    commands.handlers["embed"] = [o] {
        const auto model = detect::load_model(o->model);
        write_output(o->out, detect::export_embeddings(model, read_jsonl(std::filesystem::path(o->in))));
    };
}

// --- scenario / sweep / attribution -----------------------------------------

void add_scenario(CLI::App& app, GlobalOptions& g, Commands& commands) {
    struct Opts {
        std::string config, out, summary_out, seeds;
        bool timing = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("scenario", "Scenario experiments");
    cmd->require_subcommand(1);
    auto* run = cmd->add_subcommand("run", "Run the scenario x model x seed matrix");
    run->add_option("--config", o->config, "Experiment JSON; absent keys keep the profile defaults");
    run->add_option("--out", o->out, "Per-run results CSV")->required();
    run->add_option("--summary-out", o->summary_out, "Mean and standard deviation across seeds CSV");
    run->add_option("--seeds", o->seeds, "Comma-separated seeds overriding the config");
    run->add_flag("--timing", o->timing, "Record wall-clock milliseconds in the wall_ms column");
    commands.handlers["run"] = [o, &g] {
        auto spec = experiment(g, o->config, o->seeds);
        spec.record_time = spec.record_time || o->timing;
        std::cerr << "experiment " << json::parse(scen::experiment_to_json(spec)).dump() << '\n';
        const auto reals = scen::load_real_corpora(spec, scen::data_dir_from_env());
        const auto result = scen::run_matrix(spec, reals, progress(g));
        write_output(o->out, scen::rows_csv(result));
        if (!o->summary_out.empty()) write_output(o->summary_out, scen::summary_csv(result));
    };
}

void add_sweep(CLI::App& app, GlobalOptions& g, Commands& commands) {
    struct Opts {
        std::string param, values, config, out, seeds;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("sweep", "Metric-model accuracy over a range of n_ps or n_k (closed world)");
    cmd->add_option("--param", o->param, "Swept parameter: n_ps or n_k")->required()->check(CLI::IsMember({"n_ps", "n_k"}));
    cmd->add_option("--values", o->values, "Comma-separated parameter values")->required();
    cmd->add_option("--config", o->config, "Experiment JSON; absent keys keep the profile defaults");
    cmd->add_option("--seeds", o->seeds, "Comma-separated seeds overriding the config");
    cmd->add_option("--out", o->out, "Output CSV, one row per value")->required();
    commands.handlers["sweep"] = [o, &g] {
        auto spec = experiment(g, o->config, o->seeds);
        std::vector<std::size_t> values;
        for (double v : parse_value_list(o->values)) {
            if (!(v >= 1) || v != static_cast<double>(static_cast<std::size_t>(v))) {
                throw ArgumentError("sweep values must be positive integers");
            }
            values.push_back(static_cast<std::size_t>(v));
        }
        std::cerr << "experiment " << json::parse(scen::experiment_to_json(spec)).dump() << '\n';
        const auto reals = scen::load_real_corpora(spec, scen::data_dir_from_env());
        std::vector<std::vector<scen::Metrics>> per_value(values.size());
        for (const auto seed : spec.seeds) {
            scen::ScenarioConfig sc = spec.scenario;
            sc.seed = derive_seed(seed, 0x64617461ULL);
            const auto data = scen::build_experiment(sc, reals, {scen::ScenarioKind::ClosedWorld});
            const Corpus& test = data.tests.at(scen::ScenarioKind::ClosedWorld);
            detect::DetectorConfig dc = spec.detector;
            dc.seed = derive_seed(seed, {0x6d6f64656cULL, static_cast<std::uint64_t>(detect::ModelKind::Metric)});
            std::optional<detect::MetricModel> shared;
            for (std::size_t k = 0; k < values.size(); ++k) {
                if (g.verbosity > 0) std::cerr << "[seed " << seed << "] " << o->param << " = " << values[k] << '\n';
                detect::DetectorConfig cfg = dc;
                detect::MetricModel model;
                if (o->param == "n_ps") {
                    cfg.n_ps = values[k];
                    model = detect::train_metric(data.train, cfg);
                } else {
                    if (!shared) shared = detect::train_metric(data.train, cfg);
                    model = *shared;
                    model.config.n_k = values[k];
                }
                const auto predictions = detect::predict_corpus(model, test, derive_seed(dc.seed, 0));
                std::vector<scen::Outcome> outcomes;
                for (std::size_t i = 0; i < test.size(); ++i) outcomes.push_back({test[i].authenticity, predictions[i].label});
                per_value[k].push_back(scen::evaluate(outcomes));
            }
        }
        std::string text = "param,value,seeds,accuracy,f1,macro_f1\n";
        for (std::size_t k = 0; k < values.size(); ++k) {
            double acc = 0, f1 = 0, macro = 0;
            for (const auto& m : per_value[k]) {
                acc += m.accuracy;
                f1 += m.f1;
                macro += m.macro_f1;
            }
            const double n = static_cast<double>(per_value[k].size());
            char buf[128];
            std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.6f,%.6f\n", o->param.c_str(), values[k],
                          per_value[k].size(), acc / n, f1 / n, macro / n);
            text += buf;
        }
        write_output(o->out, text);
    };
}

void add_attribution(CLI::App& app, GlobalOptions& g, Commands& commands) {
    struct Opts {
        std::string in, config, out;
        std::size_t pos = 1000, neg = 1000;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = app.add_subcommand("attribution", "Predict whether two generated graphs share a generator");
    cmd->add_option("--in", o->in, "JSONL corpus of generated graphs from at least two generators")->required();
    cmd->add_option("--pos", o->pos, "Number of same-generator pairs")->capture_default_str();
    cmd->add_option("--neg", o->neg, "Number of different-generator pairs")->capture_default_str();
    cmd->add_option("--config", o->config, "Detector settings JSON; absent keys keep the profile defaults");
    cmd->add_option("--out", o->out, "Output JSON with pair accuracy and F1")->required();
    commands.handlers["attribution"] = [o, &g] {
        const auto config = detector_config(g, o->config);
        const auto r = scen::run_attribution(read_jsonl(std::filesystem::path(o->in)), o->pos, o->neg, config, g.seed);
        json j = json::parse(metrics_json(r.metrics));
        j["train_pairs"] = r.train_pairs;
        j["test_pairs"] = r.test_pairs;
        j["positives"] = r.positives;
        j["negatives"] = r.negatives;
        write_output(o->out, j.dump(2) + "\n");
    };
}

void describe(const CLI::App& app, json& out) {
    for (const auto* opt : app.get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help") continue;
        if (opt->get_expected_min() == 0) {
            out[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            const auto& results = opt->results();
            if (opt->get_expected_max() > 1 || results.size() > 1) {
                out[name] = results;
            } else {
                out[name] = results.front();
            }
        } else if (opt->get_expected_max() > 1) {
            out[name] = json::array();
        } else {
            out[name] = opt->get_default_str();
        }
    }
}

}  // namespace

void register_commands(CLI::App& app, GlobalOptions& global, Commands& commands) {
    add_import(app, global, commands);
    add_generate(app, global, commands);
    add_stats(app, global, commands);
    add_filter(app, global, commands);
    add_mmd(app, global, commands);
    add_train(app, global, commands);
    add_predict(app, global, commands);
    add_embed(app, global, commands);
    add_scenario(app, global, commands);
    add_sweep(app, global, commands);
    add_attribution(app, global, commands);
}

std::string resolved_config(const CLI::App& app, const GlobalOptions& global) {
    json j;
    j["seed"] = global.seed;
    j["threads"] = global.threads == 0 ? thread_count() : global.threads;
    j["profile"] = global.profile;
    j["verbosity"] = global.verbosity;
    const CLI::App* current = &app;
    std::string command;
    while (!current->get_subcommands().empty()) {
        current = current->get_subcommands().front();
        command += (command.empty() ? "" : " ") + current->get_name();
    }
    j["command"] = command;
    json options = json::object();
    describe(*current, options);
    j["options"] = options;
    return j.dump();
}

}  // namespace ggd::cli
