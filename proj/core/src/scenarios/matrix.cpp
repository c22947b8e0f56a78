#include "ggd/scenarios/matrix.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "ggd/error.hpp"
#include "ggd/random.hpp"

namespace ggd::scen {

namespace {

std::size_t index_of(ScenarioKind k) { return static_cast<std::size_t>(k); }
std::size_t index_of(detect::ModelKind k) { return static_cast<std::size_t>(k); }

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

MatrixResult run_matrix(const ExperimentSpec& spec, const RealCorpora& reals, std::ostream* log) {
    if (spec.seeds.empty()) throw ConfigError("at least one seed is required");
    if (spec.models.empty()) throw ConfigError("at least one model is required");
    if (spec.scenarios.empty()) throw ConfigError("at least one scenario is required");
    using Clock = std::chrono::steady_clock;
    MatrixResult result;
    for (const auto seed : spec.seeds) {
        ScenarioConfig config = spec.scenario;
        config.seed = derive_seed(seed, 0x64617461ULL);
        if (log) *log << "[seed " << seed << "] building scenario data\n";
        const auto data_start = Clock::now();
        const ExperimentData data = build_experiment(config, reals, spec.scenarios);
        const auto data_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - data_start).count();
        if (log) {
            *log << "[seed " << seed << "] train " << data.train.size() << " graphs, "
                 << data.generators_fitted << " generators fitted\n";
        }
        for (const auto model_kind : spec.models) {
            detect::DetectorConfig dc = spec.detector;
            dc.seed = derive_seed(seed, {0x6d6f64656cULL, index_of(model_kind)});
            const auto train_start = Clock::now();
            if (log) *log << "[seed " << seed << "] training " << detect::to_string(model_kind) << '\n';
            const auto model = detect::train_model(model_kind, data.train, dc);
            const auto train_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - train_start).count();
            for (const auto scenario : spec.scenarios) {
                const Corpus& test = data.tests.at(scenario);
                check_no_leak(data.train, test);
                const auto eval_start = Clock::now();
                const auto predictions = detect::predict_corpus(model, test, derive_seed(dc.seed, index_of(scenario)));
                std::vector<Outcome> outcomes;
                outcomes.reserve(test.size());
                for (std::size_t i = 0; i < test.size(); ++i) outcomes.push_back({test[i].authenticity, predictions[i].label});
                MatrixRow row;
                row.scenario = scenario;
                row.model = model_kind;
                row.profile = spec.profile;
                row.seed = seed;
                row.metrics = evaluate(outcomes);
                row.train_size = data.train.size();
                row.test_size = test.size();
                if (spec.record_time) {
                    row.wall_ms = data_ms + train_ms +
                                  std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - eval_start).count();
                }
                if (log) {
                    *log << "[seed " << seed << "] " << to_string(scenario) << ' ' << detect::to_string(model_kind)
                         << " accuracy " << fixed(row.metrics.accuracy) << " f1 " << fixed(row.metrics.f1) << '\n';
                }
                result.rows.push_back(std::move(row));
            }
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [&](const MatrixRow& a, const MatrixRow& b) {
        auto seed_pos = [&](std::uint64_t s) {
            return std::find(spec.seeds.begin(), spec.seeds.end(), s) - spec.seeds.begin();
        };
        auto scen_pos = [&](ScenarioKind s) {
            return std::find(spec.scenarios.begin(), spec.scenarios.end(), s) - spec.scenarios.begin();
        };
        auto model_pos = [&](detect::ModelKind m) {
            return std::find(spec.models.begin(), spec.models.end(), m) - spec.models.begin();
        };
        return std::make_tuple(scen_pos(a.scenario), model_pos(a.model), seed_pos(a.seed)) <
               std::make_tuple(scen_pos(b.scenario), model_pos(b.model), seed_pos(b.seed));
    });
    return result;
}

std::string rows_csv(const MatrixResult& result) {
    std::string out = "scenario,model,dataset_profile,seed,accuracy,f1,macro_f1,train_size,test_size,wall_ms\n";
    for (const auto& r : result.rows) {
        out += std::string(to_string(r.scenario)) + ',' + std::string(detect::to_string(r.model)) + ',' + r.profile +
               ',' + std::to_string(r.seed) + ',' + fixed(r.metrics.accuracy) + ',' + fixed(r.metrics.f1) + ',' +
               fixed(r.metrics.macro_f1) + ',' + std::to_string(r.train_size) + ',' + std::to_string(r.test_size) +
               ',' + std::to_string(r.wall_ms) + '\n';
    }
    return out;
}

std::string summary_csv(const MatrixResult& result) {
    struct Acc {
        std::vector<double> accuracy, f1, macro_f1;
        std::string profile;
    };
    std::vector<std::pair<std::pair<ScenarioKind, detect::ModelKind>, Acc>> groups;
    for (const auto& r : result.rows) {
        const auto key = std::make_pair(r.scenario, r.model);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
        if (it == groups.end()) {
            groups.push_back({key, Acc{}});
            it = groups.end() - 1;
        }
        it->second.accuracy.push_back(r.metrics.accuracy);
        it->second.f1.push_back(r.metrics.f1);
        it->second.macro_f1.push_back(r.metrics.macro_f1);
        it->second.profile = r.profile;
    }
    auto moments = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
        return fixed(mean) + ',' + fixed(sd);
    };
    std::string out =
        "scenario,model,dataset_profile,seeds,accuracy_mean,accuracy_std,f1_mean,f1_std,macro_f1_mean,macro_f1_std\n";
    for (const auto& [key, acc] : groups) {
        out += std::string(to_string(key.first)) + ',' + std::string(detect::to_string(key.second)) + ',' +
               acc.profile + ',' + std::to_string(acc.accuracy.size()) + ',' + moments(acc.accuracy) + ',' +
               moments(acc.f1) + ',' + moments(acc.macro_f1) + '\n';
    }
    return out;
}

double mean_accuracy(const MatrixResult& result, ScenarioKind scenario, detect::ModelKind model) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : result.rows) {
        if (r.scenario == scenario && r.model == model) {
            sum += r.metrics.accuracy;
            ++n;
        }
    }
    if (n == 0) throw ArgumentError("no rows for the requested scenario and model");
    return sum / static_cast<double>(n);
}

}  // namespace ggd::scen
