#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ggd/detectors/model_io.hpp"
#include "ggd/scenarios/metrics.hpp"
#include "ggd/scenarios/scenario.hpp"

namespace ggd::scen {

struct ExperimentSpec {
    std::string profile = "desk";
    ScenarioConfig scenario;
    std::vector<ScenarioKind> scenarios{std::begin(kAllScenarios), std::end(kAllScenarios)};
    std::vector<detect::ModelKind> models{detect::ModelKind::EndToEnd, detect::ModelKind::Contrastive,
                                          detect::ModelKind::Metric, detect::ModelKind::Feature};
    std::vector<std::uint64_t> seeds{1, 2, 3};
    detect::DetectorConfig detector;
    // Graphs loaded per real dataset (synthetic families are generated with
    // this size; TUDataset corpora are subsampled to it). 0 keeps all.
    std::size_t reals_per_dataset = 0;
    // Record wall-clock milliseconds; off by default so tables stay
    // byte-identical across runs.
    bool record_time = false;
};

struct MatrixRow {
    ScenarioKind scenario = ScenarioKind::ClosedWorld;
    detect::ModelKind model = detect::ModelKind::EndToEnd;
    std::string profile;
    std::uint64_t seed = 0;
    Metrics metrics;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::int64_t wall_ms = 0;
};

struct MatrixResult {
    std::vector<MatrixRow> rows;  // ordered by scenario, then model, then seed
};

// For every seed the experiment data is built once (all requested scenarios
// share one training corpus), each model is trained once on it and scored
// on every scenario's test corpus. A leak check runs for every cell.
MatrixResult run_matrix(const ExperimentSpec& spec, const RealCorpora& reals, std::ostream* log = nullptr);

// scenario,model,dataset_profile,seed,accuracy,f1,macro_f1,train_size,test_size,wall_ms
std::string rows_csv(const MatrixResult& result);
// scenario,model,dataset_profile,seeds,accuracy_mean,accuracy_std,f1_mean,f1_std,macro_f1_mean,macro_f1_std
// with the sample standard deviation across seeds (0 for a single seed).
std::string summary_csv(const MatrixResult& result);

double mean_accuracy(const MatrixResult& result, ScenarioKind scenario, detect::ModelKind model);

}  // namespace ggd::scen
