#include <benchmark/benchmark.h>

#include "ggd/detectors/end_to_end.hpp"
#include "ggd/detectors/metric.hpp"
#include "ggd/generators/traditional.hpp"
#include "ggd/scenarios/desk.hpp"
#include "ggd/stats.hpp"

using namespace ggd;

namespace {

Corpus ws_corpus(std::size_t count) { return scen::ws_family(count, 42); }

detect::DetectorConfig desk_detector() { return scen::desk_profile().detector; }

}  // namespace

static void BM_StatFeatures(benchmark::State& state) {
    const Graph g = gen::ws_generate(static_cast<std::size_t>(state.range(0)), 4, 0.1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(stats::stat_features(g));
}
BENCHMARK(BM_StatFeatures)->Arg(30)->Arg(300)->Arg(1000);

static void BM_Mmd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Corpus a = scen::ws_family(n, 1);
    const Corpus b = scen::partition_family(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(stats::mmd(a, b).value);
}
BENCHMARK(BM_Mmd)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_KnnFilter(benchmark::State& state) {
    const Corpus real = ws_corpus(400);
    const Corpus pool = scen::partition_family(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(stats::knn_filter(pool, real, 0.2).size());
}
BENCHMARK(BM_KnnFilter)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_GcnForward(benchmark::State& state) {
    auto config = desk_detector();
    const auto model = detect::EndToEndModel::init(config);
    const auto input = model.encoder.prepare(gen::ws_generate(static_cast<std::size_t>(state.range(0)), 4, 0.1, 1));
    for (auto _ : state) benchmark::DoNotOptimize(model.logits(input));
}
BENCHMARK(BM_GcnForward)->Arg(30)->Arg(300);

static void BM_GcnForwardBackward(benchmark::State& state) {
    auto config = desk_detector();
    auto model = detect::EndToEndModel::init(config);
    const auto input = model.encoder.prepare(gen::ws_generate(static_cast<std::size_t>(state.range(0)), 4, 0.1, 1));
    auto grads = nn::zero_gradients(model.params());
    for (auto _ : state) benchmark::DoNotOptimize(model.loss(input, Authenticity::Real, &grads));
}
BENCHMARK(BM_GcnForwardBackward)->Arg(30)->Arg(300);

static void BM_MetricPredict(benchmark::State& state) {
    auto config = desk_detector();
    const auto model = detect::MetricModel::init(config);
    Corpus refs = ws_corpus(50);
    for (const auto& item : scen::partition_family(50, 5))
        refs.items.push_back(make_generated(item.graph, "ws_family", "partition", item.source_index));
    const auto bank = detect::make_reference_bank(model, refs);
    const Graph g = gen::ws_generate(30, 4, 0.1, 9);
    const auto n_k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(detect::metric_predict(model, bank, g, n_k, 1).p_real);
}
BENCHMARK(BM_MetricPredict)->Arg(10)->Arg(50);

BENCHMARK_MAIN();
