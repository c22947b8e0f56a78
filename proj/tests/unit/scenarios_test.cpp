#include <map>
#include <set>

#include <gtest/gtest.h>

#include "ggd/error.hpp"
#include "ggd/generators/generator.hpp"
#include "ggd/scenarios/attribution.hpp"
#include "ggd/scenarios/desk.hpp"
#include "ggd/scenarios/matrix.hpp"
#include "ggd/scenarios/metrics.hpp"
#include "ggd/scenarios/mixed.hpp"
#include "ggd/scenarios/scenario.hpp"
#include "ggd/stats.hpp"
#include "test_support.hpp"

using namespace ggd;
using namespace ggd::testing;
using scen::ScenarioKind;

namespace {

gen::GeneratorSpec spec(const std::string& id, gen::GeneratorKind kind) {
    gen::GeneratorSpec s;
    s.id = id;
    s.kind = kind;
    return s;
}

scen::ScenarioConfig mini_config(std::uint64_t seed = 3) {
    scen::ScenarioConfig c;
    c.seen_datasets = {"ws_family"};
    c.unseen_datasets = {"partition_family"};
    c.seen_generators = {spec("er", gen::GeneratorKind::ER), spec("ba", gen::GeneratorKind::BA)};
    c.unseen_generators = {spec("ws", gen::GeneratorKind::WS)};
    c.test_per_class = 40;
    c.seed = seed;
    return c;
}

scen::RealCorpora mini_reals() {
    return {{"ws_family", scen::ws_family(150, 1)}, {"partition_family", scen::partition_family(150, 2)}};
}

std::size_t count_label(const Corpus& c, Authenticity a) { return c.count(a); }

}  // namespace

TEST(Evaluate, Examples) {
    using A = Authenticity;
    const std::vector<scen::Outcome> all_right{{A::Real, A::Real}, {A::Generated, A::Generated}};
    const auto m = scen::evaluate(all_right);
    EXPECT_DOUBLE_EQ(m.accuracy, 1.0);
    EXPECT_DOUBLE_EQ(m.f1, 1.0);

    scen::Confusion c{3, 1, 1, 3};
    const auto hand = scen::metrics_from(c);
    EXPECT_DOUBLE_EQ(hand.accuracy, 0.75);
    EXPECT_DOUBLE_EQ(hand.f1, 0.75);
    EXPECT_DOUBLE_EQ(hand.macro_f1, 0.75);

    const std::vector<scen::Outcome> all_generated{{A::Real, A::Generated}, {A::Generated, A::Generated}};
    EXPECT_DOUBLE_EQ(scen::evaluate(all_generated).f1, 0.0);
    EXPECT_THROW(scen::evaluate(std::vector<scen::Outcome>{}), ArgumentError);
}

TEST(Evaluate, MatchesBruteForceConfusion) {
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.below(40);
        std::vector<int> truth(n), pred(n);
        std::vector<scen::Outcome> outcomes;
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = static_cast<int>(rng.below(2));
            pred[i] = static_cast<int>(rng.below(2));
            outcomes.push_back({truth[i] ? Authenticity::Real : Authenticity::Generated,
                                pred[i] ? Authenticity::Real : Authenticity::Generated});
        }
        double tp = 0, fp = 0, fn = 0, tn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            tp += truth[i] && pred[i];
            fp += !truth[i] && pred[i];
            fn += truth[i] && !pred[i];
            tn += !truth[i] && !pred[i];
        }
        auto f1 = [](double a, double b, double c) { return a == 0 ? 0.0 : 2 * a / (2 * a + b + c); };
        const auto m = scen::evaluate(outcomes);
        const auto mb = scen::evaluate_binary(truth, pred);
        ASSERT_DOUBLE_EQ(m.accuracy, (tp + tn) / static_cast<double>(n));
        ASSERT_DOUBLE_EQ(m.f1, f1(tp, fp, fn));
        ASSERT_DOUBLE_EQ(m.macro_f1, 0.5 * (f1(tp, fp, fn) + f1(tn, fn, fp)));
        ASSERT_EQ(m.confusion, mb.confusion);
    }
}

TEST(EvenSplit, RemainderGoesFirst) {
    EXPECT_EQ(scen::even_split(10, 3), (std::vector<std::size_t>{4, 3, 3}));
    EXPECT_EQ(scen::even_split(9, 3), (std::vector<std::size_t>{3, 3, 3}));
    EXPECT_EQ(scen::even_split(2, 3), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(BuildMixed, CountsPerDatasetAndGenerator) {
    std::vector<Corpus> reals{scen::ws_family(30, 1, "a"), scen::partition_family(30, 2, "b")};
    std::vector<std::vector<gen::TrainedGenerator>> gens(2);
    for (std::size_t d = 0; d < 2; ++d)
        for (const char* id : {"g1", "g2", "g3"}) {
            auto s = spec(id, gen::GeneratorKind::ER);
            gens[d].push_back(gen::fit_generator(s, reals[d]));
        }
    const Corpus mixed = scen::build_mixed(reals, gens, 10, 5);
    EXPECT_EQ(mixed.size(), 40u);
    EXPECT_EQ(count_label(mixed, Authenticity::Real), 20u);
    std::map<std::pair<std::string, std::string>, std::size_t> fakes;
    for (const auto& item : mixed)
        if (item.generator_id) ++fakes[{item.dataset_id, *item.generator_id}];
    for (const char* d : {"a", "b"}) {
        EXPECT_EQ((fakes[{d, "g1"}]), 4u);
        EXPECT_EQ((fakes[{d, "g2"}]), 3u);
        EXPECT_EQ((fakes[{d, "g3"}]), 3u);
    }
    EXPECT_EQ(scen::build_mixed(reals, gens, 10, 5), mixed);
    EXPECT_NE(scen::build_mixed(reals, gens, 10, 6), mixed);
    EXPECT_THROW(scen::build_mixed(reals, gens, 31, 5), ConfigError);
}

TEST(BuildMixed, DivisibilityCases) {
    std::vector<Corpus> reals{scen::ws_family(20, 1, "a")};
    for (std::size_t g = 1; g <= 4; ++g) {
        std::vector<std::vector<gen::TrainedGenerator>> gens(1);
        for (std::size_t k = 0; k < g; ++k)
            gens[0].push_back(gen::fit_generator(spec("g" + std::to_string(k), gen::GeneratorKind::BA), reals[0]));
        for (std::size_t per : {1u, 5u, 7u, 12u}) {
            const Corpus mixed = scen::build_mixed(reals, gens, per, 1);
            ASSERT_EQ(count_label(mixed, Authenticity::Real), per);
            ASSERT_EQ(count_label(mixed, Authenticity::Generated), per);
            std::map<std::string, std::size_t> by_gen;
            for (const auto& item : mixed)
                if (item.generator_id) ++by_gen[*item.generator_id];
            const auto want = scen::even_split(per, g);
            for (std::size_t k = 0; k < g; ++k) ASSERT_EQ(by_gen["g" + std::to_string(k)], want[k]);
        }
    }
}

TEST(Scenarios, ConstructionContracts) {
    const auto reals = mini_reals();
    const auto data = scen::build_experiment(mini_config(), reals,
                                             {std::begin(scen::kAllScenarios), std::end(scen::kAllScenarios)});
    EXPECT_EQ(data.train.count(Authenticity::Real), data.train.count(Authenticity::Generated));
    for (const auto& item : data.train) {
        EXPECT_EQ(item.dataset_id, "ws_family");
        if (item.generator_id) EXPECT_TRUE(*item.generator_id == "er" || *item.generator_id == "ba");
    }
    for (auto kind : scen::kAllScenarios) {
        const Corpus& test = data.tests.at(kind);
        EXPECT_LE(std::abs(static_cast<long>(test.count(Authenticity::Real)) -
                           static_cast<long>(test.count(Authenticity::Generated))),
                  1)
            << to_string(kind);
        EXPECT_NO_THROW(scen::check_no_leak(data.train, test));
        for (const auto& item : test) {
            const bool seen_dataset = item.dataset_id == "ws_family";
            const bool unseen_generator = item.generator_id && *item.generator_id == "ws";
            switch (kind) {
                case ScenarioKind::ClosedWorld:
                    EXPECT_TRUE(seen_dataset);
                    EXPECT_FALSE(unseen_generator);
                    break;
                case ScenarioKind::OpenGenerator:
                    EXPECT_TRUE(seen_dataset);
                    if (item.generator_id) EXPECT_TRUE(unseen_generator);
                    break;
                case ScenarioKind::OpenSet:
                    EXPECT_FALSE(seen_dataset);
                    EXPECT_FALSE(unseen_generator);
                    break;
                case ScenarioKind::OpenWorld:
                    EXPECT_FALSE(seen_dataset);
                    if (item.generator_id) EXPECT_TRUE(unseen_generator);
                    break;
            }
        }
    }
    EXPECT_EQ(data.tests.at(ScenarioKind::OpenWorld).size(), 80u);
    // 150 reals split 8:2 gives 30 held-out reals, matched by 30 fakes
    EXPECT_EQ(data.tests.at(ScenarioKind::ClosedWorld).size(), 60u);
    EXPECT_EQ(data.train.size(), 240u);

    const auto single = scen::build_scenario(mini_config(), ScenarioKind::OpenWorld, reals);
    EXPECT_EQ(single.test, data.tests.at(ScenarioKind::OpenWorld));
    EXPECT_EQ(single.train, data.train);
}

TEST(Scenarios, LeakCheckAndValidation) {
    const Corpus a = corpus_of({cycle_graph(5), cycle_graph(6)}, Authenticity::Real, "d");
    const Corpus b = corpus_of({cycle_graph(7)}, Authenticity::Real, "d");
    EXPECT_THROW(scen::check_no_leak(a, b), LeakError);
    Corpus c = b;
    c.items[0].source_index = 9;
    EXPECT_NO_THROW(scen::check_no_leak(a, c));

    auto config = mini_config();
    config.unseen_datasets = {"ws_family"};
    EXPECT_THROW(config.validate(), ConfigError);
    config = mini_config();
    config.unseen_generators.clear();
    EXPECT_THROW(config.validate_for(ScenarioKind::OpenGenerator), ConfigError);
    EXPECT_NO_THROW(config.validate_for(ScenarioKind::ClosedWorld));
}

// Desk generator settings, a 1,000-graph pool and the default 0.2 keep.
TEST(Scenarios, FilteringDoesNotHurtMmd) {
    const Corpus reals = scen::ws_family(200, 4);
    const auto desk = scen::desk_profile();
    std::vector<gen::GeneratorSpec> specs = desk.scenario.seen_generators;
    specs.insert(specs.end(), desk.scenario.unseen_generators.begin(), desk.scenario.unseen_generators.end());
    for (const auto& s : specs) {
        if (!gen::is_neural(s.kind)) continue;
        const auto g = gen::fit_generator(s, reals);
        const Corpus pool = gen::sample_generator(g, 1000, 1);
        const Corpus kept = stats::knn_filter(pool, reals, 0.2);
        EXPECT_LE(stats::mmd(kept, reals).value, stats::mmd(pool, reals).value + 1e-6) << s.id;
    }
}

TEST(Attribution, SeparableFamilies) {
    Rng rng(5);
    std::vector<Graph> dense_graphs, empty;
    for (int i = 0; i < 60; ++i) {
        const auto n = static_cast<std::size_t>(rng.range(6, 12));
        dense_graphs.push_back(gen::er_generate_p(n, 0.5, rng.next()));
        empty.push_back(edgeless_graph(n));
    }
    const Corpus fakes = concat(corpus_of(dense_graphs, Authenticity::Generated, "d", "er"),
                                corpus_of(empty, Authenticity::Generated, "d", "empty"));
    const auto r = scen::run_attribution(fakes, 150, 150, small_detector(), 3);
    EXPECT_EQ(r.positives, 150u);
    EXPECT_EQ(r.negatives, 150u);
    EXPECT_EQ(r.train_pairs + r.test_pairs, 300u);
    EXPECT_EQ(r.test_pairs, 60u);
    EXPECT_EQ(r.metrics.confusion.total(), r.test_pairs);
    EXPECT_EQ(r.metrics.confusion.tp + r.metrics.confusion.fn, 30u);
    EXPECT_GE(r.metrics.accuracy, 0.8);

    const Corpus one = corpus_of(dense_graphs, Authenticity::Generated, "d", "er");
    EXPECT_THROW(scen::run_attribution(one, 10, 10, small_detector(), 3), ConfigError);
}

TEST(Matrix, RowCountAndDeterminism) {
    scen::ExperimentSpec spec;
    spec.scenario = mini_config();
    spec.detector = small_detector();
    spec.detector.epochs = 3;
    spec.detector.contrastive_epochs = 2;
    spec.detector.classifier_epochs = 20;
    spec.detector.pair_epochs = 1;
    spec.detector.feature_epochs = 5;
    spec.seeds = {1, 2};
    const auto reals = mini_reals();
    const auto a = scen::run_matrix(spec, reals);
    EXPECT_EQ(a.rows.size(), 4u * 4u * 2u);
    const std::string csv = scen::rows_csv(a);
    EXPECT_EQ(csv, scen::rows_csv(scen::run_matrix(spec, reals)));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 33);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "scenario,model,dataset_profile,seed,accuracy,f1,macro_f1,train_size,test_size,wall_ms");
    const std::string summary = scen::summary_csv(a);
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 17);
    for (const auto& row : a.rows) EXPECT_EQ(row.wall_ms, 0);
}

TEST(DeskProfile, ShapeAndJsonRoundTrip) {
    const auto desk = scen::desk_profile();
    EXPECT_EQ(desk.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
    EXPECT_EQ(desk.scenario.seen_datasets, (std::vector<std::string>{"ws_family"}));
    EXPECT_EQ(desk.reals_per_dataset, 2000u);
    EXPECT_EQ(desk.scenario.seen_generators.size(), 3u);
    EXPECT_EQ(desk.detector.encoder.widths.back(), 128u);
    const auto back = scen::experiment_from_json(scen::experiment_to_json(desk), std::nullopt);
    EXPECT_EQ(scen::experiment_to_json(back), scen::experiment_to_json(desk));
    EXPECT_THROW(scen::experiment_from_json(R"({"sedes":[1]})", std::nullopt), ConfigError);
    const auto partial = scen::experiment_from_json(R"({"seeds":[4]})", std::nullopt);
    EXPECT_EQ(partial.seeds, (std::vector<std::uint64_t>{4}));
    EXPECT_EQ(partial.scenario.test_per_class, desk.scenario.test_per_class);
}

TEST(DeskProfile, FamiliesAreFixedPerName) {
    const Corpus a = scen::load_dataset("ws_family", 50, std::nullopt);
    const Corpus b = scen::load_dataset("ws_family", 50, std::nullopt);
    EXPECT_EQ(a, b);
    for (const auto& item : a) {
        EXPECT_GE(item.graph.node_count(), 20u);
        EXPECT_LE(item.graph.node_count(), 40u);
        EXPECT_EQ(item.graph.edge_count(), 2 * item.graph.node_count());
    }
    EXPECT_THROW(scen::load_dataset("NOT_A_DATASET", 10, std::nullopt), IoError);
}
