#include <cmath>

#include <gtest/gtest.h>

#include "ggd/error.hpp"
#include "ggd/generators/generator.hpp"
#include "ggd/generators/graphrnn.hpp"
#include "ggd/stats.hpp"
#include "test_support.hpp"

using namespace ggd;
using namespace ggd::testing;

namespace {

Corpus k4_corpus(std::size_t copies) {
    return corpus_of(std::vector<Graph>(copies, complete_graph(4)), Authenticity::Real, "k4");
}

gen::AutoencoderConfig small_autoencoder(std::size_t rounds = 0) {
    gen::AutoencoderConfig c;
    c.latent_dim = 8;
    c.hidden_dim = 16;
    c.epochs = 50;
    c.batch_size = 10;
    c.lr = 0.01;
    c.refinement_rounds = rounds;
    c.seed = 5;
    return c;
}

}  // namespace

TEST(ErdosRenyi, Examples) {
    EXPECT_EQ(gen::er_generate_p(5, 0.0, 1), edgeless_graph(5));
    EXPECT_EQ(gen::er_generate_m(4, 6, 1), complete_graph(4));
    EXPECT_EQ(gen::er_generate_p(6, 1.0, 1), complete_graph(6));
    EXPECT_THROW(gen::er_generate_m(4, 7, 1), ArgumentError);
    EXPECT_THROW(gen::er_generate_p(4, 1.5, 1), ArgumentError);
}

TEST(ErdosRenyi, ExactEdgeCountForFixedM) {
    for (std::uint64_t s = 0; s < 300; ++s) ASSERT_EQ(gen::er_generate_m(30, 57, s).edge_count(), 57u);
}

TEST(ErdosRenyi, MeanEdgeCountMonteCarlo) {
    double total = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) total += static_cast<double>(gen::er_generate_p(100, 0.1, s).edge_count());
    EXPECT_NEAR(total / 1000.0, 495.0, 15.0);
}

TEST(BarabasiAlbert, EdgeCounts) {
    EXPECT_EQ(gen::ba_generate(10, 1, 3).edge_count(), 9u);
    EXPECT_EQ(gen::ba_generate(10, 2, 3).edge_count(), 16u);
    for (std::uint64_t s = 0; s < 200; ++s) ASSERT_EQ(gen::ba_generate(25, 3, s).edge_count(), 66u);
    EXPECT_THROW(gen::ba_generate(5, 5, 1), ArgumentError);
    EXPECT_THROW(gen::ba_generate(5, 0, 1), ArgumentError);
}

TEST(BarabasiAlbert, HeavyTail) {
    int heavy = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
        const auto d = degree_sequence(gen::ba_generate(200, 2, s));
        if (*std::max_element(d.begin(), d.end()) > 8) ++heavy;
    }
    EXPECT_GT(heavy, 250);
}

TEST(BarabasiAlbert, LateNodesAreConnected) {
    const Graph g = gen::ba_generate(50, 2, 9);
    const auto comps = connected_components(g);
    // the m seed nodes can only be isolated before the first attachment
    EXPECT_EQ(comps.size(), 1u);
}

TEST(WattsStrogatz, LatticeAndEdgeCount) {
    EXPECT_EQ(gen::ws_generate(6, 2, 0.0, 1), cycle_graph(6));
    for (std::uint64_t s = 0; s < 200; ++s) {
        ASSERT_EQ(gen::ws_generate(20, 4, 0.5, s).edge_count(), 40u);
        ASSERT_EQ(gen::ws_generate(9, 6, 1.0, s).edge_count(), 27u);
    }
    EXPECT_THROW(gen::ws_generate(6, 3, 0.1, 1), ArgumentError);
    EXPECT_THROW(gen::ws_generate(6, 6, 0.1, 1), ArgumentError);
    EXPECT_THROW(gen::ws_generate(6, 2, -0.1, 1), ArgumentError);
}

TEST(WattsStrogatz, RewiringLowersClustering) {
    int lower = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        if (stats::stat_features(gen::ws_generate(50, 4, 1.0, s)).avg_clustering < 0.5) ++lower;
    }
    EXPECT_GE(lower, 190);
}

TEST(Generators, DeterministicAndValidForEveryKind) {
    const Corpus reference = corpus_of({cycle_graph(8), path_graph(9), complete_graph(5), star_graph(6)},
                                       Authenticity::Real, "ref");
    for (auto kind : {gen::GeneratorKind::ER, gen::GeneratorKind::BA, gen::GeneratorKind::WS, gen::GeneratorKind::VGAE,
                      gen::GeneratorKind::Graphite, gen::GeneratorKind::GraphRNN_S}) {
        gen::GeneratorSpec spec;
        spec.kind = kind;
        spec.id = "g";
        spec.seed = 3;
        if (gen::is_neural(kind)) spec.params["epochs"] = 3;
        const auto a = gen::fit_generator(spec, reference);
        const auto b = gen::fit_generator(spec, reference);
        const Corpus sa = gen::sample_generator(a, 20, 11);
        const Corpus sb = gen::sample_generator(b, 20, 11);
        EXPECT_EQ(sa, sb) << gen::to_string(kind);
        for (const auto& item : sa) {
            EXPECT_EQ(item.authenticity, Authenticity::Generated);
            EXPECT_EQ(item.generator_id, "g");
            EXPECT_EQ(item.dataset_id, "ref");
            EXPECT_NO_THROW(check_labels(item));
            const auto& obs = a.node_sampler.observed();
            EXPECT_NE(std::find(obs.begin(), obs.end(), item.graph.node_count()), obs.end());
        }
        EXPECT_TRUE(gen::sample_generator(a, 0, 11).empty());
    }
}

TEST(Generators, SampleIndicesAndSeedsCompose) {
    gen::GeneratorSpec spec;
    spec.kind = gen::GeneratorKind::ER;
    spec.id = "er";
    spec.params = {{"n", 12}, {"p", 0.3}};
    const auto g = gen::fit_generator(spec, Corpus{});
    const Corpus all = gen::sample_generator(g, 10, 5);
    const Corpus tail = gen::sample_generator(g, 4, 5, 6);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(tail[i], all[6 + i]);
    EXPECT_EQ(all[3].source_index, 3);
}

TEST(Generators, SpecValidation) {
    gen::GeneratorSpec spec;
    spec.id = "er";
    spec.kind = gen::GeneratorKind::ER;
    spec.params = {{"p", 0.2}, {"m", 3}};
    EXPECT_THROW(spec.validate(), ConfigError);
    spec.params = {{"k", 2}};
    EXPECT_THROW(spec.validate(), ConfigError);
    spec.params = {{"p", 1.5}};
    EXPECT_THROW(spec.validate(), ConfigError);
    spec.params = {{"p", 0.2}};
    EXPECT_NO_THROW(spec.validate());
    EXPECT_EQ(gen::spec_from_json(gen::spec_to_json(spec)), spec);
    EXPECT_THROW(gen::parse_generator_kind("GRAN"), ConfigError);
    EXPECT_THROW(gen::fit_generator(spec, Corpus{}), ConfigError);
}

TEST(Generators, TraditionalParametersFittedFromReference) {
    const Corpus ref = corpus_of(std::vector<Graph>(5, cycle_graph(10)), Authenticity::Real);
    gen::GeneratorSpec spec;
    spec.id = "x";
    spec.kind = gen::GeneratorKind::ER;
    EXPECT_NEAR(gen::fit_generator(spec, ref).resolved.at("p"), 10.0 / 45.0, 1e-12);
    spec.kind = gen::GeneratorKind::BA;
    EXPECT_DOUBLE_EQ(gen::fit_generator(spec, ref).resolved.at("m"), 1.0);
    spec.kind = gen::GeneratorKind::WS;
    EXPECT_DOUBLE_EQ(gen::fit_generator(spec, ref).resolved.at("k"), 2.0);
}

TEST(Vgae, ShapesAndLossDecrease) {
    const auto trained = gen::fit_vgae(k4_corpus(50), small_autoencoder());
    ASSERT_TRUE(trained.autoencoder.has_value());
    const auto& ae = *trained.autoencoder;
    EXPECT_EQ(ae.encoder_hidden.weight.cols(), 16);
    EXPECT_EQ(ae.encoder_mean.weight.rows(), 16);
    EXPECT_EQ(ae.encoder_mean.weight.cols(), 8);
    EXPECT_EQ(ae.encoder_log_sigma.weight.cols(), 8);
    EXPECT_TRUE(ae.refinement.empty());
    ASSERT_EQ(trained.training_log.size(), 50u);
    EXPECT_LT(trained.training_log.back(), trained.training_log.front());
}

TEST(Vgae, DefaultLatentShapes) {
    Rng rng(1);
    gen::AutoencoderConfig config;
    const auto ae = gen::GraphAutoencoder::init(config, 32, rng);
    EXPECT_EQ(ae.encoder_hidden.weight.rows(), 32);
    EXPECT_EQ(ae.encoder_mean.weight.cols(), 16);
    EXPECT_EQ(ae.encoder_log_sigma.weight.cols(), 16);
}

TEST(Vgae, SamplesKeepReferenceNodeCount) {
    const Corpus ref = corpus_of(std::vector<Graph>(10, cycle_graph(10)), Authenticity::Real);
    auto config = small_autoencoder();
    config.epochs = 2;
    const auto trained = gen::fit_vgae(ref, config);
    for (const auto& item : gen::sample_generator(trained, 30, 4)) EXPECT_EQ(item.graph.node_count(), 10u);
}

TEST(Vgae, ZeroLatentsGiveHalfProbabilities) {
    Rng rng(2);
    const auto ae = gen::GraphAutoencoder::init(small_autoencoder(), 32, rng);
    const nn::Matrix p = ae.edge_probabilities(nn::Matrix::Zero(5, 8));
    EXPECT_LE((p.array() - 0.5).abs().maxCoeff(), 1e-15);
}

TEST(Vgae, KlOfStandardNormalIsZero) {
    EXPECT_DOUBLE_EQ(gen::kl_divergence(nn::Matrix::Zero(4, 3), nn::Matrix::Zero(4, 3)), 0.0);
    EXPECT_GT(gen::kl_divergence(nn::Matrix::Ones(4, 3), nn::Matrix::Zero(4, 3)), 0.0);
}

TEST(Graphite, ZeroRoundsReduceToVgaeDecoder) {
    Rng rng(3);
    auto ae = gen::GraphAutoencoder::init(small_autoencoder(2), 32, rng);
    const nn::Matrix z = nn::random_normal(6, 8, rng);
    auto plain = ae;
    plain.refinement.clear();
    for (auto& r : ae.refinement) r.setZero();
    EXPECT_LE((ae.edge_probabilities(z) - plain.edge_probabilities(z)).cwiseAbs().maxCoeff(), 1e-15);
    const nn::Matrix zz = z * z.transpose();
    EXPECT_LE((plain.edge_probabilities(z) - nn::sigmoid(zz)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Graphite, LossDecreasesAndHasMoreParameters) {
    const auto graphite = gen::fit_graphite(k4_corpus(50), small_autoencoder(2));
    ASSERT_FALSE(graphite.training_log.empty());
    EXPECT_LT(graphite.training_log.back(), graphite.training_log.front());
    auto config = small_autoencoder();
    config.epochs = 1;
    const auto vgae = gen::fit_vgae(k4_corpus(5), config);
    EXPECT_GT(graphite.parameter_count(), vgae.parameter_count());
}

TEST(GraphRnn, StarEncodingFromCentre) {
    const Graph star = star_graph(3);
    const auto order = gen::bfs_order(star, 0);
    EXPECT_EQ(order, (std::vector<NodeId>{0, 1, 2, 3}));
    EXPECT_EQ(gen::sequence_width(star, order), 3u);
    const auto enc = gen::bfs_encode(star, 0, 3);
    ASSERT_EQ(enc.vectors.size(), 3u);
    EXPECT_EQ(enc.vectors[0], (std::vector<std::uint8_t>{1, 0, 0}));
    EXPECT_EQ(enc.vectors[1], (std::vector<std::uint8_t>{0, 1, 0}));
    EXPECT_EQ(enc.vectors[2], (std::vector<std::uint8_t>{0, 0, 1}));
    EXPECT_EQ(gen::sequence_width(star, gen::bfs_order(star, 1)), 2u);
    EXPECT_EQ(gen::bfs_bandwidth(star), 3u);
}

TEST(GraphRnn, PathFromEndpointHasWidthOne) {
    const Graph p = path_graph(6);
    const auto enc = gen::bfs_encode(p, 0, 1);
    for (const auto& v : enc.vectors) EXPECT_EQ(v, (std::vector<std::uint8_t>{1}));
    EXPECT_EQ(gen::bfs_bandwidth(p), 2u);
}

TEST(GraphRnn, ZeroProbabilitiesSampleEdgelessGraphs) {
    Rng rng(4);
    auto model = gen::GraphRnnModel::init(3, 8, rng);
    model.head.weight.setZero();
    model.head.bias.setConstant(-1e4);
    for (int t = 0; t < 10; ++t) EXPECT_EQ(model.sample(7, rng).edge_count(), 0u);
}

TEST(GraphRnn, RejectsEdgelessCorpus) {
    const Corpus single = corpus_of(std::vector<Graph>(5, edgeless_graph(1)), Authenticity::Real);
    gen::GraphRnnConfig config;
    config.epochs = 2;
    EXPECT_THROW(gen::fit_graphrnn_s(single, config), TrainError);
}

TEST(GraphRnn, LearnsPaths) {
    Rng rng(5);
    std::vector<Graph> paths;
    for (int i = 0; i < 40; ++i) paths.push_back(path_graph(static_cast<std::size_t>(rng.range(6, 12))));
    gen::GraphRnnConfig config;
    config.hidden_dim = 16;
    config.epochs = 200;
    config.batch_size = 8;
    config.lr = 0.01;
    config.seed = 3;
    const auto trained = gen::fit_graphrnn_s(corpus_of(paths, Authenticity::Real), config);
    EXPECT_LT(trained.training_log.back(), trained.training_log.front());
    int near_path = 0;
    for (const auto& item : gen::sample_generator(trained, 100, 8)) {
        const auto n = static_cast<long>(item.graph.node_count());
        const auto m = static_cast<long>(item.graph.edge_count());
        if (std::abs(m - (n - 1)) <= 2) ++near_path;
    }
    EXPECT_GE(near_path, 80);
}

TEST(Generators, SaveLoadRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "ggd_gen_io";
    std::filesystem::create_directories(dir);
    const Corpus ref = corpus_of({cycle_graph(8), path_graph(9), complete_graph(5)}, Authenticity::Real, "ref");
    for (auto kind : {gen::GeneratorKind::BA, gen::GeneratorKind::Graphite, gen::GeneratorKind::GraphRNN_S}) {
        gen::GeneratorSpec spec;
        spec.kind = kind;
        spec.id = "g";
        if (gen::is_neural(kind)) spec.params["epochs"] = 2;
        const auto fitted = gen::fit_generator(spec, ref);
        const auto path = dir / "g.bin";
        gen::save_generator(path, fitted);
        const auto loaded = gen::load_generator(path);
        EXPECT_EQ(loaded.spec, fitted.spec);
        EXPECT_EQ(loaded.parameter_count(), fitted.parameter_count());
        // f32 storage: compare the reloaded sampler against a second reload
        EXPECT_EQ(gen::sample_generator(loaded, 5, 1), gen::sample_generator(gen::load_generator(path), 5, 1));
    }
    std::filesystem::remove_all(dir);
}
