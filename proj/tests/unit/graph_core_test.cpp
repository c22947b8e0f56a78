#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "ggd/corpus_io.hpp"
#include "ggd/error.hpp"
#include "test_support.hpp"

using namespace ggd;
using namespace ggd::testing;

namespace {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(GGD_FIXTURE_DIR) / name; }

}  // namespace

TEST(Graph, CanonicalizesAndDeduplicates) {
    const Graph g(3, {{2, 1}, {1, 2}, {0, 1}});
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.edges()[0], (Edge{0, 1}));
    EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
    EXPECT_TRUE(g.has_edge(2, 1));
    EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, RejectsSelfLoopsAndOutOfRange) {
    EXPECT_THROW(Graph(3, {{1, 1}}), ArgumentError);
    EXPECT_THROW(Graph(3, {{0, 3}}), ArgumentError);
}

TEST(Graph, LabelInvariant) {
    LabeledGraph item = make_real(path_graph(3), "d", 0);
    EXPECT_NO_THROW(check_labels(item));
    item.generator_id = "er";
    EXPECT_THROW(check_labels(item), ArgumentError);
}

TEST(ParseTudataset, ToyFixture) {
    ParseStats stats;
    const Corpus c = parse_tudataset(fixture("TOY"), &stats);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].graph, Graph(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(c[1].graph, Graph(2, {{0, 1}}));
    for (const auto& item : c) {
        EXPECT_EQ(item.authenticity, Authenticity::Real);
        EXPECT_EQ(item.dataset_id, "TOY");
        EXPECT_FALSE(item.generator_id.has_value());
    }
    EXPECT_EQ(stats.duplicate_edges_dropped, 3u);
    EXPECT_EQ(stats.self_loops_dropped, 0u);
}

TEST(ParseTudataset, SingleNodeNoEdges) {
    const Corpus c = parse_tudataset(fixture("SINGLE"));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].graph.node_count(), 1u);
    EXPECT_EQ(c[0].graph.edge_count(), 0u);
}

TEST(ParseTudataset, DropsSelfLoopsAndDuplicates) {
    ParseStats stats;
    const Corpus c = parse_tudataset(fixture("DIRTY"), &stats);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(stats.self_loops_dropped, 1u);
    EXPECT_EQ(stats.duplicate_edges_dropped, 2u);
    EXPECT_EQ(c[0].graph, Graph(2, {{0, 1}}));
    EXPECT_EQ(c[1].graph, Graph(2, {{0, 1}}));
}

TEST(ParseTudataset, MissingFilesAndBadIndicators) {
    EXPECT_THROW(parse_tudataset(fixture("NOPE")), ParseError);
    const auto dir = std::filesystem::temp_directory_path() / "ggd_bad_ds" / "BAD";
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "BAD_A.txt", "1, 5\n");
    write_file_atomic(dir / "BAD_graph_indicator.txt", "1\n1\n");
    EXPECT_THROW(parse_tudataset(dir), ParseError);
    std::filesystem::remove_all(dir.parent_path());
}

TEST(CorpusIo, JsonlRoundTrip) {
    Rng rng(5);
    Corpus c;
    for (int i = 0; i < 50; ++i) {
        if (i % 2 == 0) {
            c.items.push_back(make_real(random_graph(rng, 1, 15), "ds", i));
        } else {
            c.items.push_back(make_generated(random_graph(rng, 1, 15), "ds", "vgae", i));
        }
    }
    std::stringstream ss;
    write_jsonl(ss, c);
    const Corpus back = read_jsonl(ss);
    EXPECT_EQ(back.items, c.items);
}

TEST(CorpusIo, RejectsMalformedLines) {
    std::stringstream bad("{\"n\":2,\"edges\":[[0,2]],\"authenticity\":\"real\",\"dataset\":\"x\",\"generator\":null}\n");
    EXPECT_THROW(read_jsonl(bad), ParseError);
    std::stringstream broken("not json\n");
    EXPECT_THROW(read_jsonl(broken), ParseError);
}

TEST(DegreeSequence, Examples) {
    EXPECT_EQ(degree_sequence(complete_graph(3)), (std::vector<std::size_t>{2, 2, 2}));
    EXPECT_EQ(degree_sequence(star_graph(3)), (std::vector<std::size_t>{3, 1, 1, 1}));
    EXPECT_EQ(degree_sequence(edgeless_graph(4)), (std::vector<std::size_t>{0, 0, 0, 0}));
}

TEST(DegreeSequence, SumIsTwiceEdgeCount) {
    Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
        const Graph g = random_graph(rng, 1, 20, rng.uniform());
        const auto d = degree_sequence(g);
        ASSERT_EQ(d.size(), g.node_count());
        ASSERT_EQ(std::accumulate(d.begin(), d.end(), std::size_t{0}), 2 * g.edge_count());
    }
}

TEST(ConnectedComponents, Examples) {
    const Graph tri_iso(4, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(connected_components(tri_iso), (std::vector<std::vector<NodeId>>{{0, 1, 2}, {3}}));
    const auto path = connected_components(path_graph(5));
    ASSERT_EQ(path.size(), 1u);
    EXPECT_EQ(path[0].size(), 5u);
    EXPECT_TRUE(connected_components(Graph(0, {})).empty());
}

TEST(ConnectedComponents, PartitionProperty) {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const Graph g = random_graph(rng, 1, 15, 0.15);
        const auto comps = connected_components(g);
        std::vector<int> owner(g.node_count(), -1);
        for (std::size_t c = 0; c < comps.size(); ++c) {
            for (auto u : comps[c]) {
                ASSERT_EQ(owner[u], -1);
                owner[u] = static_cast<int>(c);
            }
        }
        for (int o : owner) ASSERT_GE(o, 0);
        for (const auto& e : g.edges()) ASSERT_EQ(owner[e.u], owner[e.v]);
    }
}

TEST(SplitCorpus, SizesAndDisjointness) {
    Rng rng(1);
    std::vector<Graph> graphs;
    for (int i = 0; i < 100; ++i) graphs.push_back(random_graph(rng));
    const Corpus c = corpus_of(graphs, Authenticity::Real);
    const Split s = split_corpus(c, 0.8, 42);
    EXPECT_EQ(s.train.size(), 80u);
    EXPECT_EQ(s.test.size(), 20u);
    std::multiset<std::string> seen;
    for (const auto& item : s.train) seen.insert(identity_key(item));
    for (const auto& item : s.test) EXPECT_EQ(seen.count(identity_key(item)), 0u);
    for (const auto& item : s.test) seen.insert(identity_key(item));
    std::multiset<std::string> all;
    for (const auto& item : c) all.insert(identity_key(item));
    EXPECT_EQ(seen, all);

    const Split again = split_corpus(c, 0.8, 42);
    EXPECT_EQ(again.train, s.train);
    EXPECT_EQ(again.test, s.test);
    EXPECT_NE(split_corpus(c, 0.8, 43).train, s.train);
}

TEST(SplitCorpus, RoundingAndErrors) {
    const Corpus five = corpus_of(std::vector<Graph>(5, path_graph(2)), Authenticity::Real);
    const Split s = split_corpus(five, 0.8, 0);
    EXPECT_EQ(s.train.size(), 4u);
    EXPECT_EQ(s.test.size(), 1u);
    const Corpus one = corpus_of({path_graph(2)}, Authenticity::Real);
    EXPECT_THROW(split_corpus(one, 0.8, 0), SplitError);
}

TEST(RelabelNodes, Examples) {
    const Graph tri = complete_graph(3);
    const std::vector<NodeId> id{0, 1, 2};
    EXPECT_EQ(relabel_nodes(tri, id), tri);
    const std::vector<NodeId> p{2, 0, 1};
    EXPECT_EQ(relabel_nodes(tri, p), tri);
    const std::vector<NodeId> rev{2, 1, 0};
    EXPECT_EQ(relabel_nodes(path_graph(3), rev), path_graph(3));
    const Graph g(3, {{0, 1}});
    EXPECT_EQ(relabel_nodes(g, rev), Graph(3, {{1, 2}}));
    const std::vector<NodeId> bad{0, 0, 1};
    EXPECT_THROW(relabel_nodes(tri, bad), ArgumentError);
    const std::vector<NodeId> short_perm{0, 1};
    EXPECT_THROW(relabel_nodes(tri, short_perm), ArgumentError);
}

TEST(RelabelNodes, PreservesDegreeMultiset) {
    Rng rng(9);
    for (int t = 0; t < 200; ++t) {
        const Graph g = random_graph(rng);
        const auto perm = random_permutation(g.node_count(), rng);
        const Graph h = relabel_nodes(g, perm);
        ASSERT_EQ(h.edge_count(), g.edge_count());
        for (const auto& e : g.edges()) ASSERT_TRUE(h.has_edge(perm[e.u], perm[e.v]));
    }
}

TEST(InducedSubgraph, ReindexesNodes) {
    const Graph g = path_graph(5);
    const std::vector<NodeId> nodes{1, 2, 4};
    EXPECT_EQ(induced_subgraph(g, nodes), Graph(3, {{0, 1}}));
}
