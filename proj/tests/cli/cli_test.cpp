// Runs the ggd executable end to end.

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("ggd_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path at(const std::string& name) const { return dir_ / name; }

    Result ggd(const std::string& args) const {
        const auto out = dir_ / "stdout.txt";
        const auto err = dir_ / "stderr.txt";
        const std::string cmd = std::string("'") + GGD_BINARY + "' " + args + " >'" + out.string() + "' 2>'" +
                                err.string() + "'";
        const int status = std::system(cmd.c_str());
        Result r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    // Cycles of 5-9 nodes as the real class.
    void write_reals(const fs::path& p, int count) const {
        std::string text;
        for (int i = 0; i < count; ++i) {
            const int n = 5 + i % 5;
            text += "{\"n\":" + std::to_string(n) + ",\"edges\":[";
            for (int v = 0; v < n; ++v) {
                if (v) text += ",";
                text += "[" + std::to_string(v) + "," + std::to_string((v + 1) % n) + "]";
            }
            text += "],\"authenticity\":\"real\",\"dataset\":\"cycles\",\"generator\":null,\"index\":" +
                    std::to_string(i) + "}\n";
        }
        spit(p, text);
    }

    // Real cycles followed by dense ER samples.
    void write_training_set(const fs::path& p) {
        write_reals(at("reals.jsonl"), 40);
        Result r = ggd("--seed 3 generate --kind ER --param p=0.7 --reference '" + at("reals.jsonl").string() +
                    "' --count 40 --out '" + at("fakes.jsonl").string() + "'");
        ASSERT_EQ(r.code, 0) << r.err;
        spit(p, slurp(at("reals.jsonl")) + slurp(at("fakes.jsonl")));
        spit(at("detector.json"),
             R"({"widths":[16,16,16,128],"epochs":5,"contrastive_epochs":3,"classifier_epochs":50,)"
             R"("n_ps":200,"n_k":5,"reference_cap":10,"feature_epochs":20})");
    }

    fs::path dir_;
};

std::set<std::string> long_flags(const std::string& text) {
    std::set<std::string> flags;
    const std::regex re("--[a-z][a-z0-9-]*");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
        flags.insert(it->str());
    }
    flags.erase("--help");
    return flags;
}

// Sections of the CLI document keyed by their "### " heading.
std::map<std::string, std::string> doc_sections() {
    const std::string doc = slurp(GGD_CLI_DOC);
    std::map<std::string, std::string> sections;
    std::string current = "global";
    std::istringstream in(doc);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("### ", 0) == 0) {
            current = line.substr(4);
            continue;
        }
        if (line.rfind("## ", 0) == 0 && line.find("Global") == std::string::npos) current = "";
        if (!current.empty() && line.rfind("|", 0) == 0) sections[current] += line + "\n";
    }
    return sections;
}

}  // namespace

TEST_F(Cli, EveryFlagIsDocumentedAndEveryDocumentedFlagExists) {
    const auto sections = doc_sections();
    const std::vector<std::string> commands{"import", "generate",    "stats", "filter", "mmd",
                                            "train",  "predict",     "embed", "scenario run", "sweep",
                                            "attribution"};
    for (const auto& c : commands) {
        const Result r = ggd(c + " --help");
        ASSERT_EQ(r.code, 0) << c;
        const auto from_help = long_flags(r.out.substr(r.out.find("Options:")));
        ASSERT_TRUE(sections.count(c)) << "no section for " << c;
        EXPECT_EQ(long_flags(sections.at(c)), from_help) << c;
    }
    const Result top = ggd("--help");
    auto global_help = top.out.substr(top.out.find("Options:"));
    global_help = global_help.substr(0, global_help.find("Subcommands:"));
    EXPECT_EQ(long_flags(sections.at("global")), long_flags(global_help));
}

TEST_F(Cli, ExitCodes) {
    Result r = ggd("stats --in");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("\"exit_code\":2"), std::string::npos) << r.err;
    EXPECT_EQ(ggd("frobnicate").code, 2);
    EXPECT_EQ(ggd("--help").code, 0);

    r = ggd("stats --in '" + at("missing.jsonl").string() + "' --out '" + at("s.csv").string() + "'");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("\"error\":\"IoError\""), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(at("s.csv")));

    spit(at("bad.jsonl"), "{\"n\":3,\"edges\":[[0,7]]}\n");
    EXPECT_EQ(ggd("stats --in '" + at("bad.jsonl").string() + "' --out '" + at("s.csv").string() + "'").code, 3);

    spit(at("bad_config.json"), R"({"no_such_key":1})");
    r = ggd("scenario run --config '" + at("bad_config.json").string() + "' --out '" + at("r.csv").string() + "'");
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("ConfigError"), std::string::npos) << r.err;

    write_reals(at("reals.jsonl"), 10);
    r = ggd("train --model e2e --train '" + at("reals.jsonl").string() + "' --out '" + at("m.bin").string() + "'");
    EXPECT_EQ(r.code, 5) << r.err;
    EXPECT_FALSE(fs::exists(at("m.bin")));

    r = ggd("generate --kind ER --param p=0.5 --param n=5 --count 2 --model-in x --out '" + at("g.jsonl").string() +
            "'");
    EXPECT_EQ(r.code, 4) << r.err;
}

TEST_F(Cli, PrintsResolvedConfig) {
    write_reals(at("reals.jsonl"), 3);
    const Result r = ggd("--seed 11 stats --in '" + at("reals.jsonl").string() + "' --out '" + at("s.csv").string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.err.rfind("config {", 0), 0u) << r.err;
    EXPECT_NE(r.err.find("\"seed\":11"), std::string::npos);
    EXPECT_NE(r.err.find("\"command\":\"stats\""), std::string::npos);
}

TEST_F(Cli, SampleIndicesAreStableAcrossChunks) {
    const std::string base = "--seed 5 generate --kind WS --param k=4 --param beta=0.2 --param n=12 ";
    ASSERT_EQ(ggd(base + "--count 6 --out '" + at("all.jsonl").string() + "'").code, 0);
    ASSERT_EQ(ggd(base + "--count 3 --out '" + at("a.jsonl").string() + "'").code, 0);
    ASSERT_EQ(ggd(base + "--count 3 --first-index 3 --out '" + at("b.jsonl").string() + "'").code, 0);
    EXPECT_EQ(slurp(at("all.jsonl")), slurp(at("a.jsonl")) + slurp(at("b.jsonl")));
}

TEST_F(Cli, SameSeedGivesIdenticalBytes) {
    write_training_set(at("train.jsonl"));
    const std::string train = at("train.jsonl").string();
    const std::string cfg = at("detector.json").string();
    auto pipeline = [&](const std::string& tag) {
        auto f = [&](const std::string& name) { return "'" + at(tag + name).string() + "'"; };
        std::vector<std::string> cmds{
            "generate --kind VGAE --param epochs=3 --reference '" + at("reals.jsonl").string() +
                "' --count 10 --out " + f("vgae.jsonl") + " --model-out " + f("vgae.bin"),
            "stats --in '" + train + "' --out " + f("stats.csv"),
            "filter --generated '" + at("fakes.jsonl").string() + "' --real '" + at("reals.jsonl").string() +
                "' --out " + f("filtered.jsonl"),
            "mmd --first '" + at("fakes.jsonl").string() + "' --second '" + at("reals.jsonl").string() + "' --out " +
                f("mmd.json"),
            "train --model e2e --train '" + train + "' --config '" + cfg + "' --out " + f("e2e.bin") + " --log " +
                f("e2e.log"),
            "train --model metric --train '" + train + "' --config '" + cfg + "' --out " + f("metric.bin"),
            "predict --model " + f("metric.bin") + " --in '" + train + "' --out " + f("pred.csv") +
                " --metrics-out " + f("metrics.json"),
            "embed --model " + f("e2e.bin") + " --in '" + train + "' --out " + f("embed.csv"),
        };
        for (const auto& c : cmds) {
            const Result r = ggd("--seed 9 " + c);
            ASSERT_EQ(r.code, 0) << c << "\n" << r.err;
        }
    };
    pipeline("one_");
    pipeline("two_");
    for (const std::string name : {"vgae.jsonl", "vgae.bin", "stats.csv", "filtered.jsonl", "mmd.json", "e2e.bin",
                                   "e2e.log", "metric.bin", "pred.csv", "metrics.json", "embed.csv"}) {
        const auto a = slurp(at("one_" + name));
        EXPECT_FALSE(a.empty()) << name;
        EXPECT_EQ(a, slurp(at("two_" + name))) << name;
    }
    const auto embed = slurp(at("one_embed.csv"));
    const auto header = embed.substr(0, embed.find('\n'));
    EXPECT_EQ(header.rfind("graph_id,dataset,authenticity,generator,e0,", 0), 0u);
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 4 + 127);

    const Result other = ggd("--seed 10 train --model e2e --train '" + train + "' --config '" + cfg + "' --out '" +
                          at("e2e_other.bin").string() + "'");
    ASSERT_EQ(other.code, 0);
    EXPECT_NE(slurp(at("e2e_other.bin")), slurp(at("one_e2e.bin")));
}

TEST_F(Cli, PredictMetricsMatchPredictionRows) {
    write_training_set(at("train.jsonl"));
    const std::string train = at("train.jsonl").string();
    ASSERT_EQ(ggd("train --model feature --train '" + train + "' --config '" + at("detector.json").string() +
                  "' --out '" + at("f.bin").string() + "'")
                  .code,
              0);
    ASSERT_EQ(ggd("predict --model '" + at("f.bin").string() + "' --in '" + train + "' --out '" +
                  at("p.csv").string() + "' --metrics-out '" + at("m.json").string() + "'")
                  .code,
              0);
    std::istringstream rows(slurp(at("p.csv")));
    std::string line;
    std::getline(rows, line);
    EXPECT_EQ(line, "graph_id,truth,predicted,p_real,p_generated");
    int n = 0, correct = 0;
    while (std::getline(rows, line)) {
        std::istringstream cells(line);
        std::string id, truth, predicted;
        std::getline(cells, id, ',');
        std::getline(cells, truth, ',');
        std::getline(cells, predicted, ',');
        ++n;
        correct += truth == predicted;
    }
    EXPECT_EQ(n, 80);
    const auto metrics = slurp(at("m.json"));
    char expected[64];
    std::snprintf(expected, sizeof expected, "%d", correct);
    const auto tp = metrics.find("\"tp\":");
    const auto tn = metrics.find("\"tn\":");
    ASSERT_NE(tp, std::string::npos);
    ASSERT_NE(tn, std::string::npos);
    EXPECT_EQ(std::stoi(metrics.substr(tp + 5)) + std::stoi(metrics.substr(tn + 5)), correct) << metrics;
}

TEST_F(Cli, ScenarioRunWritesOneRowPerCell) {
    const Result r = ggd("scenario run --config '" + std::string(GGD_CONFIG_DIR) + "/quick.json' --seeds 4,5 --out '" +
                      at("rows.csv").string() + "' --summary-out '" + at("summary.csv").string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("experiment {"), std::string::npos);
    const auto rows = slurp(at("rows.csv"));
    EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 1 + 2 * 2 * 2);
    EXPECT_EQ(rows.find("scenario,model,dataset_profile,seed,accuracy,f1,macro_f1,train_size,test_size,wall_ms\n"),
              0u);
    const auto summary = slurp(at("summary.csv"));
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 1 + 2 * 2);
}

TEST_F(Cli, SweepWritesOneRowPerValue) {
    const Result r = ggd("sweep --param n_k --values 1,3,5 --config '" + std::string(GGD_CONFIG_DIR) +
                      "/quick.json' --out '" + at("sweep.csv").string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(at("sweep.csv"));
    EXPECT_EQ(text.find("param,value,seeds,accuracy,f1,macro_f1\nn_k,1,"), 0u) << text;
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}
