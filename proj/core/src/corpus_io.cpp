#include "ggd/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "ggd/error.hpp"

namespace ggd {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view text, const std::string& where) {
    text = trim(text);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(where + ": expected integer, got '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Corpus parse_tudataset(const fs::path& directory, ParseStats* stats) {
    fs::path dir = directory;
    if (dir.filename().empty()) dir = dir.parent_path();
    const std::string name = dir.filename().string();
    const fs::path edge_file = dir / (name + "_A.txt");
    const fs::path indicator_file = dir / (name + "_graph_indicator.txt");
    if (!fs::exists(indicator_file)) throw ParseError("missing file " + indicator_file.string());
    if (!fs::exists(edge_file)) throw ParseError("missing file " + edge_file.string());

    // node (0-based global) -> graph id
    std::vector<std::int64_t> graph_of;
    {
        std::ifstream in(indicator_file);
        if (!in) throw IoError("cannot open " + indicator_file.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            graph_of.push_back(parse_int(line, indicator_file.filename().string() + ":" +
                                                   std::to_string(line_no)));
        }
    }

    std::map<std::int64_t, std::size_t> graph_slot;
    for (auto id : graph_of) graph_slot.emplace(id, 0);
    std::size_t slot = 0;
    for (auto& [id, s] : graph_slot) s = slot++;

    std::vector<std::size_t> node_counts(graph_slot.size(), 0);
    std::vector<NodeId> local_index(graph_of.size());
    std::vector<std::size_t> owner(graph_of.size());
    for (std::size_t v = 0; v < graph_of.size(); ++v) {
        owner[v] = graph_slot[graph_of[v]];
        local_index[v] = static_cast<NodeId>(node_counts[owner[v]]++);
    }

    std::vector<std::vector<Edge>> edges(graph_slot.size());
    std::vector<std::set<Edge>> seen(graph_slot.size());
    ParseStats local;
    {
        std::ifstream in(edge_file);
        if (!in) throw IoError("cannot open " + edge_file.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string_view view = trim(line);
            if (view.empty()) continue;
            const auto comma = view.find(',');
            const std::string where = edge_file.filename().string() + ":" + std::to_string(line_no);
            if (comma == std::string_view::npos) throw ParseError(where + ": expected 'u, v'");
            const auto a = parse_int(view.substr(0, comma), where);
            const auto b = parse_int(view.substr(comma + 1), where);
            for (auto x : {a, b}) {
                if (x < 1 || static_cast<std::size_t>(x) > graph_of.size()) {
                    throw ParseError(where + ": node " + std::to_string(x) +
                                     " has no graph indicator entry");
                }
            }
            const auto u = static_cast<std::size_t>(a - 1);
            const auto v = static_cast<std::size_t>(b - 1);
            if (owner[u] != owner[v]) throw ParseError(where + ": edge crosses two graphs");
            if (u == v) {
                ++local.self_loops_dropped;
                continue;
            }
            Edge e{std::min(local_index[u], local_index[v]), std::max(local_index[u], local_index[v])};
            if (!seen[owner[u]].insert(e).second) {
                ++local.duplicate_edges_dropped;
                continue;
            }
            edges[owner[u]].push_back(e);
        }
    }

    Corpus corpus;
    corpus.items.reserve(graph_slot.size());
    for (std::size_t gi = 0; gi < graph_slot.size(); ++gi) {
        corpus.items.push_back(
            make_real(Graph(node_counts[gi], std::move(edges[gi])), name, static_cast<std::int64_t>(gi)));
    }
    if (stats) *stats = local;
    return corpus;
}

std::string to_jsonl_line(const LabeledGraph& item) {
    ordered_json j;
    j["n"] = item.graph.node_count();
    auto edges = ordered_json::array();
    for (const auto& e : item.graph.edges()) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    j["authenticity"] = std::string(to_string(item.authenticity));
    j["dataset"] = item.dataset_id;
    j["generator"] = item.generator_id ? ordered_json(*item.generator_id) : ordered_json(nullptr);
    j["index"] = item.source_index;
    return j.dump();
}

LabeledGraph from_jsonl_line(std::string_view line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        const auto n = j.at("n").get<std::int64_t>();
        if (n <= 0) throw ParseError("graphs must have at least one node");
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a [u, v] pair");
            edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
        }
        LabeledGraph item;
        try {
            item.graph = Graph(static_cast<std::size_t>(n), std::move(edges));
        } catch (const ArgumentError& e) {
            throw ParseError(e.what());
        }
        item.authenticity = parse_authenticity(j.at("authenticity").get<std::string>());
        item.dataset_id = j.at("dataset").get<std::string>();
        if (j.contains("generator") && !j["generator"].is_null()) {
            item.generator_id = j["generator"].get<std::string>();
        }
        item.source_index = j.value("index", std::int64_t{-1});
        try {
            check_labels(item);
        } catch (const ArgumentError& e) {
            throw ParseError(e.what());
        }
        return item;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed corpus record: ") + e.what());
    }
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& item : corpus) out << to_jsonl_line(item) << '\n';
}

Corpus read_jsonl(std::istream& in, std::uint64_t seed) {
    Corpus corpus;
    corpus.seed = seed;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            corpus.items.push_back(from_jsonl_line(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return corpus;
}

void write_jsonl(const fs::path& path, const Corpus& corpus) {
    std::ostringstream out;
    write_jsonl(out, corpus);
    write_file_atomic(path, out.str());
}

Corpus read_jsonl(const fs::path& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read_jsonl(in, seed);
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace ggd
