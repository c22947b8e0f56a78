#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ggd/graph.hpp"

namespace ggd {

struct ParseStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
};

// Reads a TUDataset directory `<dir>/<DS>_A.txt` + `<dir>/<DS>_graph_indicator.txt`
// where DS is the directory name. Node and edge attribute files are ignored.
Corpus parse_tudataset(const std::filesystem::path& directory, ParseStats* stats = nullptr);

// Internal corpus format: one JSON object per line,
// {"n":int,"edges":[[u,v],...],"authenticity":str,"dataset":str,"generator":str|null,"index":int}
std::string to_jsonl_line(const LabeledGraph& item);
LabeledGraph from_jsonl_line(std::string_view line);

void write_jsonl(std::ostream& out, const Corpus& corpus);
Corpus read_jsonl(std::istream& in, std::uint64_t seed = 0);
void write_jsonl(const std::filesystem::path& path, const Corpus& corpus);
Corpus read_jsonl(const std::filesystem::path& path, std::uint64_t seed = 0);

// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace ggd
