#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace ggd::cli {

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string profile = "desk";
    int verbosity = 0;
};

// Registers every subcommand on `app`; the returned callback runs the one
// that was selected after parsing.
struct Commands {
    std::map<std::string, std::function<void()>> handlers;
};

void register_commands(CLI::App& app, GlobalOptions& global, Commands& commands);

// Fully resolved options of the selected subcommand as one JSON object.
std::string resolved_config(const CLI::App& app, const GlobalOptions& global);

}  // namespace ggd::cli
