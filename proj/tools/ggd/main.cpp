#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "ggd/error.hpp"
#include "ggd/parallel.hpp"

namespace {

// Exit codes: 2 usage, 3 I/O or unreadable input, 4 invalid configuration
// or arguments, 5 training failure, 1 anything else.
int exit_code_for(const std::string& kind) {
    if (kind == "IoError" || kind == "ParseError") return 3;
    if (kind == "ConfigError" || kind == "ArgumentError" || kind == "SplitError" || kind == "PairError" ||
        kind == "ShapeError" || kind == "LeakError") {
        return 4;
    }
    if (kind == "TrainError") return 5;
    return 1;
}

int report(const std::string& kind, const std::string& message, int code) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["exit_code"] = code;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ggd: generated graph detection toolkit"};
    app.require_subcommand(1);
    ggd::cli::GlobalOptions global;
    app.add_option("--seed", global.seed, "Experiment seed; every sub-seed is derived from it")
        ->capture_default_str();
    app.add_option("--threads", global.threads, "Worker threads; 0 uses every hardware thread")
        ->capture_default_str();
    app.add_option("--profile", global.profile, "Default settings: desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}))
        ->capture_default_str();
    app.add_flag("-v,--verbose", global.verbosity, "Print progress to standard error; repeatable");

    ggd::cli::Commands commands;
    ggd::cli::register_commands(app, global, commands);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        return report("UsageError", e.what(), 2);
    }

    try {
        ggd::set_thread_count(global.threads);
        std::cerr << "config " << ggd::cli::resolved_config(app, global) << '\n';
        const CLI::App* current = &app;
        while (!current->get_subcommands().empty()) current = current->get_subcommands().front();
        commands.handlers.at(current->get_name())();
        return 0;
    } catch (const ggd::Error& e) {
        return report(e.kind(), e.what(), exit_code_for(e.kind()));
    } catch (const std::filesystem::filesystem_error& e) {
        return report("IoError", e.what(), 3);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), 1);
    }
}
