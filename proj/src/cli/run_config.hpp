#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fockcap::cli {

/**
 * Fully-resolved invocation: subcommand, raw string parameters, output sink.
 * Built by merging (in order) a JSON config file, --set overrides, and the
 * dedicated flags; unknown top-level config keys are rejected here, unknown
 * params when the command consumes them.
 */
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> params;
    std::string output_path;  // empty means stdout
    std::string format = "csv";
    std::uint64_t seed = 0;
};

RunConfig load_run_config(const std::string& command, const std::string& config_path,
                          const std::vector<std::string>& set_overrides);

/** One table cell: a double or a short string tag. */
struct Cell {
    double num = 0.0;
    std::string text;
    bool is_text = false;

    static Cell number(double v) { return Cell{v, {}, false}; }
    static Cell word(std::string s) { return Cell{0.0, std::move(s), true}; }
    static Cell flag(bool b) { return Cell{b ? 1.0 : 0.0, {}, false}; }
};

/**
 * Every command emits one of these; meta lines ride along in insertion order
 * so repeated runs serialize byte-identically.
 */
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> meta;

    void set_meta(const std::string& key, const std::string& value);
};

// shortest representation that round-trips a double exactly
std::string format_g17(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

struct CommandOutcome {
    Table table;
    int exit_code = 0;
};

CommandOutcome run_command(const RunConfig& cfg);

// Serialize and write the outcome; returns the final process exit code.
int run_cli(const RunConfig& cfg);

}  // namespace fockcap::cli
