#include "run_config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fockcap::cli {

namespace {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::uint64_t parse_seed(const std::string& s) {
    if (s.empty()) fail("seed must be a nonnegative integer");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos, 10);
    } catch (const std::exception&) {
        fail("seed must be a nonnegative integer: " + s);
    }
    if (pos != s.size()) fail("seed must be a nonnegative integer: " + s);
    return std::uint64_t(v);
}

std::string scalar_to_string(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) return format_g17(v.get<double>());
    fail("config values must be scalars");
    return {};
}

void apply_pair(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "format") {
        if (value != "csv" && value != "json") fail("format must be csv or json");
        cfg.format = value;
    } else if (key == "output") {
        cfg.output_path = value;
    } else if (key == "seed") {
        cfg.seed = parse_seed(value);
    } else if (key == "command") {
        if (!cfg.command.empty() && value != cfg.command)
            fail("config file names command '" + value + "' but '" + cfg.command +
                 "' was invoked");
    } else {
        cfg.params[key] = value;
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string cell_to_csv(const Cell& c) {
    if (!c.is_text) return format_g17(c.num);
    // column tags are plain words; quote defensively if one ever is not
    if (c.text.find_first_of(",\"\n") == std::string::npos) return c.text;
    std::string quoted = "\"";
    for (char ch : c.text) {
        if (ch == '"') quoted += "\"\"";
        else quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string cell_to_json(const Cell& c) {
    if (c.is_text) return "\"" + json_escape(c.text) + "\"";
    if (!std::isfinite(c.num)) return "null";
    return format_g17(c.num);
}

}  // namespace

void Table::set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : meta)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    meta.emplace_back(key, value);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunConfig load_run_config(const std::string& command, const std::string& config_path,
                          const std::vector<std::string>& set_overrides) {
    RunConfig cfg;
    cfg.command = command;

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) fail("cannot open config file: " + config_path);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const std::exception& e) {
            fail(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) fail("config file must hold a JSON object");
        for (const auto& [key, value] : doc.items()) {
            if (key == "params") {
                if (!value.is_object()) fail("config 'params' must be an object");
                for (const auto& [pk, pv] : value.items())
                    apply_pair(cfg, pk, scalar_to_string(pv));
            } else if (key == "format" || key == "output" || key == "seed" ||
                       key == "command") {
                apply_pair(cfg, key, scalar_to_string(value));
            } else {
                fail("unknown config key: " + key +
                     " (top level allows command/format/output/seed/params)");
            }
        }
    }

    for (const std::string& kv : set_overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            fail("--set expects key=value, got: " + kv);
        apply_pair(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }

    return cfg;
}

std::string to_csv(const Table& t) {
    std::ostringstream out;
    for (const auto& [key, value] : t.meta) out << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out << ",";
        out << t.columns[c];
    }
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            out << cell_to_csv(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

std::string to_json(const Table& t) {
    std::ostringstream out;
    out << "{\n  \"meta\": {";
    for (std::size_t i = 0; i < t.meta.size(); ++i) {
        if (i) out << ",";
        out << "\n    \"" << json_escape(t.meta[i].first) << "\": \""
            << json_escape(t.meta[i].second) << "\"";
    }
    out << "\n  },\n  \"columns\": [";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out << ", ";
        out << "\"" << json_escape(t.columns[c]) << "\"";
    }
    out << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out << ",";
        out << "\n    [";
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            if (c) out << ", ";
            out << cell_to_json(t.rows[r][c]);
        }
        out << "]";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

int run_cli(const RunConfig& cfg) {
    CommandOutcome outcome = run_command(cfg);
    std::string payload =
        cfg.format == "json" ? to_json(outcome.table) : to_csv(outcome.table);
    if (cfg.output_path.empty()) {
        std::cout << payload;
        std::cout.flush();
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) fail("cannot open output file: " + cfg.output_path);
        out << payload;
        if (!out) throw std::runtime_error("failed writing output file: " + cfg.output_path);
    }
    return outcome.exit_code;
}

}  // namespace fockcap::cli
