#pragma once

#include <cstdint>
#include <ctime>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "resonet/config.hpp"
#include "resonet/errors.hpp"
#include "resonet/version.hpp"

#include <json.hpp>

namespace resonet {

struct ResultTable {
    std::string name;
    std::vector<std::string> columns; // header names (unit-suffixed)
    std::vector<std::string> units;   // declared unit per column
    std::vector<std::vector<double>> rows;
};

struct ResultBundle {
    std::string experiment;
    std::string config_hash;
    std::string tool_version;
    std::string wall_time; // ISO-8601 UTC; deliberately outside all
                           // byte-stability guarantees
    std::vector<ResultTable> tables;
    std::vector<std::pair<std::string, double>> summary;
};

enum class OutputFormat { csv, json };

inline OutputFormat parse_output_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw invalid_argument_error("unknown output format '" + s + "' (csv|json)");
}

inline std::string fnv1a_hash(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

inline std::string wall_time_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

// Write-to-temp-then-rename so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline std::string render_csv(const ResultTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += cfg::format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::ordered_json bundle_to_json(const ResultBundle& b,
                                             bool include_rows = true) {
    nlohmann::ordered_json j;
    j["experiment"] = b.experiment;
    j["metadata"] = {{"config_hash", b.config_hash},
                     {"tool_version", b.tool_version},
                     {"wall_time", b.wall_time}};
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : b.summary) summary[k] = v;
    j["summary"] = summary;
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : b.tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["columns"] = t.columns;
        jt["units"] = t.units;
        if (include_rows)
            jt["rows"] = t.rows;
        else
            jt["file"] = t.name + ".csv";
        j["tables"].push_back(jt);
    }
    return j;
}

// csv: one .csv per table plus summary.json (metadata, summary, column
// units). json: a single results.json with the rows inline. Every file is
// written atomically; output is byte-stable across runs except wall_time.
inline void emit_results(const ResultBundle& b, const std::filesystem::path& dir,
                         OutputFormat format) {
    std::filesystem::create_directories(dir);
    if (format == OutputFormat::json) {
        atomic_write(dir / "results.json", bundle_to_json(b, true).dump(2) + "\n");
        return;
    }
    for (const auto& t : b.tables) atomic_write(dir / (t.name + ".csv"), render_csv(t));
    atomic_write(dir / "summary.json", bundle_to_json(b, false).dump(2) + "\n");
}

} // namespace resonet
