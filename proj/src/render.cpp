#include <json.hpp>

#include "cdm/cql.hpp"

namespace cdm {

namespace {

std::string join_labels(const std::vector<std::string>& labels, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += sep;
        out += labels[i];
    }
    return out;
}

}  // namespace

std::string render_text(const ResultSet& r) {
    std::string out;
    switch (r.kind) {
        case ResultSet::Kind::ack:
            out = "ack t" + std::to_string(r.ack_tick);
            if (r.has_cascaded) out += " (cascaded " + std::to_string(r.cascaded) + ")";
            out += "\n";
            break;
        case ResultSet::Kind::names:
            for (const std::string& name : r.names) out += name + "\n";
            break;
        case ResultSet::Kind::paths:
            for (const auto& path : r.label_paths) out += "path: " + join_labels(path, " -- ") + "\n";
            out += "unique: " + std::string(r.unique ? "true" : "false") + "\n";
            if (r.truncated) out += "truncated: true\n";
            break;
        case ResultSet::Kind::trace:
            for (const auto& line : r.trace_lines) {
                out += "t" + std::to_string(line.tick) + " " + line.kind;
                if (!line.counterpart.empty()) out += " \"" + line.counterpart + "\"";
                out += "\n";
            }
            break;
        case ResultSet::Kind::report:
            for (const std::string& e : r.report.errors) out += "error: " + e + "\n";
            for (const auto& cycle : r.report.directed_cycles)
                out += "warning: directed cycle: " + join_labels(cycle, " -> ") + "\n";
            for (const auto& [a, b] : r.report.non_unique_paths)
                out += "warning: non-unique paths between \"" + a + "\" and \"" + b + "\"\n";
            out += "components: " + std::to_string(r.report.components) + "\n";
            break;
        case ResultSet::Kind::table:
            for (const auto& [key, value] : r.table)
                out += key + ": " + std::to_string(value) + "\n";
            break;
        case ResultSet::Kind::wrote:
            out = "wrote " + r.wrote_path + " (" + std::to_string(r.wrote_bytes) + " bytes)\n";
            break;
    }
    return out;
}

std::string render_json(const ResultSet& r) {
    nlohmann::ordered_json j;
    switch (r.kind) {
        case ResultSet::Kind::ack:
            j["ack"] = r.ack_tick;
            if (r.has_cascaded) j["cascaded"] = r.cascaded;
            break;
        case ResultSet::Kind::names:
            j["names"] = r.names;
            break;
        case ResultSet::Kind::paths:
            j["paths"] = r.label_paths;
            j["unique"] = r.unique;
            j["truncated"] = r.truncated;
            break;
        case ResultSet::Kind::trace: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& line : r.trace_lines) {
                nlohmann::ordered_json e;
                e["tick"] = line.tick;
                e["kind"] = line.kind;
                if (!line.counterpart.empty()) e["counterpart"] = line.counterpart;
                arr.push_back(std::move(e));
            }
            j["trace"] = std::move(arr);
            break;
        }
        case ResultSet::Kind::report: {
            j["errors"] = r.report.errors;
            j["directed_cycles"] = r.report.directed_cycles;
            auto pairs = nlohmann::ordered_json::array();
            for (const auto& [a, b] : r.report.non_unique_paths)
                pairs.push_back(nlohmann::ordered_json::array({a, b}));
            j["non_unique_paths"] = std::move(pairs);
            j["components"] = r.report.components;
            break;
        }
        case ResultSet::Kind::table:
            for (const auto& [key, value] : r.table) j[key] = value;
            break;
        case ResultSet::Kind::wrote:
            j["wrote"] = r.wrote_path;
            j["bytes"] = r.wrote_bytes;
            break;
    }
    return j.dump() + "\n";
}

}  // namespace cdm
