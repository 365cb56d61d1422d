#include "cdm/storage.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cdm {

namespace {

[[noreturn]] void malformed(std::size_t line_no, const std::string& reason) {
    throw Error(Errc::malformed_record,
                "line " + std::to_string(line_no) + ": " + reason);
}

// Cursor over one record line.
struct LineScanner {
    const std::string& line;
    std::size_t line_no;
    std::size_t pos = 0;

    bool at_end() const { return pos >= line.size(); }

    void expect_space() {
        if (at_end() || line[pos] != ' ') malformed(line_no, "expected a single space separator");
        ++pos;
    }

    std::string word() {
        std::size_t start = pos;
        while (!at_end() && line[pos] != ' ') ++pos;
        return line.substr(start, pos - start);
    }

    std::uint64_t number(const char* what) {
        std::size_t start = pos;
        while (!at_end() && line[pos] >= '0' && line[pos] <= '9') ++pos;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + pos, value);
        if (ec != std::errc() || ptr != line.data() + pos || start == pos)
            malformed(line_no, std::string("invalid ") + what);
        return value;
    }

    std::string quoted_label() {
        if (at_end() || line[pos] != '"') malformed(line_no, "expected quoted label");
        ++pos;
        std::string out;
        while (true) {
            if (at_end()) malformed(line_no, "unterminated label");
            char c = line[pos++];
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) malformed(line_no, "dangling escape in label");
                char e = line[pos++];
                switch (e) {
                    case '\\': out += '\\'; break;
                    case '"': out += '"'; break;
                    case 'n': out += '\n'; break;
                    default: malformed(line_no, "unsupported escape in label");
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    void expect_end() {
        if (!at_end()) malformed(line_no, "trailing content after record");
    }
};

}  // namespace

std::size_t write_log(const Model& m, std::ostream& sink) {
    std::size_t bytes = 0;
    for (const LogRecord& r : m.log()) {
        std::string line = format_record(r);
        line += '\n';
        sink.write(line.data(), static_cast<std::streamsize>(line.size()));
        bytes += line.size();
    }
    sink.flush();
    if (!sink) throw Error(Errc::io_error, "log sink write failed");
    return bytes;
}

std::string write_log(const Model& m) {
    std::ostringstream out;
    write_log(m, out);
    return out.str();
}

LogRecord parse_record(const std::string& line, std::size_t line_no) {
    LineScanner scan{line, line_no};
    std::string kind = scan.word();
    if (kind == "T") {
        scan.expect_space();
        Tick tick = scan.number("tick");
        scan.expect_space();
        ThingId id = scan.number("thing id");
        scan.expect_space();
        std::string label = scan.quoted_label();
        scan.expect_end();
        return LogRecord::thing(tick, id, std::move(label));
    }
    if (kind == "A" || kind == "RA") {
        scan.expect_space();
        Tick tick = scan.number("tick");
        scan.expect_space();
        ThingId member = scan.number("member id");
        scan.expect_space();
        ThingId owner = scan.number("owner id");
        scan.expect_end();
        return kind == "A" ? LogRecord::assoc(tick, member, owner)
                           : LogRecord::drop_assoc(tick, member, owner);
    }
    if (kind == "RT") {
        scan.expect_space();
        Tick tick = scan.number("tick");
        scan.expect_space();
        ThingId id = scan.number("thing id");
        scan.expect_end();
        return LogRecord::drop_thing(tick, id);
    }
    malformed(line_no, "unknown record type \"" + kind + "\"");
}

Model replay(std::istream& source) {
    std::ostringstream buffer;
    buffer << source.rdbuf();
    return replay(buffer.str());
}

Model replay(const std::string& text) {
    Model m;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            malformed(line_no, "unterminated record (missing newline)");
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) malformed(line_no, "empty record line");

        LogRecord record = parse_record(line, line_no);
        try {
            m.apply_record(record);
        } catch (const Error& e) {
            throw Error(Errc::invariant_violation,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return m;
}

namespace {

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::size_t export_dot(const Model& m, std::ostream& sink) {
    std::string out = export_dot(m);
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    sink.flush();
    if (!sink) throw Error(Errc::io_error, "dot sink write failed");
    return out.size();
}

std::string export_dot(const Model& m) {
    std::string out = "digraph cdm {\n";
    for (const auto& [id, thing] : m.things()) {
        if (!thing.alive) continue;
        out += "  n" + std::to_string(id) + " [label=\"" + dot_escape(thing.label) + "\"];\n";
    }
    for (const AssociationEvent& e : m.events()) {
        if (!e.alive) continue;
        out += "  n" + std::to_string(e.member) + " -> n" + std::to_string(e.owner) +
               " [label=\"t" + std::to_string(e.tick) + "\"];\n";
    }
    out += "}\n";
    return out;
}

Model load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open log file: " + path.string());
    return replay(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

}  // namespace cdm
