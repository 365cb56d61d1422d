#include "cdm/record.hpp"

#include <cstdio>

namespace cdm {

std::string escape_label(const std::string& label) {
    std::string out;
    out.reserve(label.size() + 2);
    for (char c : label) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

std::string format_record(const LogRecord& r) {
    std::string out;
    switch (r.kind) {
        case RecordKind::thing_created:
            out = "T " + std::to_string(r.tick) + " " + std::to_string(r.id) +
                  " \"" + escape_label(r.label) + "\"";
            break;
        case RecordKind::associated:
            out = "A " + std::to_string(r.tick) + " " + std::to_string(r.member) +
                  " " + std::to_string(r.owner);
            break;
        case RecordKind::thing_removed:
            out = "RT " + std::to_string(r.tick) + " " + std::to_string(r.id);
            break;
        case RecordKind::association_removed:
            out = "RA " + std::to_string(r.tick) + " " + std::to_string(r.member) +
                  " " + std::to_string(r.owner);
            break;
    }
    return out;
}

std::string to_hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace cdm
