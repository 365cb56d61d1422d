#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cdm {

// Global logical time. Every log record occupies exactly one tick and the
// sequence of ticks in a log is strictly increasing.
using Tick = std::uint64_t;

// Identifier of a thing. Ids start at 1 and are never reused within one
// model, even after the thing is removed.
using ThingId = std::uint64_t;

enum class RecordKind {
    thing_created,        // T <tick> <id> "<label>"
    associated,           // A <tick> <member> <owner>
    thing_removed,        // RT <tick> <id>
    association_removed,  // RA <tick> <member> <owner>
};

// One entry of the append-only log. The log is the source of truth: the
// whole model state is a deterministic fold over its records.
struct LogRecord {
    RecordKind kind;
    Tick tick = 0;
    ThingId id = 0;      // thing_created / thing_removed
    ThingId member = 0;  // associated / association_removed
    ThingId owner = 0;
    std::string label;   // thing_created only

    static LogRecord thing(Tick t, ThingId id, std::string label) {
        LogRecord r{RecordKind::thing_created, t};
        r.id = id;
        r.label = std::move(label);
        return r;
    }
    static LogRecord assoc(Tick t, ThingId member, ThingId owner) {
        LogRecord r{RecordKind::associated, t};
        r.member = member;
        r.owner = owner;
        return r;
    }
    static LogRecord drop_thing(Tick t, ThingId id) {
        LogRecord r{RecordKind::thing_removed, t};
        r.id = id;
        return r;
    }
    static LogRecord drop_assoc(Tick t, ThingId member, ThingId owner) {
        LogRecord r{RecordKind::association_removed, t};
        r.member = member;
        r.owner = owner;
        return r;
    }

    bool operator==(const LogRecord&) const = default;
};

// Canonical one-line text form of a record, LF not included. Labels are
// double quoted; the escape set is \" \\ \n, matching query-language
// string literals.
std::string format_record(const LogRecord& record);

std::string escape_label(const std::string& label);

// 64-bit FNV-1a, the digest behind state hashes. Public reference
// parameters: offset 0xcbf29ce484222325, prime 0x100000001b3.
inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = seed;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string to_hex64(std::uint64_t value);

}  // namespace cdm
