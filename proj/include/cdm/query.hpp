#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdm/model.hpp"

namespace cdm {

enum class Direction {
    upward,     // follow member -> owner
    downward,   // follow owner -> member
    undirected, // follow both
};

struct PathLimits {
    std::size_t max_paths = 64;
    std::size_t max_length = 32;  // edges per path
};

struct PathReport {
    std::pair<ThingId, ThingId> endpoints;
    // Simple undirected paths as ThingId sequences, lexicographic order.
    std::vector<std::vector<ThingId>> paths;
    bool unique = false;     // exactly one path found
    bool truncated = false;  // enumeration hit a limit; counts are a lower bound
};

struct TraceEntry {
    enum class Kind { created, became_member, became_owner, event_tombstoned, removed };
    Tick tick = 0;
    Kind kind = Kind::created;
    ThingId counterpart = 0;  // the other endpoint, when kind involves an event

    bool operator==(const TraceEntry&) const = default;
};

struct ValidationReport {
    // Hard invariant violations found on the raw log. Always empty for a
    // model built through Model's own mutations.
    std::vector<std::string> errors;
    // Advisory findings on the alive graph.
    std::vector<std::vector<ThingId>> directed_cycles;
    std::vector<std::pair<ThingId, ThingId>> non_unique_paths;
    std::size_t components = 0;

    bool ok() const { return errors.empty(); }
};

struct ModelStats {
    std::size_t things_alive = 0;
    std::size_t things_total = 0;
    std::size_t events_alive = 0;
    std::size_t events_total = 0;
    Tick clock = 0;
    std::size_t components = 0;
    std::size_t max_path_length = 0;  // undirected diameter, in edges
};

// All owners the thing directly determines: x where (id -> x) is alive.
std::set<ThingId> owners_of(const Model& m, ThingId id);

// All members that directly determine the thing: x where (x -> id) is alive.
std::set<ThingId> members_of(const Model& m, ThingId id);

// Transitive closure over alive events, excluding the start vertex.
std::set<ThingId> reachable(const Model& m, ThingId id, Direction direction);

// Every simple undirected path between a and b, in lexicographic order of
// their ThingId sequences, capped by limits.
PathReport paths(const Model& m, ThingId a, ThingId b, PathLimits limits = {});

// The model reconstructed from records with tick <= t. Composes with all
// other queries. A t beyond the clock yields the current state.
Model as_of(const Model& m, Tick t);

// Tick-ordered participation history of a thing, alive or tombstoned.
std::vector<TraceEntry> trace(const Model& m, ThingId id);

// Raw-log invariant check plus graph diagnostics. Problems are report
// content, never exceptions.
ValidationReport validate(const Model& m, PathLimits limits = {});

// Invariant check over a bare record sequence (no Model required), so
// corrupted logs can be examined directly.
std::vector<std::string> validate_records(const std::vector<LogRecord>& records);

ModelStats stats(const Model& m);

// True when a and b are joined by some alive undirected path. Backs the
// opt-in strict tree mode.
bool connected(const Model& m, ThingId a, ThingId b);

const char* to_string(TraceEntry::Kind kind);
const char* to_string(Direction direction);

}  // namespace cdm
