#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdm/error.hpp"
#include "cdm/record.hpp"

namespace cdm {

struct Thing {
    ThingId id = 0;
    std::string label;
    Tick created_at = 0;
    bool alive = true;

    bool operator==(const Thing&) const = default;
};

// A directed member -> owner association occupying one tick. The member
// determines, the owner qualifies; the roles never swap within an event.
struct AssociationEvent {
    Tick tick = 0;
    ThingId member = 0;
    ThingId owner = 0;
    bool alive = true;

    bool operator==(const AssociationEvent&) const = default;
};

// A thing considered at a specific tick; names one side of an event.
struct VersionRef {
    ThingId thing = 0;
    Tick as_of = 0;

    bool operator==(const VersionRef&) const = default;
};

// The in-memory model: an append-only record log plus state derived from
// it. Mutations append to the log under a single writer lock, so the log
// of any reachable model is a total order and replaying it reproduces the
// model exactly.
//
// Readers that run concurrently with a writer must work on a snapshot()
// copy; all query functions take const Model& and never mutate.
class Model {
public:
    Model() = default;
    Model(const Model& other);
    Model& operator=(const Model& other);
    Model(Model&& other) noexcept;
    Model& operator=(Model&& other) noexcept;

    // -- mutations (serialized, each consumes one or more fresh ticks) --

    // New thing with a fresh id. The label must be non-empty after
    // trimming and unique among alive things.
    ThingId create_thing(std::string_view label);

    // New association event member -> owner at a fresh tick.
    AssociationEvent associate(ThingId member, ThingId owner);

    // Tombstones the alive event for the ordered pair; returns the
    // tombstone tick. The reverse pair is a distinct association.
    Tick remove_association(ThingId member, ThingId owner);

    // Tombstones the thing and cascades over every alive event incident
    // to it (in ascending event-tick order, then the thing itself).
    // Returns the number of cascaded event tombstones.
    std::size_t remove_thing(ThingId id);

    // Applies an externally sourced record, enforcing every invariant a
    // normal mutation would plus strict tick monotonicity. Used by log
    // replay and relational import.
    void apply_record(const LogRecord& record);

    // -- reads --

    Tick current_tick() const { return clock_; }

    // Digest of the canonical serialized log; equal logs hash equal.
    std::string state_hash() const;

    // Consistent copy taken under the writer lock.
    Model snapshot() const;

    const std::vector<LogRecord>& log() const { return log_; }
    const std::map<ThingId, Thing>& things() const { return things_; }
    const std::vector<AssociationEvent>& events() const { return events_; }

    const Thing* find_thing(ThingId id) const;
    bool is_alive(ThingId id) const;
    // Exact-match lookup among alive labels.
    std::optional<ThingId> resolve_label(std::string_view label) const;
    // Label of any thing ever created (tombstoned included).
    std::string label_of(ThingId id) const;

    const AssociationEvent* find_alive_event(ThingId member, ThingId owner) const;

    bool operator==(const Model& other) const { return log_ == other.log_; }

private:
    Tick issue_tick();
    void append(LogRecord record);
    void copy_state(const Model& other);

    void check_thing_record(const LogRecord& r) const;
    void check_assoc_record(const LogRecord& r) const;

    void apply_thing(const LogRecord& r);
    void apply_assoc(const LogRecord& r);
    void apply_drop_thing(const LogRecord& r);
    void apply_drop_assoc(const LogRecord& r);

    mutable std::mutex write_mutex_;
    std::vector<LogRecord> log_;
    std::map<ThingId, Thing> things_;
    std::vector<AssociationEvent> events_;  // tick order
    std::map<std::string, ThingId> alive_labels_;
    std::map<std::pair<ThingId, ThingId>, std::size_t> alive_pairs_;  // -> index into events_
    Tick clock_ = 0;
    ThingId next_id_ = 1;
};

}  // namespace cdm
