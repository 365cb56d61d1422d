#include "cdm/model.hpp"

#include <algorithm>
#include <cctype>

namespace cdm {

namespace {

bool trimmed_empty(std::string_view text) {
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string quoted(const std::string& label) { return "\"" + label + "\""; }

}  // namespace

Model::Model(const Model& other) {
    std::lock_guard lock(other.write_mutex_);
    copy_state(other);
}

Model& Model::operator=(const Model& other) {
    if (this == &other) return *this;
    std::scoped_lock lock(write_mutex_, other.write_mutex_);
    copy_state(other);
    return *this;
}

Model::Model(Model&& other) noexcept {
    std::lock_guard lock(other.write_mutex_);
    log_ = std::move(other.log_);
    things_ = std::move(other.things_);
    events_ = std::move(other.events_);
    alive_labels_ = std::move(other.alive_labels_);
    alive_pairs_ = std::move(other.alive_pairs_);
    clock_ = other.clock_;
    next_id_ = other.next_id_;
}

Model& Model::operator=(Model&& other) noexcept {
    if (this == &other) return *this;
    std::scoped_lock lock(write_mutex_, other.write_mutex_);
    log_ = std::move(other.log_);
    things_ = std::move(other.things_);
    events_ = std::move(other.events_);
    alive_labels_ = std::move(other.alive_labels_);
    alive_pairs_ = std::move(other.alive_pairs_);
    clock_ = other.clock_;
    next_id_ = other.next_id_;
    return *this;
}

void Model::copy_state(const Model& other) {
    log_ = other.log_;
    things_ = other.things_;
    events_ = other.events_;
    alive_labels_ = other.alive_labels_;
    alive_pairs_ = other.alive_pairs_;
    clock_ = other.clock_;
    next_id_ = other.next_id_;
}

Model Model::snapshot() const { return *this; }

const Thing* Model::find_thing(ThingId id) const {
    auto it = things_.find(id);
    return it == things_.end() ? nullptr : &it->second;
}

bool Model::is_alive(ThingId id) const {
    const Thing* t = find_thing(id);
    return t != nullptr && t->alive;
}

std::optional<ThingId> Model::resolve_label(std::string_view label) const {
    auto it = alive_labels_.find(std::string(label));
    if (it == alive_labels_.end()) return std::nullopt;
    return it->second;
}

std::string Model::label_of(ThingId id) const {
    const Thing* t = find_thing(id);
    return t ? t->label : "#" + std::to_string(id);
}

const AssociationEvent* Model::find_alive_event(ThingId member, ThingId owner) const {
    auto it = alive_pairs_.find({member, owner});
    if (it == alive_pairs_.end()) return nullptr;
    return &events_[it->second];
}

// -- record application ------------------------------------------------

void Model::check_thing_record(const LogRecord& r) const {
    if (r.id < 1)
        throw Error(Errc::invariant_violation, "thing id must be >= 1 [log integrity]");
    if (things_.count(r.id))
        throw Error(Errc::invariant_violation,
                    "thing id " + std::to_string(r.id) + " was already used [log integrity]");
    if (trimmed_empty(r.label))
        throw Error(Errc::empty_label, "label must be non-empty");
    if (r.label.find('\r') != std::string::npos)
        throw Error(Errc::invalid_label, "label may not contain carriage returns");
    if (alive_labels_.count(r.label))
        throw Error(Errc::duplicate_label,
                    "label " + quoted(r.label) + " already in use by an alive thing [CDMF step (1)]");
}

void Model::check_assoc_record(const LogRecord& r) const {
    if (r.member == r.owner)
        throw Error(Errc::self_association,
                    "a thing cannot associate with itself [CDMF step (4)(a)]");
    for (ThingId endpoint : {r.member, r.owner}) {
        if (!is_alive(endpoint))
            throw Error(Errc::unknown_thing,
                        "association endpoint " + std::to_string(endpoint) +
                            " is not an alive thing [CDMF step (2)(a)]");
    }
    if (alive_pairs_.count({r.member, r.owner}))
        throw Error(Errc::duplicate_association,
                    "association " + std::to_string(r.member) + " -> " +
                        std::to_string(r.owner) + " already alive [CDMF step (2)(a)]");
}

void Model::apply_thing(const LogRecord& r) {
    check_thing_record(r);
    things_.emplace(r.id, Thing{r.id, r.label, r.tick, true});
    alive_labels_.emplace(r.label, r.id);
    next_id_ = std::max(next_id_, r.id + 1);
}

void Model::apply_assoc(const LogRecord& r) {
    check_assoc_record(r);
    events_.push_back(AssociationEvent{r.tick, r.member, r.owner, true});
    alive_pairs_[{r.member, r.owner}] = events_.size() - 1;
}

void Model::apply_drop_thing(const LogRecord& r) {
    auto it = things_.find(r.id);
    if (it == things_.end() || !it->second.alive)
        throw Error(Errc::unknown_thing, "unknown or removed thing id " + std::to_string(r.id));
    for (const AssociationEvent& e : events_) {
        if (e.alive && (e.member == r.id || e.owner == r.id))
            throw Error(Errc::invariant_violation,
                        "thing " + std::to_string(r.id) +
                            " still has alive associations [log integrity]");
    }
    it->second.alive = false;
    alive_labels_.erase(it->second.label);
}

void Model::apply_drop_assoc(const LogRecord& r) {
    auto it = alive_pairs_.find({r.member, r.owner});
    if (it == alive_pairs_.end())
        throw Error(Errc::no_such_association,
                    "no alive association " + std::to_string(r.member) + " -> " +
                        std::to_string(r.owner));
    events_[it->second].alive = false;
    alive_pairs_.erase(it);
}

void Model::append(LogRecord record) {
    // Validation happens inside the per-kind apply; nothing below this
    // point may throw once state starts changing.
    switch (record.kind) {
        case RecordKind::thing_created: apply_thing(record); break;
        case RecordKind::associated: apply_assoc(record); break;
        case RecordKind::thing_removed: apply_drop_thing(record); break;
        case RecordKind::association_removed: apply_drop_assoc(record); break;
    }
    clock_ = record.tick + 1;
    log_.push_back(std::move(record));
}

void Model::apply_record(const LogRecord& record) {
    std::lock_guard lock(write_mutex_);
    if (!log_.empty()) {
        Tick last = clock_ - 1;
        if (record.tick == last)
            throw Error(Errc::invariant_violation,
                        "record tick " + std::to_string(record.tick) +
                            " repeats the previous tick [CDMF step (4)(c)]");
        if (record.tick < last)
            throw Error(Errc::invariant_violation,
                        "record tick " + std::to_string(record.tick) + " precedes tick " +
                            std::to_string(last) + " [CDMF steps (4)(c)/(5)]");
    }
    append(record);
}

// -- mutations ----------------------------------------------------------

ThingId Model::create_thing(std::string_view label) {
    std::lock_guard lock(write_mutex_);
    ThingId id = next_id_;
    append(LogRecord::thing(clock_, id, std::string(label)));
    return id;
}

AssociationEvent Model::associate(ThingId member, ThingId owner) {
    std::lock_guard lock(write_mutex_);
    append(LogRecord::assoc(clock_, member, owner));
    return events_.back();
}

Tick Model::remove_association(ThingId member, ThingId owner) {
    std::lock_guard lock(write_mutex_);
    Tick t = clock_;
    append(LogRecord::drop_assoc(t, member, owner));
    return t;
}

std::size_t Model::remove_thing(ThingId id) {
    std::lock_guard lock(write_mutex_);
    if (!is_alive(id))
        throw Error(Errc::unknown_thing, "unknown or removed thing id " + std::to_string(id));

    // Cascade: tombstone incident events in ascending original-tick
    // order, then the thing itself. events_ is already tick ordered.
    std::vector<std::pair<ThingId, ThingId>> incident;
    for (const AssociationEvent& e : events_) {
        if (e.alive && (e.member == id || e.owner == id))
            incident.emplace_back(e.member, e.owner);
    }
    for (const auto& [member, owner] : incident)
        append(LogRecord::drop_assoc(clock_, member, owner));
    append(LogRecord::drop_thing(clock_, id));
    return incident.size();
}

std::string Model::state_hash() const {
    std::lock_guard lock(write_mutex_);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const LogRecord& r : log_) {
        std::string line = format_record(r);
        line += '\n';
        hash = fnv1a64(line.data(), line.size(), hash);
    }
    return to_hex64(hash);
}

}  // namespace cdm
