#include "cdm/query.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cdm {

namespace {

using Adjacency = std::map<ThingId, std::vector<ThingId>>;

void require_alive(const Model& m, ThingId id) {
    if (!m.is_alive(id))
        throw Error(Errc::unknown_thing, "unknown or removed thing id " + std::to_string(id));
}

// Neighbor lists over alive events, sorted ascending and deduplicated so
// traversal order (and therefore every reported sequence) is deterministic.
Adjacency adjacency(const Model& m, Direction direction) {
    Adjacency adj;
    for (const AssociationEvent& e : m.events()) {
        if (!e.alive) continue;
        if (direction == Direction::upward || direction == Direction::undirected)
            adj[e.member].push_back(e.owner);
        if (direction == Direction::downward || direction == Direction::undirected)
            adj[e.owner].push_back(e.member);
    }
    for (auto& [id, neighbors] : adj) {
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    }
    return adj;
}

std::set<ThingId> bfs(const Adjacency& adj, ThingId start) {
    std::set<ThingId> seen;
    std::deque<ThingId> queue{start};
    while (!queue.empty()) {
        ThingId v = queue.front();
        queue.pop_front();
        auto it = adj.find(v);
        if (it == adj.end()) continue;
        for (ThingId next : it->second) {
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    seen.erase(start);
    return seen;
}

struct PathSearch {
    const Adjacency& adj;
    ThingId target;
    PathLimits limits;
    PathReport& report;
    std::vector<ThingId> path;
    std::set<ThingId> on_path;

    bool full() const { return report.paths.size() >= limits.max_paths; }

    bool has_unvisited_neighbor(ThingId v) const {
        auto it = adj.find(v);
        if (it == adj.end()) return false;
        return std::any_of(it->second.begin(), it->second.end(),
                           [&](ThingId n) { return !on_path.count(n); });
    }

    void run(ThingId v) {
        if (v == target) {
            report.paths.push_back(path);
            return;
        }
        if (path.size() - 1 >= limits.max_length) {
            if (has_unvisited_neighbor(v)) report.truncated = true;
            return;
        }
        auto it = adj.find(v);
        if (it == adj.end()) return;
        for (ThingId next : it->second) {
            if (on_path.count(next)) continue;
            if (full()) {
                report.truncated = true;
                return;
            }
            on_path.insert(next);
            path.push_back(next);
            run(next);
            path.pop_back();
            on_path.erase(next);
        }
    }
};

// Components over the alive undirected graph; isolated things count as
// their own component.
std::size_t component_count(const Model& m, const Adjacency& undirected) {
    std::set<ThingId> unseen;
    for (const auto& [id, thing] : m.things())
        if (thing.alive) unseen.insert(id);
    std::size_t count = 0;
    while (!unseen.empty()) {
        ++count;
        ThingId start = *unseen.begin();
        unseen.erase(unseen.begin());
        std::deque<ThingId> queue{start};
        while (!queue.empty()) {
            ThingId v = queue.front();
            queue.pop_front();
            auto it = undirected.find(v);
            if (it == undirected.end()) continue;
            for (ThingId next : it->second) {
                if (unseen.erase(next)) queue.push_back(next);
            }
        }
    }
    return count;
}

}  // namespace

std::set<ThingId> owners_of(const Model& m, ThingId id) {
    require_alive(m, id);
    std::set<ThingId> result;
    for (const AssociationEvent& e : m.events())
        if (e.alive && e.member == id) result.insert(e.owner);
    return result;
}

std::set<ThingId> members_of(const Model& m, ThingId id) {
    require_alive(m, id);
    std::set<ThingId> result;
    for (const AssociationEvent& e : m.events())
        if (e.alive && e.owner == id) result.insert(e.member);
    return result;
}

std::set<ThingId> reachable(const Model& m, ThingId id, Direction direction) {
    require_alive(m, id);
    return bfs(adjacency(m, direction), id);
}

PathReport paths(const Model& m, ThingId a, ThingId b, PathLimits limits) {
    require_alive(m, a);
    require_alive(m, b);
    if (a == b)
        throw Error(Errc::same_thing, "path endpoints must be two distinct things");
    PathReport report;
    report.endpoints = {a, b};
    Adjacency adj = adjacency(m, Direction::undirected);
    PathSearch search{adj, b, limits, report, {a}, {a}};
    search.run(a);
    report.unique = report.paths.size() == 1;
    return report;
}

Model as_of(const Model& m, Tick t) {
    Model snapshot;
    for (const LogRecord& r : m.log()) {
        if (r.tick > t) break;
        snapshot.apply_record(r);
    }
    return snapshot;
}

std::vector<TraceEntry> trace(const Model& m, ThingId id) {
    if (m.find_thing(id) == nullptr)
        throw Error(Errc::unknown_thing, "unknown thing id " + std::to_string(id));
    std::vector<TraceEntry> entries;
    for (const LogRecord& r : m.log()) {
        switch (r.kind) {
            case RecordKind::thing_created:
                if (r.id == id) entries.push_back({r.tick, TraceEntry::Kind::created, 0});
                break;
            case RecordKind::associated:
                if (r.member == id)
                    entries.push_back({r.tick, TraceEntry::Kind::became_member, r.owner});
                else if (r.owner == id)
                    entries.push_back({r.tick, TraceEntry::Kind::became_owner, r.member});
                break;
            case RecordKind::association_removed:
                if (r.member == id)
                    entries.push_back({r.tick, TraceEntry::Kind::event_tombstoned, r.owner});
                else if (r.owner == id)
                    entries.push_back({r.tick, TraceEntry::Kind::event_tombstoned, r.member});
                break;
            case RecordKind::thing_removed:
                if (r.id == id) entries.push_back({r.tick, TraceEntry::Kind::removed, 0});
                break;
        }
    }
    return entries;
}

std::vector<std::string> validate_records(const std::vector<LogRecord>& records) {
    std::vector<std::string> errors;
    auto report = [&](std::size_t index, Tick tick, const std::string& what) {
        errors.push_back("record " + std::to_string(index + 1) + " (tick " +
                         std::to_string(tick) + "): " + what);
    };

    // Shadow state, maintained independently of Model so corrupted record
    // sequences that Model would refuse to build can still be examined.
    struct ShadowThing {
        std::string label;
        bool alive;
    };
    std::map<ThingId, ShadowThing> things;
    std::map<std::string, ThingId> alive_labels;
    std::set<std::pair<ThingId, ThingId>> alive_pairs;
    bool first = true;
    Tick last_tick = 0;

    for (std::size_t i = 0; i < records.size(); ++i) {
        const LogRecord& r = records[i];
        if (!first) {
            if (r.tick == last_tick)
                report(i, r.tick, "duplicate tick [CDMF step (4)(c)]");
            else if (r.tick < last_tick)
                report(i, r.tick, "tick goes backwards [CDMF steps (4)(c)/(5)]");
        }
        first = false;
        last_tick = std::max(last_tick, r.tick);

        auto endpoint_alive = [&](ThingId id) {
            auto it = things.find(id);
            return it != things.end() && it->second.alive;
        };

        switch (r.kind) {
            case RecordKind::thing_created: {
                if (r.id < 1) report(i, r.tick, "thing id must be >= 1 [log integrity]");
                if (things.count(r.id))
                    report(i, r.tick, "thing id " + std::to_string(r.id) +
                                          " was already used [log integrity]");
                if (alive_labels.count(r.label))
                    report(i, r.tick,
                           "label \"" + r.label + "\" already in use [CDMF step (1)]");
                things[r.id] = {r.label, true};
                alive_labels.emplace(r.label, r.id);
                break;
            }
            case RecordKind::associated: {
                if (r.member == r.owner)
                    report(i, r.tick, "self association [CDMF step (4)(a)]");
                for (ThingId e : {r.member, r.owner})
                    if (!endpoint_alive(e))
                        report(i, r.tick, "endpoint " + std::to_string(e) +
                                              " is not an alive thing [CDMF step (2)(a)]");
                if (!alive_pairs.insert({r.member, r.owner}).second)
                    report(i, r.tick, "duplicate alive association " +
                                          std::to_string(r.member) + " -> " +
                                          std::to_string(r.owner) + " [CDMF step (2)(a)]");
                break;
            }
            case RecordKind::thing_removed: {
                auto it = things.find(r.id);
                if (it == things.end() || !it->second.alive) {
                    report(i, r.tick, "tombstone target " + std::to_string(r.id) +
                                          " is not an alive thing [log integrity]");
                } else {
                    it->second.alive = false;
                    alive_labels.erase(it->second.label);
                }
                break;
            }
            case RecordKind::association_removed: {
                if (!alive_pairs.erase({r.member, r.owner}))
                    report(i, r.tick, "tombstone target " + std::to_string(r.member) +
                                          " -> " + std::to_string(r.owner) +
                                          " is not an alive association [log integrity]");
                break;
            }
        }
    }
    return errors;
}

ValidationReport validate(const Model& m, PathLimits limits) {
    ValidationReport report;
    report.errors = validate_records(m.log());

    Adjacency directed = adjacency(m, Direction::upward);
    Adjacency undirected = adjacency(m, Direction::undirected);
    report.components = component_count(m, undirected);

    // Directed cycles, one witness per back edge found by DFS.
    {
        enum class Color { white, gray, black };
        std::map<ThingId, Color> color;
        for (const auto& [id, thing] : m.things())
            if (thing.alive) color[id] = Color::white;
        std::vector<ThingId> stack;

        auto dfs = [&](auto&& self, ThingId v) -> void {
            color[v] = Color::gray;
            stack.push_back(v);
            auto it = directed.find(v);
            if (it != directed.end()) {
                for (ThingId next : it->second) {
                    if (color[next] == Color::white) {
                        self(self, next);
                    } else if (color[next] == Color::gray) {
                        auto from = std::find(stack.begin(), stack.end(), next);
                        report.directed_cycles.emplace_back(from, stack.end());
                    }
                }
            }
            stack.pop_back();
            color[v] = Color::black;
        };
        for (const auto& [id, c] : color)
            if (c == Color::white) dfs(dfs, id);
    }

    // Path-uniqueness witnesses over connected alive pairs.
    {
        std::vector<ThingId> alive;
        for (const auto& [id, thing] : m.things())
            if (thing.alive) alive.push_back(id);
        for (std::size_t i = 0; i < alive.size(); ++i) {
            for (std::size_t j = i + 1; j < alive.size(); ++j) {
                PathReport pr = paths(m, alive[i], alive[j], limits);
                if (pr.paths.size() >= 2)
                    report.non_unique_paths.emplace_back(alive[i], alive[j]);
            }
        }
    }
    return report;
}

ModelStats stats(const Model& m) {
    ModelStats s;
    s.clock = m.current_tick();
    for (const auto& [id, thing] : m.things()) {
        ++s.things_total;
        if (thing.alive) ++s.things_alive;
    }
    for (const AssociationEvent& e : m.events()) {
        ++s.events_total;
        if (e.alive) ++s.events_alive;
    }
    Adjacency undirected = adjacency(m, Direction::undirected);
    s.components = component_count(m, undirected);

    // Diameter in edges: the longest shortest path over the alive
    // undirected graph.
    for (const auto& [start, neighbors] : undirected) {
        std::map<ThingId, std::size_t> dist{{start, 0}};
        std::deque<ThingId> queue{start};
        while (!queue.empty()) {
            ThingId v = queue.front();
            queue.pop_front();
            auto it = undirected.find(v);
            if (it == undirected.end()) continue;
            for (ThingId next : it->second) {
                if (dist.count(next)) continue;
                dist[next] = dist[v] + 1;
                s.max_path_length = std::max(s.max_path_length, dist[next]);
                queue.push_back(next);
            }
        }
    }
    return s;
}

bool connected(const Model& m, ThingId a, ThingId b) {
    require_alive(m, a);
    require_alive(m, b);
    if (a == b) return true;
    return bfs(adjacency(m, Direction::undirected), a).count(b) > 0;
}

const char* to_string(TraceEntry::Kind kind) {
    switch (kind) {
        case TraceEntry::Kind::created: return "created";
        case TraceEntry::Kind::became_member: return "became-member";
        case TraceEntry::Kind::became_owner: return "became-owner";
        case TraceEntry::Kind::event_tombstoned: return "event-tombstoned";
        case TraceEntry::Kind::removed: return "removed";
    }
    return "?";
}

const char* to_string(Direction direction) {
    switch (direction) {
        case Direction::upward: return "UP";
        case Direction::downward: return "DOWN";
        case Direction::undirected: return "ANY";
    }
    return "?";
}

}  // namespace cdm
