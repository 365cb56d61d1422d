#include <algorithm>

#include "cdm/cql.hpp"
#include "cdm/relational.hpp"
#include "cdm/storage.hpp"

namespace cdm {

namespace {

ThingId resolve(const Model& m, const std::string& label) {
    auto id = m.resolve_label(label);
    if (!id) throw Error(Errc::unknown_label, "unknown label: " + label);
    return *id;
}

std::vector<std::string> sorted_labels(const Model& m, const std::set<ThingId>& ids) {
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (ThingId id : ids) labels.push_back(m.label_of(id));
    std::sort(labels.begin(), labels.end());
    return labels;
}

ResultSet ack(Tick tick) {
    ResultSet r;
    r.kind = ResultSet::Kind::ack;
    r.ack_tick = tick;
    return r;
}

ResultSet eval_read(const Model& m, const Statement& s, const EvalOptions& options) {
    ResultSet r;
    switch (s.kind) {
        case StatementKind::owners: {
            r.kind = ResultSet::Kind::names;
            r.names = sorted_labels(m, owners_of(m, resolve(m, s.arg1)));
            return r;
        }
        case StatementKind::members: {
            r.kind = ResultSet::Kind::names;
            r.names = sorted_labels(m, members_of(m, resolve(m, s.arg1)));
            return r;
        }
        case StatementKind::reach: {
            r.kind = ResultSet::Kind::names;
            r.names = sorted_labels(m, reachable(m, resolve(m, s.arg1), s.dir));
            return r;
        }
        case StatementKind::paths: {
            r.kind = ResultSet::Kind::paths;
            PathReport pr = paths(m, resolve(m, s.arg1), resolve(m, s.arg2),
                                  options.path_limits);
            for (const auto& path : pr.paths) {
                std::vector<std::string> labels;
                labels.reserve(path.size());
                for (ThingId id : path) labels.push_back(m.label_of(id));
                r.label_paths.push_back(std::move(labels));
            }
            r.unique = pr.unique;
            r.truncated = pr.truncated;
            return r;
        }
        case StatementKind::trace: {
            r.kind = ResultSet::Kind::trace;
            for (const TraceEntry& e : trace(m, resolve(m, s.arg1))) {
                ResultSet::TraceLine line;
                line.tick = e.tick;
                line.kind = to_string(e.kind);
                if (e.kind != TraceEntry::Kind::created && e.kind != TraceEntry::Kind::removed)
                    line.counterpart = m.label_of(e.counterpart);
                r.trace_lines.push_back(std::move(line));
            }
            return r;
        }
        case StatementKind::validate: {
            r.kind = ResultSet::Kind::report;
            ValidationReport report = validate(m, options.path_limits);
            r.report.errors = report.errors;
            for (const auto& cycle : report.directed_cycles) {
                std::vector<std::string> labels;
                for (ThingId id : cycle) labels.push_back(m.label_of(id));
                r.report.directed_cycles.push_back(std::move(labels));
            }
            for (const auto& [a, b] : report.non_unique_paths)
                r.report.non_unique_paths.emplace_back(m.label_of(a), m.label_of(b));
            r.report.components = report.components;
            return r;
        }
        case StatementKind::stats: {
            r.kind = ResultSet::Kind::table;
            ModelStats st = stats(m);
            r.table = {
                {"things_alive", st.things_alive}, {"things_total", st.things_total},
                {"events_alive", st.events_alive}, {"events_total", st.events_total},
                {"clock", st.clock},               {"components", st.components},
                {"max_path_length", st.max_path_length},
            };
            return r;
        }
        case StatementKind::as_of: {
            Model snapshot = as_of(m, s.tick);
            return eval_read(snapshot, *s.inner, options);
        }
        case StatementKind::export_dot: {
            r.kind = ResultSet::Kind::wrote;
            std::string text = export_dot(m);
            write_text_file(s.arg1, text);
            r.wrote_path = s.arg1;
            r.wrote_bytes = text.size();
            return r;
        }
        case StatementKind::export_sql: {
            r.kind = ResultSet::Kind::wrote;
            std::string text = emit_sql(to_relational(m));
            write_text_file(s.arg1, text);
            r.wrote_path = s.arg1;
            r.wrote_bytes = text.size();
            return r;
        }
        default:
            throw Error(Errc::parse_error, "not a read statement");
    }
}

}  // namespace

ResultSet evaluate(Model& m, const Statement& s, const EvalOptions& options) {
    try {
        switch (s.kind) {
            case StatementKind::create_thing: {
                ThingId id = m.create_thing(s.arg1);
                return ack(m.find_thing(id)->created_at);
            }
            case StatementKind::assoc: {
                ThingId member = resolve(m, s.arg1);
                ThingId owner = resolve(m, s.arg2);
                if (options.strict_tree && connected(m, member, owner))
                    throw Error(Errc::cycle_rejected,
                                "strict tree mode: \"" + s.arg1 + "\" and \"" + s.arg2 +
                                    "\" are already connected");
                return ack(m.associate(member, owner).tick);
            }
            case StatementKind::drop_thing: {
                ThingId id = resolve(m, s.arg1);
                std::size_t cascaded = m.remove_thing(id);
                ResultSet r = ack(m.current_tick() - 1);
                r.cascaded = cascaded;
                r.has_cascaded = true;
                return r;
            }
            case StatementKind::drop_assoc: {
                ThingId member = resolve(m, s.arg1);
                ThingId owner = resolve(m, s.arg2);
                return ack(m.remove_association(member, owner));
            }
            default:
                return eval_read(m, s, options);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        if (s.pos.line == 0) throw;
        throw Error(e.code(), std::to_string(s.pos.line) + ":" +
                                  std::to_string(s.pos.column) + ": " + e.what());
    }
}

}  // namespace cdm
