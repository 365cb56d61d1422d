#pragma once

#include <string>
#include <vector>

#include "cdm/model.hpp"

namespace cdm {

// Present-state projection of a model onto two relations. Only alive
// things and events appear; every column always holds a value.
struct ThingRow {
    ThingId id = 0;
    std::string label;
    Tick created_tick = 0;

    bool operator==(const ThingRow&) const = default;
};

struct AssocRow {
    Tick tick = 0;
    ThingId member_id = 0;
    ThingId owner_id = 0;

    bool operator==(const AssocRow&) const = default;
};

struct RelationalBundle {
    std::vector<ThingRow> thing_rows;  // tick order
    std::vector<AssocRow> assoc_rows;  // tick order

    bool operator==(const RelationalBundle&) const = default;
};

RelationalBundle to_relational(const Model& m);

// Two CREATE TABLE statements followed by INSERTs in global tick order.
// Mandatory columns are enforced through COALESCE checks, so the emitted
// SQL never contains the token NULL (nor NOT) yet no column is nullable.
// Output is byte-deterministic.
std::string emit_sql(const RelationalBundle& bundle);

// Reads back exactly the dialect emit_sql produces, nothing more. Throws
// Error{dialect_error} for any construct outside that subset and
// Error{integrity_error} for dangling references or duplicate keys; both
// carry a line number.
Model ingest_sql(const std::string& sql);

}  // namespace cdm
