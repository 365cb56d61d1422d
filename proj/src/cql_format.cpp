#include "cdm/cql.hpp"
#include "cdm/record.hpp"

namespace cdm {

namespace {

std::string quoted(const std::string& text) { return "\"" + escape_label(text) + "\""; }

// Without the trailing ";".
std::string body(const Statement& s) {
    switch (s.kind) {
        case StatementKind::create_thing:
            return "THING " + quoted(s.arg1);
        case StatementKind::assoc:
            return "ASSOC " + quoted(s.arg1) + " -> " + quoted(s.arg2);
        case StatementKind::drop_thing:
            return "DROP THING " + quoted(s.arg1);
        case StatementKind::drop_assoc:
            return "DROP ASSOC " + quoted(s.arg1) + " -> " + quoted(s.arg2);
        case StatementKind::owners:
            return "OWNERS OF " + quoted(s.arg1);
        case StatementKind::members:
            return "MEMBERS OF " + quoted(s.arg1);
        case StatementKind::reach:
            return "REACH " + quoted(s.arg1) + " " + to_string(s.dir);
        case StatementKind::paths:
            return "PATHS " + quoted(s.arg1) + " TO " + quoted(s.arg2);
        case StatementKind::trace:
            return "TRACE " + quoted(s.arg1);
        case StatementKind::validate:
            return "VALIDATE";
        case StatementKind::stats:
            return "STATS";
        case StatementKind::export_dot:
            return "EXPORT DOT " + quoted(s.arg1);
        case StatementKind::export_sql:
            return "EXPORT SQL " + quoted(s.arg1);
        case StatementKind::as_of:
            break;  // handled by format_statement
    }
    return {};
}

}  // namespace

std::string format_statement(const Statement& s) {
    if (s.kind == StatementKind::as_of)
        return "ASOF " + std::to_string(s.tick) + " { " + body(*s.inner) + "; }\n";
    return body(s) + ";\n";
}

std::string format_statements(const std::vector<Statement>& statements) {
    std::string out;
    for (const Statement& s : statements) out += format_statement(s);
    return out;
}

}  // namespace cdm
