#include "cdm/relational.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>

namespace cdm {

namespace {

std::string sql_quote(const std::string& text) {
    std::string out = "'";
    for (char c : text) {
        if (c == '\'')
            out += "''";
        else
            out += c;
    }
    out += "'";
    return out;
}

// Mandatory columns are expressed through COALESCE checks: a missing
// value collapses to a sentinel the check rejects outright, which keeps
// both the NULL and the NOT token out of the schema entirely.
constexpr const char* kSchema =
    "CREATE TABLE thing (\n"
    "  id INTEGER PRIMARY KEY,\n"
    "  label TEXT UNIQUE,\n"
    "  created_tick INTEGER,\n"
    "  CHECK (COALESCE(id, 0) >= 1),\n"
    "  CHECK (COALESCE(label, '') <> ''),\n"
    "  CHECK (COALESCE(created_tick, -1) >= 0)\n"
    ");\n"
    "CREATE TABLE association (\n"
    "  tick INTEGER PRIMARY KEY,\n"
    "  member_id INTEGER REFERENCES thing(id),\n"
    "  owner_id INTEGER REFERENCES thing(id),\n"
    "  CHECK (COALESCE(tick, -1) >= 0),\n"
    "  CHECK (COALESCE(member_id, 0) >= 1),\n"
    "  CHECK (COALESCE(owner_id, 0) >= 1),\n"
    "  CHECK (member_id <> owner_id),\n"
    "  UNIQUE (member_id, owner_id)\n"
    ");\n";

}  // namespace

RelationalBundle to_relational(const Model& m) {
    RelationalBundle bundle;
    for (const auto& [id, thing] : m.things())
        if (thing.alive)
            bundle.thing_rows.push_back({thing.id, thing.label, thing.created_at});
    std::sort(bundle.thing_rows.begin(), bundle.thing_rows.end(),
              [](const ThingRow& a, const ThingRow& b) { return a.created_tick < b.created_tick; });
    for (const AssociationEvent& e : m.events())
        if (e.alive) bundle.assoc_rows.push_back({e.tick, e.member, e.owner});
    return bundle;
}

std::string emit_sql(const RelationalBundle& bundle) {
    std::string out = kSchema;
    // INSERTs in global tick order; things always precede the events
    // that reference them because creation ticks are earlier.
    std::size_t ti = 0, ai = 0;
    while (ti < bundle.thing_rows.size() || ai < bundle.assoc_rows.size()) {
        bool thing_next =
            ai >= bundle.assoc_rows.size() ||
            (ti < bundle.thing_rows.size() &&
             bundle.thing_rows[ti].created_tick < bundle.assoc_rows[ai].tick);
        if (thing_next) {
            const ThingRow& r = bundle.thing_rows[ti++];
            out += "INSERT INTO thing (id, label, created_tick) VALUES (" +
                   std::to_string(r.id) + ", " + sql_quote(r.label) + ", " +
                   std::to_string(r.created_tick) + ");\n";
        } else {
            const AssocRow& r = bundle.assoc_rows[ai++];
            out += "INSERT INTO association (tick, member_id, owner_id) VALUES (" +
                   std::to_string(r.tick) + ", " + std::to_string(r.member_id) + ", " +
                   std::to_string(r.owner_id) + ");\n";
        }
    }
    return out;
}

// -- import of the emitted dialect ---------------------------------------

namespace {

struct SqlToken {
    enum class Kind { word, number, string, punct, end };
    Kind kind = Kind::end;
    std::string text;     // uppercased for words
    std::string value;    // unescaped string content
    std::int64_t number = 0;
    std::size_t line = 0;
};

[[noreturn]] void dialect_error(std::size_t line, const std::string& reason) {
    throw Error(Errc::dialect_error, "line " + std::to_string(line) + ": " + reason);
}

struct SqlLexer {
    const std::string& src;
    std::size_t pos = 0;
    std::size_t line = 1;

    SqlToken next() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= src.size()) return {SqlToken::Kind::end, "", "", 0, line};

        char c = src[pos];
        std::size_t tok_line = line;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            std::string word = src.substr(start, pos - start);
            std::transform(word.begin(), word.end(), word.begin(),
                           [](unsigned char ch) { return std::toupper(ch); });
            return {SqlToken::Kind::word, word, "", 0, tok_line};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            std::size_t start = pos;
            if (c == '-') ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            std::int64_t value = 0;
            std::from_chars(src.data() + start, src.data() + pos, value);
            return {SqlToken::Kind::number, src.substr(start, pos - start), "", value, tok_line};
        }
        if (c == '\'') {
            ++pos;
            std::string value;
            while (true) {
                if (pos >= src.size()) dialect_error(tok_line, "unterminated string literal");
                char s = src[pos++];
                if (s == '\'') {
                    if (pos < src.size() && src[pos] == '\'') {
                        value += '\'';
                        ++pos;
                    } else {
                        break;
                    }
                } else {
                    if (s == '\n') ++line;
                    value += s;
                }
            }
            return {SqlToken::Kind::string, "", value, 0, tok_line};
        }
        // multi-char operators first
        for (const char* op : {"<>", ">=", "<="}) {
            if (src.compare(pos, 2, op) == 0) {
                pos += 2;
                return {SqlToken::Kind::punct, op, "", 0, tok_line};
            }
        }
        if (std::string("(),;=<>").find(c) != std::string::npos) {
            ++pos;
            return {SqlToken::Kind::punct, std::string(1, c), "", 0, tok_line};
        }
        dialect_error(tok_line, std::string("unexpected character '") + c + "'");
    }
};

struct SqlParser {
    std::vector<SqlToken> toks;
    std::size_t i = 0;

    const SqlToken& peek() const { return toks[i]; }
    SqlToken take() { return toks[i++]; }

    bool at_word(const char* w) const {
        return peek().kind == SqlToken::Kind::word && peek().text == w;
    }
    bool at_punct(const char* p) const {
        return peek().kind == SqlToken::Kind::punct && peek().text == p;
    }
    void expect_word(const char* w) {
        if (!at_word(w)) dialect_error(peek().line, std::string("expected ") + w);
        ++i;
    }
    void expect_punct(const char* p) {
        if (!at_punct(p)) dialect_error(peek().line, std::string("expected '") + p + "'");
        ++i;
    }

    // Consumes a balanced parenthesized group without interpreting it.
    void skip_paren_group() {
        expect_punct("(");
        std::size_t depth = 1;
        while (depth > 0) {
            if (peek().kind == SqlToken::Kind::end)
                dialect_error(peek().line, "unbalanced parentheses");
            if (at_punct("("))
                ++depth;
            else if (at_punct(")"))
                --depth;
            ++i;
        }
    }
};

struct PendingRow {
    bool is_thing = false;
    Tick tick = 0;
    ThingId id = 0;  // thing
    std::string label;
    ThingId member = 0, owner = 0;  // association
    std::size_t line = 0;
};

std::uint64_t expect_unsigned(SqlParser& p, const char* what) {
    const SqlToken& t = p.peek();
    if (t.kind != SqlToken::Kind::number || t.number < 0)
        dialect_error(t.line, std::string("expected non-negative integer for ") + what);
    std::uint64_t v = static_cast<std::uint64_t>(t.number);
    p.take();
    return v;
}

}  // namespace

Model ingest_sql(const std::string& sql) {
    SqlLexer lexer{sql};
    SqlParser p;
    while (true) {
        SqlToken t = lexer.next();
        if (t.kind == SqlToken::Kind::word && t.text == "NULL")
            dialect_error(t.line, "NULL is not part of the dialect");
        p.toks.push_back(t);
        if (t.kind == SqlToken::Kind::end) break;
    }

    std::vector<PendingRow> rows;
    bool saw_thing_table = false, saw_assoc_table = false;

    while (p.peek().kind != SqlToken::Kind::end) {
        std::size_t stmt_line = p.peek().line;
        if (p.at_word("CREATE")) {
            p.take();
            if (!p.at_word("TABLE")) dialect_error(stmt_line, "only CREATE TABLE is supported");
            p.take();
            if (p.peek().kind != SqlToken::Kind::word)
                dialect_error(p.peek().line, "expected table name");
            std::string table = p.take().text;
            if (table == "THING")
                saw_thing_table = true;
            else if (table == "ASSOCIATION")
                saw_assoc_table = true;
            else
                dialect_error(stmt_line, "unknown table " + table);
            p.skip_paren_group();
            p.expect_punct(";");
        } else if (p.at_word("INSERT")) {
            p.take();
            p.expect_word("INTO");
            if (p.peek().kind != SqlToken::Kind::word)
                dialect_error(p.peek().line, "expected table name");
            std::string table = p.take().text;
            PendingRow row;
            row.line = stmt_line;
            if (table == "THING") {
                row.is_thing = true;
                p.expect_punct("(");
                p.expect_word("ID");
                p.expect_punct(",");
                p.expect_word("LABEL");
                p.expect_punct(",");
                p.expect_word("CREATED_TICK");
                p.expect_punct(")");
                p.expect_word("VALUES");
                p.expect_punct("(");
                row.id = expect_unsigned(p, "id");
                p.expect_punct(",");
                if (p.peek().kind != SqlToken::Kind::string)
                    dialect_error(p.peek().line, "expected string literal for label");
                row.label = p.take().value;
                p.expect_punct(",");
                row.tick = expect_unsigned(p, "created_tick");
                p.expect_punct(")");
                p.expect_punct(";");
            } else if (table == "ASSOCIATION") {
                p.expect_punct("(");
                p.expect_word("TICK");
                p.expect_punct(",");
                p.expect_word("MEMBER_ID");
                p.expect_punct(",");
                p.expect_word("OWNER_ID");
                p.expect_punct(")");
                p.expect_word("VALUES");
                p.expect_punct("(");
                row.tick = expect_unsigned(p, "tick");
                p.expect_punct(",");
                row.member = expect_unsigned(p, "member_id");
                p.expect_punct(",");
                row.owner = expect_unsigned(p, "owner_id");
                p.expect_punct(")");
                p.expect_punct(";");
            } else {
                dialect_error(stmt_line, "unknown table " + table);
            }
            rows.push_back(std::move(row));
        } else {
            dialect_error(stmt_line, "statement outside the emitted dialect");
        }
    }
    if (!saw_thing_table || !saw_assoc_table)
        dialect_error(1, "schema missing: expected CREATE TABLE thing and association");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const PendingRow& a, const PendingRow& b) { return a.tick < b.tick; });

    Model m;
    for (const PendingRow& row : rows) {
        LogRecord record = row.is_thing ? LogRecord::thing(row.tick, row.id, row.label)
                                        : LogRecord::assoc(row.tick, row.member, row.owner);
        try {
            m.apply_record(record);
        } catch (const Error& e) {
            throw Error(Errc::integrity_error,
                        "line " + std::to_string(row.line) + ": " + e.what());
        }
    }
    return m;
}

}  // namespace cdm
