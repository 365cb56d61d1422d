#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdm/model.hpp"
#include "cdm/query.hpp"

namespace cdm {

// The CDM query language. Keywords are case insensitive, labels are
// double-quoted strings with \" \\ \n escapes, comments run from -- to
// end of line, statements end with ';'.
//
//   THING "Chair";
//   ASSOC "Chair" -> "Furniture";
//   DROP THING "Chair";            DROP ASSOC "Chair" -> "Furniture";
//   OWNERS OF "Chair";             MEMBERS OF "Furniture";
//   REACH "Chair" UP;              -- UP | DOWN | ANY
//   PATHS "Table" TO "Made of wood";
//   TRACE "Chair";
//   ASOF 2 { OWNERS OF "Chair"; }  -- wraps exactly one read query
//   VALIDATE;  STATS;
//   EXPORT DOT "out.dot";          EXPORT SQL "out.sql";

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

enum class TokenKind { keyword, string, integer, arrow, semicolon, lbrace, rbrace, identifier, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;             // raw source slice
    std::string value;            // unescaped content (string tokens)
    std::uint64_t number = 0;     // integer tokens
    SourcePos pos;
};

class ParseError : public Error {
public:
    ParseError(Errc code, SourcePos pos, std::string expected, std::string found,
               bool at_end, std::string message)
        : Error(code, std::move(message)),
          pos_(pos),
          expected_(std::move(expected)),
          found_(std::move(found)),
          at_end_(at_end) {}

    SourcePos pos() const { return pos_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }
    // True when more input could complete the statement (REPL continuation).
    bool at_end() const { return at_end_; }

private:
    SourcePos pos_;
    std::string expected_;
    std::string found_;
    bool at_end_;
};

enum class StatementKind {
    create_thing,
    assoc,
    drop_thing,
    drop_assoc,
    owners,
    members,
    reach,
    paths,
    trace,
    as_of,
    validate,
    stats,
    export_dot,
    export_sql,
};

struct Statement {
    StatementKind kind = StatementKind::validate;
    std::string arg1;  // label, member label, or export path
    std::string arg2;  // owner label / destination label
    Tick tick = 0;     // as_of
    Direction dir = Direction::upward;
    std::shared_ptr<Statement> inner;  // as_of body
    SourcePos pos;

    bool is_mutation() const;
    // The five forms ASOF may wrap.
    bool is_wrappable_query() const;

    // Semantic equality; source positions are ignored.
    bool operator==(const Statement& other) const;
};

std::vector<Token> tokenize(std::string_view source);
std::vector<Statement> parse(const std::vector<Token>& tokens);
std::vector<Statement> parse_script(std::string_view source);

// Canonical pretty-printer; parse(tokenize(format_statements(s))) == s.
std::string format_statement(const Statement& s);
std::string format_statements(const std::vector<Statement>& statements);

// -- evaluation -----------------------------------------------------------

struct RenderedReport {
    std::vector<std::string> errors;
    std::vector<std::vector<std::string>> directed_cycles;
    std::vector<std::pair<std::string, std::string>> non_unique_paths;
    std::size_t components = 0;
};

struct ResultSet {
    enum class Kind { ack, names, paths, trace, report, table, wrote };

    struct TraceLine {
        Tick tick = 0;
        std::string kind;
        std::string counterpart;  // empty when not applicable
    };

    Kind kind = Kind::ack;
    Tick ack_tick = 0;
    std::size_t cascaded = 0;
    bool has_cascaded = false;
    std::vector<std::string> names;  // sorted lexicographically
    std::vector<std::vector<std::string>> label_paths;
    bool unique = false;
    bool truncated = false;
    std::vector<TraceLine> trace_lines;
    RenderedReport report;
    std::vector<std::pair<std::string, std::uint64_t>> table;
    std::string wrote_path;
    std::size_t wrote_bytes = 0;
};

struct EvalOptions {
    bool strict_tree = false;  // reject ASSOC that closes an undirected cycle
    PathLimits path_limits{};
};

// Mutations delegate to Model (and acknowledge with the issued tick),
// reads delegate to the query functions. Labels resolve by exact match
// among alive things.
ResultSet evaluate(Model& m, const Statement& s, const EvalOptions& options = {});

std::string render_text(const ResultSet& r);
std::string render_json(const ResultSet& r);  // one JSON value, one line

}  // namespace cdm
