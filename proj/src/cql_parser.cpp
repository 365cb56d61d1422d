#include <algorithm>

#include "cdm/cql.hpp"

namespace cdm {

bool Statement::is_mutation() const {
    switch (kind) {
        case StatementKind::create_thing:
        case StatementKind::assoc:
        case StatementKind::drop_thing:
        case StatementKind::drop_assoc:
            return true;
        default:
            return false;
    }
}

bool Statement::is_wrappable_query() const {
    switch (kind) {
        case StatementKind::owners:
        case StatementKind::members:
        case StatementKind::reach:
        case StatementKind::paths:
        case StatementKind::trace:
            return true;
        default:
            return false;
    }
}

bool Statement::operator==(const Statement& other) const {
    if (kind != other.kind || arg1 != other.arg1 || arg2 != other.arg2 ||
        tick != other.tick || dir != other.dir)
        return false;
    if ((inner == nullptr) != (other.inner == nullptr)) return false;
    return inner == nullptr || *inner == *other.inner;
}

namespace {

std::string upper(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return text;
}

std::string describe(const Token& t) {
    if (t.kind == TokenKind::end) return "end of input";
    return "'" + t.text + "'";
}

struct Parser {
    const std::vector<Token>& toks;
    std::size_t i = 0;

    const Token& peek() const { return toks[i]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        bool at_end = t.kind == TokenKind::end;
        throw ParseError(Errc::parse_error, t.pos, expected, t.text, at_end,
                         std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) +
                             ": expected " + expected + ", found " + describe(t));
    }

    [[noreturn]] void reject(const std::string& why) const {
        const Token& t = peek();
        throw ParseError(Errc::parse_error, t.pos, why, t.text, false,
                         std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) +
                             ": " + why);
    }

    bool at_keyword(const char* kw) const {
        return peek().kind == TokenKind::keyword && upper(peek().text) == kw;
    }

    void expect_keyword(const char* kw) {
        if (!at_keyword(kw)) fail(std::string(kw));
        ++i;
    }

    std::string expect_string(const char* what) {
        if (peek().kind != TokenKind::string) fail(std::string(what));
        return toks[i++].value;
    }

    std::uint64_t expect_integer(const char* what) {
        if (peek().kind != TokenKind::integer) fail(std::string(what));
        return toks[i++].number;
    }

    void expect(TokenKind kind, const char* what) {
        if (peek().kind != kind) fail(std::string(what));
        ++i;
    }

    void end_statement() { expect(TokenKind::semicolon, "';'"); }

    Statement statement() {
        SourcePos pos = peek().pos;
        Statement s;
        s.pos = pos;

        if (at_keyword("THING")) {
            ++i;
            s.kind = StatementKind::create_thing;
            s.arg1 = expect_string("a quoted label");
            end_statement();
            return s;
        }
        if (at_keyword("ASSOC")) {
            ++i;
            s.kind = StatementKind::assoc;
            s.arg1 = expect_string("a quoted member label");
            expect(TokenKind::arrow, "'->'");
            s.arg2 = expect_string("a quoted owner label");
            end_statement();
            return s;
        }
        if (at_keyword("DROP")) {
            ++i;
            if (at_keyword("THING")) {
                ++i;
                s.kind = StatementKind::drop_thing;
                s.arg1 = expect_string("a quoted label");
            } else if (at_keyword("ASSOC")) {
                ++i;
                s.kind = StatementKind::drop_assoc;
                s.arg1 = expect_string("a quoted member label");
                expect(TokenKind::arrow, "'->'");
                s.arg2 = expect_string("a quoted owner label");
            } else {
                fail("THING or ASSOC");
            }
            end_statement();
            return s;
        }
        if (at_keyword("VALIDATE")) {
            ++i;
            s.kind = StatementKind::validate;
            end_statement();
            return s;
        }
        if (at_keyword("STATS")) {
            ++i;
            s.kind = StatementKind::stats;
            end_statement();
            return s;
        }
        if (at_keyword("EXPORT")) {
            ++i;
            if (at_keyword("DOT")) {
                s.kind = StatementKind::export_dot;
            } else if (at_keyword("SQL")) {
                s.kind = StatementKind::export_sql;
            } else {
                fail("DOT or SQL");
            }
            ++i;
            s.arg1 = expect_string("a quoted file path");
            end_statement();
            return s;
        }
        return query_statement(false);
    }

    // The five read queries plus ASOF; ASOF wraps exactly one of the five.
    Statement query_statement(bool inside_asof) {
        SourcePos pos = peek().pos;
        Statement s;
        s.pos = pos;

        if (at_keyword("OWNERS") || at_keyword("MEMBERS")) {
            s.kind = at_keyword("OWNERS") ? StatementKind::owners : StatementKind::members;
            ++i;
            expect_keyword("OF");
            s.arg1 = expect_string("a quoted label");
            end_statement();
            return s;
        }
        if (at_keyword("REACH")) {
            ++i;
            s.kind = StatementKind::reach;
            s.arg1 = expect_string("a quoted label");
            if (at_keyword("UP"))
                s.dir = Direction::upward;
            else if (at_keyword("DOWN"))
                s.dir = Direction::downward;
            else if (at_keyword("ANY"))
                s.dir = Direction::undirected;
            else
                fail("UP, DOWN or ANY");
            ++i;
            end_statement();
            return s;
        }
        if (at_keyword("PATHS")) {
            ++i;
            s.kind = StatementKind::paths;
            s.arg1 = expect_string("a quoted label");
            expect_keyword("TO");
            s.arg2 = expect_string("a quoted label");
            end_statement();
            return s;
        }
        if (at_keyword("TRACE")) {
            ++i;
            s.kind = StatementKind::trace;
            s.arg1 = expect_string("a quoted label");
            end_statement();
            return s;
        }
        if (at_keyword("ASOF")) {
            if (inside_asof) reject("ASOF cannot nest");
            ++i;
            s.kind = StatementKind::as_of;
            s.tick = expect_integer("a tick number");
            expect(TokenKind::lbrace, "'{'");
            if (at_keyword("THING") || at_keyword("ASSOC") || at_keyword("DROP"))
                reject("mutation not allowed inside ASOF");
            s.inner = std::make_shared<Statement>(query_statement(true));
            expect(TokenKind::rbrace, "'}'");
            return s;
        }
        if (inside_asof) fail("a read query (OWNERS, MEMBERS, REACH, PATHS or TRACE)");
        fail("a statement keyword");
    }

    std::vector<Statement> script() {
        std::vector<Statement> out;
        while (peek().kind != TokenKind::end) out.push_back(statement());
        return out;
    }
};

}  // namespace

std::vector<Statement> parse(const std::vector<Token>& tokens) {
    Parser p{tokens};
    return p.script();
}

std::vector<Statement> parse_script(std::string_view source) {
    return parse(tokenize(source));
}

}  // namespace cdm
