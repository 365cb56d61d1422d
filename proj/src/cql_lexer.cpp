#include <algorithm>
#include <array>
#include <charconv>
#include <string_view>

#include "cdm/cql.hpp"

namespace cdm {

namespace {

constexpr std::array<std::string_view, 19> kKeywords = {
    "THING", "ASSOC", "DROP",  "OWNERS", "MEMBERS", "OF",     "REACH",
    "UP",    "DOWN",  "ANY",   "PATHS",  "TO",      "TRACE",  "ASOF",
    "VALIDATE", "STATS", "EXPORT", "DOT", "SQL",
};

std::string upper(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
}

bool is_keyword(std::string_view word) {
    std::string u = upper(word);
    return std::find(kKeywords.begin(), kKeywords.end(), u) != kKeywords.end();
}

[[noreturn]] void lex_error(SourcePos pos, const std::string& message) {
    throw ParseError(Errc::lex_error, pos, "", "", false,
                     std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         message);
}

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    bool done() const { return pos >= src.size(); }
    char peek() const { return src[pos]; }
    char peek2() const { return pos + 1 < src.size() ? src[pos + 1] : '\0'; }

    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        return c;
    }

    SourcePos here() const { return {line, column}; }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    Cursor cur{source};

    while (!cur.done()) {
        char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            cur.advance();
            continue;
        }
        SourcePos start = cur.here();
        if (c == '-') {
            if (cur.peek2() == '-') {
                while (!cur.done() && cur.peek() != '\n') cur.advance();
                continue;
            }
            if (cur.peek2() == '>') {
                cur.advance();
                cur.advance();
                tokens.push_back({TokenKind::arrow, "->", "", 0, start});
                continue;
            }
            lex_error(start, "illegal character '-'");
        }
        if (c == ';') {
            cur.advance();
            tokens.push_back({TokenKind::semicolon, ";", "", 0, start});
            continue;
        }
        if (c == '{') {
            cur.advance();
            tokens.push_back({TokenKind::lbrace, "{", "", 0, start});
            continue;
        }
        if (c == '}') {
            cur.advance();
            tokens.push_back({TokenKind::rbrace, "}", "", 0, start});
            continue;
        }
        if (c == '"') {
            cur.advance();
            std::string raw = "\"";
            std::string value;
            bool closed = false;
            while (!cur.done()) {
                char s = cur.peek();
                if (s == '\n') break;  // strings do not span lines
                cur.advance();
                raw += s;
                if (s == '"') {
                    closed = true;
                    break;
                }
                if (s == '\\') {
                    if (cur.done() || cur.peek() == '\n') break;
                    char e = cur.advance();
                    raw += e;
                    switch (e) {
                        case '"': value += '"'; break;
                        case '\\': value += '\\'; break;
                        case 'n': value += '\n'; break;
                        default:
                            lex_error(start, std::string("invalid escape '\\") + e +
                                                 "' in string literal");
                    }
                } else {
                    value += s;
                }
            }
            if (!closed) lex_error(start, "unterminated string literal");
            tokens.push_back({TokenKind::string, raw, value, 0, start});
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::string digits;
            while (!cur.done() && cur.peek() >= '0' && cur.peek() <= '9')
                digits += cur.advance();
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (ec != std::errc() || ptr != digits.data() + digits.size())
                lex_error(start, "integer literal out of range");
            tokens.push_back({TokenKind::integer, digits, "", value, start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (!cur.done() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                                   cur.peek() == '_'))
                word += cur.advance();
            TokenKind kind = is_keyword(word) ? TokenKind::keyword : TokenKind::identifier;
            tokens.push_back({kind, word, "", 0, start});
            continue;
        }
        lex_error(start, std::string("illegal character '") + c + "'");
    }
    tokens.push_back({TokenKind::end, "", "", 0, cur.here()});
    return tokens;
}

}  // namespace cdm
