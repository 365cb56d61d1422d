#pragma once

#include <stdexcept>
#include <string>

namespace cdm {

// Every failure the engine can report, used to map errors onto CLI exit
// codes (domain errors -> 1, lexer/parser errors -> 2).
enum class Errc {
    // model mutations
    empty_label,
    invalid_label,
    duplicate_label,
    unknown_thing,
    self_association,
    duplicate_association,
    no_such_association,
    // queries
    same_thing,
    unknown_label,
    // query language
    lex_error,
    parse_error,
    // log files
    malformed_record,
    invariant_violation,
    io_error,
    log_locked,
    // relational import
    dialect_error,
    integrity_error,
    // opt-in strict tree mode
    cycle_rejected,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const { return code_; }

    bool is_parse_error() const {
        return code_ == Errc::lex_error || code_ == Errc::parse_error;
    }

private:
    Errc code_;
};

}  // namespace cdm
