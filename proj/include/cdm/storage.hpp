#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "cdm/model.hpp"

namespace cdm {

// Text log format, one record per line, LF endings:
//
//   T <tick> <id> "<label>"
//   A <tick> <member> <owner>
//   RT <tick> <id>
//   RA <tick> <member> <owner>
//
// Serialization is canonical: equal models produce identical bytes.

// Writes the full record history (tombstones included); returns bytes written.
std::size_t write_log(const Model& m, std::ostream& sink);
std::string write_log(const Model& m);

// Rebuilds a model by validating and applying records in order. Throws
// Error{malformed_record} for unparseable lines and
// Error{invariant_violation} for well-formed records that break a model
// rule; both messages carry the 1-based line number.
Model replay(std::istream& source);
Model replay(const std::string& text);

// Parses a single record line (no trailing LF). Used by replay and by the
// crash-recovery checks in tests.
LogRecord parse_record(const std::string& line, std::size_t line_no);

// GraphViz directed graph over the alive state: one node per thing in id
// order, one edge per event in tick order, edge label "t<tick>".
std::size_t export_dot(const Model& m, std::ostream& sink);
std::string export_dot(const Model& m);

Model load_model_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cdm
