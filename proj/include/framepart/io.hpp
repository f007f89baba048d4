#pragma once

// Vector files.
//
// JSON (canonical):
//   {"format": "frame-vectors", "version": 1, "dim": d, "field": "real"|"complex",
//    "count": n, "vectors": [...], "labels": [...]}
// Real vectors are arrays of d numbers; complex vectors are arrays of d
// [re, im] pairs. "labels" is optional. Doubles are written in shortest
// round-trip form, so write -> read is bit-exact.
//
// CSV (importer/exporter):
//   # dim=<d> field=<real|complex> count=<n>
//   one row per vector; real cells are numbers, complex cells are "re:im".
//   Complex rows may instead hold 2d plain numbers, re and im interleaved.
//   Lines that are blank or start with '#' after the header are skipped.
//   Numbers are written with 17 significant digits.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "framepart/linalg.hpp"

namespace framepart {

enum class VectorFormat { Json, Csv };

/// .csv selects CSV, anything else JSON.
VectorFormat format_for_path(const std::filesystem::path& path);

nlohmann::json vectors_to_json(const UnitVectorSequence& seq);
UnitVectorSequence vectors_from_json(const nlohmann::json& doc, bool renormalize = false);

std::string vectors_to_csv(const UnitVectorSequence& seq);
UnitVectorSequence vectors_from_csv(const std::string& text, bool renormalize = false);

std::string serialize_vectors(const UnitVectorSequence& seq, VectorFormat format);
UnitVectorSequence parse_vectors(const std::string& text, VectorFormat format, bool renormalize = false);

/// Throws IoError when the file cannot be read, FormatError when it is
/// malformed and NormViolation when vectors are not unit-norm.
UnitVectorSequence read_vector_file(const std::filesystem::path& path, bool renormalize = false);
void write_vector_file(const std::filesystem::path& path, const UnitVectorSequence& seq);
void write_vector_file(const std::filesystem::path& path, const UnitVectorSequence& seq, VectorFormat format);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// "sha256:<hex>" over a canonical byte encoding of the sequence: the ASCII
/// header "frame-vectors/1 <field> <dim> <count>\n" followed by every
/// coordinate (vector-major; re, then im in complex mode) as little-endian
/// IEEE-754 binary64. Labels and file formatting do not affect it.
std::string input_digest(const UnitVectorSequence& seq);

}  // namespace framepart
