#pragma once

// JSON file formats.
//
// State file:  {"dims": [2, 2], "matrix": [[[re, im], ...], ...], "label": "..."}
//          or  {"dims": [2, 2], "vector": [[re, im], ...]}
// Matrix rows are listed in order (row-major). Exactly one of "matrix" and
// "vector" must be present; "label" is optional.
//
// Basis file:  {"dim": d, "vectors": [[[re, im], ...], ...]}, one basis
// vector per row.

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "qcorr/measurements.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

using json = nlohmann::ordered_json;

struct StateFile {
  Dims dims;
  std::variant<Matrix, Vector> content;
  std::string label;

  bool is_vector() const { return std::holds_alternative<Vector>(content); }
};

json to_json(const StateFile& file);
/// Throws ParseError naming the offending field.
StateFile state_file_from_json(const json& j);

/// Validates; vectors become projectors after the unit-norm check.
DensityMatrix to_density(const StateFile& file);
StateFile to_state_file(const DensityMatrix& rho);

/// Throws IoError, ParseError, or a validation error.
StateFile read_state_file(const std::filesystem::path& path);
DensityMatrix parse_state(const std::filesystem::path& path);
void write_state_file(const StateFile& file, const std::filesystem::path& path);
void serialize(const DensityMatrix& rho, const std::filesystem::path& path);

json basis_to_json(const ProjectiveBasis& basis);
ProjectiveBasis basis_from_json(const json& j);
ProjectiveBasis read_basis_file(const std::filesystem::path& path);
void write_basis_file(const ProjectiveBasis& basis, const std::filesystem::path& path);

/// Reads a whole file; throws IoError.
std::string read_text(const std::filesystem::path& path);
/// Writes a whole file; throws IoError.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qcorr
