#include "qcorr/io.hpp"

#include <fstream>
#include <sstream>

namespace qcorr {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_fail("field '" + field + "': expected [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Vector vector_from(const json& j, const std::string& field) {
  if (!j.is_array()) parse_fail("field '" + field + "': expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

Matrix rows_from(const json& j, const std::string& field, Eigen::Index expected_cols) {
  if (!j.is_array()) parse_fail("field '" + field + "': expected an array of rows");
  Matrix m(static_cast<Eigen::Index>(j.size()), expected_cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string name = field + "[" + std::to_string(r) + "]";
    const Vector row = vector_from(j[r], name);
    if (row.size() != expected_cols) {
      parse_fail("field '" + name + "': row has " + std::to_string(row.size()) + " entries, expected " +
                 std::to_string(expected_cols));
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

json rows_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(source + ": " + e.what());
  }
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

json to_json(const StateFile& file) {
  json j;
  j["dims"] = file.dims;
  if (const auto* v = std::get_if<Vector>(&file.content)) {
    j["vector"] = vector_json(*v);
  } else {
    j["matrix"] = rows_json(std::get<Matrix>(file.content));
  }
  if (!file.label.empty()) j["label"] = file.label;
  return j;
}

StateFile state_file_from_json(const json& j) {
  if (!j.is_object()) parse_fail("state file must be a JSON object");
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty()) {
    parse_fail("field 'dims': expected a nonempty array of integers");
  }
  StateFile f;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 2) parse_fail("field 'dims': entries must be integers >= 2");
    f.dims.push_back(d.get<int>());
  }
  const int total = total_dim(f.dims);
  const bool has_m = j.contains("matrix");
  const bool has_v = j.contains("vector");
  if (has_m == has_v) parse_fail("exactly one of 'matrix' and 'vector' is required");
  if (has_m) {
    const json& rows = j["matrix"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != total) {
      parse_fail("field 'matrix': expected " + std::to_string(total) + " rows for dims product " +
                 std::to_string(total));
    }
    f.content = rows_from(rows, "matrix", total);
  } else {
    Vector v = vector_from(j["vector"], "vector");
    if (v.size() != total) {
      parse_fail("field 'vector': length " + std::to_string(v.size()) + " does not match dims product " +
                 std::to_string(total));
    }
    f.content = std::move(v);
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) parse_fail("field 'label': expected a string");
    f.label = j["label"].get<std::string>();
  }
  return f;
}

DensityMatrix to_density(const StateFile& file) {
  if (const auto* v = std::get_if<Vector>(&file.content)) {
    return PureStateVector::validate(*v, file.dims).projector().with_label(file.label);
  }
  return DensityMatrix::validate(std::get<Matrix>(file.content), file.dims, file.label);
}

StateFile to_state_file(const DensityMatrix& rho) { return StateFile{rho.dims(), rho.matrix(), rho.label()}; }

StateFile read_state_file(const std::filesystem::path& path) {
  return state_file_from_json(parse_json_text(read_text(path), path.string()));
}

DensityMatrix parse_state(const std::filesystem::path& path) { return to_density(read_state_file(path)); }

void write_state_file(const StateFile& file, const std::filesystem::path& path) {
  write_text(path, to_json(file).dump(2) + "\n");
}

void serialize(const DensityMatrix& rho, const std::filesystem::path& path) {
  write_state_file(to_state_file(rho), path);
}

json basis_to_json(const ProjectiveBasis& basis) {
  json j;
  j["dim"] = basis.dim();
  j["vectors"] = rows_json(basis.vectors().transpose());
  return j;
}

ProjectiveBasis basis_from_json(const json& j) {
  if (!j.is_object()) parse_fail("basis file must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    parse_fail("field 'dim': expected a positive integer");
  }
  const int d = j["dim"].get<int>();
  if (!j.contains("vectors") || !j["vectors"].is_array() || static_cast<int>(j["vectors"].size()) != d) {
    parse_fail("field 'vectors': expected " + std::to_string(d) + " vectors");
  }
  const Matrix rows = rows_from(j["vectors"], "vectors", d);
  return ProjectiveBasis::from_columns(rows.transpose());
}

ProjectiveBasis read_basis_file(const std::filesystem::path& path) {
  return basis_from_json(parse_json_text(read_text(path), path.string()));
}

void write_basis_file(const ProjectiveBasis& basis, const std::filesystem::path& path) {
  write_text(path, basis_to_json(basis).dump(2) + "\n");
}

}  // namespace qcorr
