#include "boundkey/statefile.hpp"

#include <cmath>
#include <fstream>

namespace boundkey::io {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const Complex z = m(i, k);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("cannot serialize a non-finite matrix entry");
      }
      row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& z = row[static_cast<std::size_t>(k)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      m(i, k) = {z[0].get<double>(), z[1].get<double>()};
    }
  }
  return m;
}

json to_json(const StateFile& file) {
  json meta;
  meta["class"] = file.metadata.class_id;
  meta["params"] = file.metadata.params;
  meta["derived"] = file.metadata.derived;
  if (file.metadata.unitary) {
    meta["unitary"] = {{"id", file.metadata.unitary->id}, {"matrix", matrix_to_json(file.metadata.unitary->matrix.matrix())}};
  }
  json out;
  out["format"] = kStateFileFormat;
  out["order"] = kOrderTag;
  out["dims"] = file.rho.dims();
  out["matrix"] = matrix_to_json(file.rho.matrix());
  out["metadata"] = std::move(meta);
  return out;
}

StateFile from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("state file must be a JSON object");
    if (!j.contains("format") || j.at("format") != kStateFileFormat) throw ParseError("unsupported state file format");
    if (j.value("order", std::string{}) != kOrderTag) throw ParseError("order tag must be \"A,B,A',B'\"");
    const auto dims = j.at("dims").get<Dims>();
    if (dims.size() != 4 || dims[0] != 2 || dims[1] != 2 || dims[2] != dims[3] || dims[2] < 1) {
      throw ParseError("dims must be [2, 2, d, d]");
    }
    Matrix m = matrix_from_json(j.at("matrix"));
    if (static_cast<std::size_t>(m.rows()) != product(dims)) throw ParseError("matrix side does not match dims");

    StateFile out{Operator(dims, std::move(m)), {}};
    if (j.contains("metadata")) {
      const json& meta = j.at("metadata");
      out.metadata.class_id = meta.value("class", std::string{});
      if (meta.contains("params")) out.metadata.params = meta.at("params").get<std::map<std::string, double>>();
      if (meta.contains("derived")) out.metadata.derived = meta.at("derived").get<std::map<std::string, double>>();
      if (meta.contains("unitary")) {
        const json& u = meta.at("unitary");
        Matrix um = matrix_from_json(u.at("matrix"));
        const int side = static_cast<int>(um.rows());
        out.metadata.unitary = GeneratorUnitary{u.value("id", std::string{}), Operator({side}, std::move(um))};
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed state file: ") + e.what());
  }
}

void write_state_file(const std::filesystem::path& path, const StateFile& file) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << to_json(file).dump(1) << '\n';
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace boundkey::io
