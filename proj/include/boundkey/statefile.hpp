// JSON serialization of states on (A, B, A', B').
//
// Schema (format 1):
//   {
//     "format": 1,
//     "order": "A,B,A',B'",
//     "dims": [2, 2, d, d],
//     "matrix": [[[re, im], ...], ...],      // row-major, side 4 d^2
//     "metadata": {
//       "class": "rho_U",                     // free-form class id
//       "params": {"p": ..., "alpha": ...},   // numeric parameters
//       "derived": {"entropy": ...},          // informational, not read back into verdicts
//       "unitary": {"id": "hadamard", "matrix": [[[re, im], ...], ...]}  // optional
//     }
//   }
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "boundkey/linops.hpp"

namespace boundkey::io {

inline constexpr int kStateFileFormat = 1;
inline constexpr const char* kOrderTag = "A,B,A',B'";

/// Malformed or unreadable state file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorUnitary {
  std::string id;
  Operator matrix;
};

struct StateMetadata {
  std::string class_id;
  std::map<std::string, double> params;
  std::map<std::string, double> derived;
  std::optional<GeneratorUnitary> unitary;
};

struct StateFile {
  Operator rho;
  StateMetadata metadata;
};

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StateFile& file);
/// Throws ParseError on schema violations (wrong format, order, dims or side).
StateFile from_json(const nlohmann::json& j);

void write_state_file(const std::filesystem::path& path, const StateFile& file);
StateFile read_state_file(const std::filesystem::path& path);

}  // namespace boundkey::io
