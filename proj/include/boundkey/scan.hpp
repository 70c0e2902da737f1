// Parameter sweeps over class-C families, one ScanRecord per grid point.
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundkey/states.hpp"

namespace boundkey::scan {

/// Malformed grid or unitary description.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// hadamard | fourier | identity | angles (single-qubit, from UnitaryAngles).
struct UnitaryChoice {
  std::string id = "fourier";
  states::UnitaryAngles angles;

  Operator make(int d) const;
};
/// `angles` is "alpha,beta,gamma,delta" and only read for id "angles".
UnitaryChoice parse_unitary(const std::string& id, const std::string& angles = {});

/// alpha or beta left empty means "path": min(1, alpha_1) or min(1, 1/alpha_1).
struct GridPoint {
  int d = 2;
  double p = 0.5;
  double q = 1.0;
  std::optional<double> alpha;
  std::optional<double> beta;
};

/// Parses "name=spec,name=spec,..." with names d, p, q, alpha, beta and spec
/// one of `x`, `a:b:n` (n evenly spaced values, endpoints included) or
/// `path` (alpha, beta only). p is required; d defaults to `default_d`, q to
/// 1 and alpha, beta to 0. Points are ordered lexicographically in
/// (d, p, q, alpha, beta), beta varying fastest.
std::vector<GridPoint> parse_grid(const std::string& spec, int default_d = 2);

enum class Family { RhoU, SpiderY };
std::optional<Family> parse_family(const std::string& name);

struct ScanConfig {
  Family family = Family::RhoU;
  UnitaryChoice unitary;
  bool with_dw = false;
  bool with_icoh = false;
};

struct ScanRecord {
  int d = 2;
  double p = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double q = 1.0;
  std::string unitary;
  bool ppt_analytic = false;
  double ppt_analytic_margin = 0.0;
  bool ppt_numeric = false;
  double min_eig_gamma = 0.0;
  bool key = false;
  double key_margin = 0.0;
  std::optional<bool> separable;  // d = 2 rho_U only
  std::optional<double> separable_margin;
  double entropy = 0.0;
  std::optional<double> tolerable_noise;  // p > 1/2 only
  std::optional<double> dw_rate;
  std::optional<double> icoh;
};

inline constexpr const char* kCsvHeader =
    "d,p,alpha,beta,q,unitary,ppt_analytic,ppt_analytic_margin,ppt_numeric,min_eig_gamma,key,key_margin,"
    "separable,separable_margin,entropy,tolerable_noise,dw_rate,icoh";

ScanRecord evaluate(const ScanConfig& config, const GridPoint& point);
/// Evaluates every point in parallel; output order follows `points`.
std::vector<ScanRecord> run_scan(const ScanConfig& config, const std::vector<GridPoint>& points);
void write_csv(std::ostream& os, const std::vector<ScanRecord>& records);

}  // namespace boundkey::scan
