#include "boundkey/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <map>
#include <sstream>

#include "boundkey/analysis.hpp"
#include "boundkey/criteria.hpp"

namespace boundkey::scan {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw GridError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw GridError("not a number: '" + s + "'");
  return v;
}

// Values of one axis; an empty optional stands for "path".
std::vector<std::optional<double>> parse_axis(const std::string& name, const std::string& spec) {
  if (spec == "path") {
    if (name != "alpha" && name != "beta") throw GridError("only alpha and beta accept 'path'");
    return {std::nullopt};
  }
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {parse_number(parts[0])};
  if (parts.size() != 3) throw GridError("range must be a:b:n, got '" + spec + "'");
  const double a = parse_number(parts[0]);
  const double b = parse_number(parts[1]);
  const double n_real = parse_number(parts[2]);
  if (n_real < 1 || n_real != std::floor(n_real)) throw GridError("point count must be a positive integer");
  const int n = static_cast<int>(n_real);
  std::vector<std::optional<double>> out;
  for (int k = 0; k < n; ++k) out.emplace_back(n == 1 ? a : a + (b - a) * k / (n - 1));
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "1" : "0";
  } else {
    return fmt(*v);
  }
}

}  // namespace

Operator UnitaryChoice::make(int d) const {
  if (id == "fourier") return states::fourier_unitary(d);
  if (id == "identity") return Operator::identity({d});
  if (d != 2) throw std::invalid_argument("unitary '" + id + "' is defined for d = 2 only");
  if (id == "hadamard") return states::hadamard();
  if (id == "angles") return states::qubit_unitary(angles);
  throw std::invalid_argument("unknown unitary '" + id + "'");
}

UnitaryChoice parse_unitary(const std::string& id, const std::string& angles) {
  UnitaryChoice c;
  c.id = id;
  if (id == "hadamard") {
    c.angles = states::hadamard_angles();
  } else if (id == "angles") {
    const auto parts = split(angles, ',');
    if (parts.size() != 4) throw GridError("angles must be alpha,beta,gamma,delta");
    c.angles = {parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]), parse_number(parts[3])};
  } else if (id != "fourier" && id != "identity") {
    throw GridError("unknown unitary '" + id + "'");
  }
  return c;
}

std::vector<GridPoint> parse_grid(const std::string& spec, int default_d) {
  static const std::vector<std::string> kOrder = {"d", "p", "q", "alpha", "beta"};
  std::map<std::string, std::vector<std::optional<double>>> axes;
  for (const auto& token : split(spec, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw GridError("grid entries must look like name=spec, got '" + token + "'");
    const std::string name = token.substr(0, eq);
    if (std::find(kOrder.begin(), kOrder.end(), name) == kOrder.end()) throw GridError("unknown grid axis '" + name + "'");
    if (axes.count(name) != 0) throw GridError("grid axis '" + name + "' given twice");
    axes[name] = parse_axis(name, token.substr(eq + 1));
  }
  if (axes.count("p") == 0) throw GridError("grid needs a p axis");
  axes.try_emplace("d", std::vector<std::optional<double>>{static_cast<double>(default_d)});
  axes.try_emplace("q", std::vector<std::optional<double>>{1.0});
  axes.try_emplace("alpha", std::vector<std::optional<double>>{0.0});
  axes.try_emplace("beta", std::vector<std::optional<double>>{0.0});
  for (const auto& v : axes.at("d")) {
    if (*v < 2 || *v != std::floor(*v)) throw GridError("d must be an integer >= 2");
  }

  std::vector<GridPoint> out;
  for (const auto& d : axes.at("d")) {
    for (const auto& p : axes.at("p")) {
      for (const auto& q : axes.at("q")) {
        for (const auto& a : axes.at("alpha")) {
          for (const auto& b : axes.at("beta")) out.push_back({static_cast<int>(*d), *p, *q, a, b});
        }
      }
    }
  }
  return out;
}

std::optional<Family> parse_family(const std::string& name) {
  if (name == "rho_U") return Family::RhoU;
  if (name == "spider_y") return Family::SpiderY;
  return std::nullopt;
}

ScanRecord evaluate(const ScanConfig& config, const GridPoint& point) {
  std::optional<Operator> unitary;
  states::XYPair xy;
  if (config.family == Family::SpiderY) {
    if (point.d != 2) throw std::invalid_argument("spider_y states have d = 2");
    if (config.unitary.id != "hadamard" && config.unitary.id != "angles") {
      throw std::invalid_argument("spider_y needs a hadamard or angles unitary");
    }
    xy = states::spider_y(config.unitary.angles, config.unitary.angles, point.q);
  } else {
    unitary = config.unitary.make(point.d);
    xy = states::xy_from_unitary(*unitary);
  }

  states::ClassParams params{point.d, point.p, 0.0, 0.0};
  const double a1 = criteria::alpha_one(params, xy.norm_x_gamma);
  params.alpha = point.alpha.value_or(std::min(1.0, a1));
  params.beta = point.beta.value_or(std::min(1.0, 1.0 / a1));
  params.validate();

  ScanRecord r;
  r.d = point.d;
  r.p = params.p;
  r.alpha = params.alpha;
  r.beta = params.beta;
  r.q = point.q;
  r.unitary = config.unitary.id;

  const auto ppt_a = criteria::ppt_analytic_class_c(params, xy.norm_x_gamma);
  r.ppt_analytic = ppt_a.holds;
  r.ppt_analytic_margin = ppt_a.margin;

  const Operator rho = states::class_c_state(params, xy);
  const auto ppt_n = criteria::ppt_numeric(rho);
  r.ppt_numeric = ppt_n.holds;
  r.min_eig_gamma = ppt_n.margin;

  const auto key = criteria::key_condition_class_c(params);
  r.key = key.holds;
  r.key_margin = key.margin;

  if (unitary && point.d == 2) {
    const auto sep = criteria::separability_conditions(params, *unitary);
    r.separable = sep.holds;
    r.separable_margin = sep.margin;
  }
  r.entropy = analysis::entropy_class_c(params, xy).total;
  if (params.p > 0.5) r.tolerable_noise = criteria::tolerable_noise_recurrence(params);
  if (config.with_dw) r.dw_rate = analysis::dw_rate_ccq(rho);
  if (config.with_icoh) r.icoh = analysis::coherent_information_erasure(params, xy).icoh;
  return r;
}

std::vector<ScanRecord> run_scan(const ScanConfig& config, const std::vector<GridPoint>& points) {
  std::vector<ScanRecord> out(points.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = evaluate(config, points[static_cast<std::size_t>(k)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.d << ',' << fmt(r.p) << ',' << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << fmt(r.q) << ','
       << r.unitary << ',' << r.ppt_analytic << ',' << fmt(r.ppt_analytic_margin) << ',' << r.ppt_numeric << ','
       << fmt(r.min_eig_gamma) << ',' << r.key << ',' << fmt(r.key_margin) << ',' << opt(r.separable) << ','
       << opt(r.separable_margin) << ',' << fmt(r.entropy) << ',' << opt(r.tolerable_noise) << ','
       << opt(r.dw_rate) << ',' << opt(r.icoh) << '\n';
  }
}

}  // namespace boundkey::scan
