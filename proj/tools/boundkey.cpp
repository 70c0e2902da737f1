// boundkey: construct class-C states, check them, and reproduce sweeps.
//
// Exit codes: 0 success, 2 usage / parse / parameter error, 3 a constructed
// or loaded state failed validation, 1 anything else (e.g. unwritable output).
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boundkey/analysis.hpp"
#include "boundkey/criteria.hpp"
#include "boundkey/scan.hpp"
#include "boundkey/statefile.hpp"
#include "boundkey/states.hpp"

namespace {

using namespace boundkey;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Writes to --out when given, else to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_stdout() const { return !file_.is_open(); }

 private:
  std::ofstream file_;
};

// ---- construct ----

struct ConstructOptions {
  std::string cls;
  std::string unitary = "fourier";
  std::string angles;
  int d = 2;
  std::optional<double> p, alpha, beta;
  double q = 1.0;
  double noise = 0.0;
  std::string out;
};

io::StateFile build_state(const ConstructOptions& o) {
  io::StateFile f;
  auto& meta = f.metadata;
  meta.class_id = o.cls;
  const bool shield_from_angles = o.cls == "spider_y" || o.cls == "flag_form";
  const std::string unitary_id = shield_from_angles && o.unitary == "fourier" ? "hadamard" : o.unitary;
  const auto choice = scan::parse_unitary(unitary_id, o.angles);

  states::ClassParams params{o.d, o.p.value_or(0.5), o.alpha.value_or(0.0), o.beta.value_or(0.0)};
  states::XYPair xy;
  if (o.cls == "rho_U" || o.cls == "tilde" || o.cls == "pbit") {
    const Operator u = choice.make(o.d);
    meta.unitary = io::GeneratorUnitary{choice.id, u};
    xy = states::xy_from_unitary(u);
    if (o.cls == "pbit") {
      if (o.p || o.alpha || o.beta) throw UsageError("pbit takes no --p/--alpha/--beta");
      params = {o.d, 1.0, 1.0, 0.0};
    }
    if (o.cls == "tilde") {
      if (o.p || o.alpha || o.beta) throw UsageError("tilde fixes p, alpha and beta");
      params = {o.d, states::lambda_tilde(xy.norm_x_gamma), 1.0, 1.0};
    }
  } else if (o.cls == "spider_y") {
    if (o.d != 2) throw UsageError("spider_y states have d = 2");
    if (choice.id != "hadamard" && choice.id != "angles") throw UsageError("spider_y needs --unitary hadamard or angles");
    if (o.p) {
      xy = states::spider_y(choice.angles, choice.angles, o.q);
    } else {
      if (o.alpha || o.beta) throw UsageError("spider_y without --p takes p_max, alpha and beta = 0");
      auto s = analysis::spider_y_at(o.q, choice.angles, choice.angles);
      params = s.params;
      xy = std::move(s.xy);
    }
    meta.params["q"] = o.q;
  } else if (o.cls == "flag_form") {
    if (o.d != 2 || choice.id != "hadamard") throw UsageError("flag_form is defined for d = 2 and the Hadamard unitary");
    const Operator u = choice.make(2);
    meta.unitary = io::GeneratorUnitary{choice.id, u};
    xy = states::xy_from_unitary(u);
  } else {
    throw UsageError("unknown class '" + o.cls + "'");
  }
  params.validate();

  f.rho = o.cls == "flag_form" ? states::rho_h_flag_form(params).assemble() : states::class_c_state(params, xy);
  if (o.noise != 0.0) f.rho = states::add_white_noise(f.rho, o.noise);
  meta.params["d"] = params.d;
  meta.params["p"] = params.p;
  meta.params["alpha"] = params.alpha;
  meta.params["beta"] = params.beta;
  meta.params["norm_x_gamma"] = xy.norm_x_gamma;
  meta.params["noise"] = o.noise;
  return f;
}

int cmd_construct(const ConstructOptions& o) {
  if (o.noise < 0.0 || o.noise > 1.0) throw UsageError("--noise must lie in [0, 1]");
  io::StateFile f = build_state(o);
  const double min_eig = states::validate_state(f.rho);
  const double entropy = von_neumann_entropy(f.rho);
  f.metadata.derived["entropy"] = entropy;
  f.metadata.derived["min_eigenvalue"] = min_eig;
  io::write_state_file(o.out, f);

  std::cout << "class " << f.metadata.class_id;
  if (f.metadata.unitary) std::cout << " unitary " << f.metadata.unitary->id;
  std::cout << '\n';
  for (const auto& [k, v] : f.metadata.params) std::cout << "  " << k << " = " << fmt(v) << '\n';
  std::cout << "trace " << fmt(f.rho.trace().real()) << '\n'
            << "psd_margin " << fmt(min_eig) << '\n'
            << "entropy " << fmt(entropy) << '\n'
            << "wrote " << o.out << '\n';
  return 0;
}

// ---- check ----

struct CheckOptions {
  std::string in;
  bool ppt = false;
  bool key = false;
  bool sep = false;
  bool json = false;
};

// Class parameters recorded by construct, when the stored state is an
// unperturbed class-C state.
std::optional<std::pair<states::ClassParams, double>> class_params(const io::StateMetadata& meta) {
  const auto& p = meta.params;
  for (const char* k : {"d", "p", "alpha", "beta", "norm_x_gamma"}) {
    if (p.count(k) == 0) return std::nullopt;
  }
  if (p.count("noise") != 0 && p.at("noise") != 0.0) return std::nullopt;
  states::ClassParams c{static_cast<int>(p.at("d")), p.at("p"), p.at("alpha"), p.at("beta")};
  return std::make_pair(c, p.at("norm_x_gamma"));
}

std::vector<criteria::Verdict> run_checks(const io::StateFile& f, const CheckOptions& o, std::vector<std::string>& notes) {
  const bool all = !o.ppt && !o.key && !o.sep;
  const auto cls = class_params(f.metadata);
  std::vector<criteria::Verdict> out;
  if (all || o.ppt) {
    out.push_back(criteria::ppt_numeric(f.rho));
    if (cls) out.push_back(criteria::ppt_analytic_class_c(cls->first, cls->second));
  }
  if (all || o.key) {
    out.push_back(criteria::general_key_condition(f.rho));
    if (const auto spider = criteria::is_spider(f.rho)) {
      try {
        out.push_back(criteria::key_condition_spider(*spider));
      } catch (const std::invalid_argument& e) {
        notes.push_back(std::string("key_spider skipped: ") + e.what());
      }
    }
    if (cls) out.push_back(criteria::key_condition_class_c(cls->first));
  }
  if (all || o.sep) {
    if (cls && cls->first.d == 2 && f.metadata.unitary && f.metadata.class_id != "spider_y") {
      out.push_back(criteria::separability_conditions(cls->first, f.metadata.unitary->matrix));
    } else {
      notes.push_back("separable: analytic conditions need an unperturbed d = 2 rho_U state");
    }
  }
  return out;
}

int cmd_check(const CheckOptions& o) {
  const io::StateFile f = io::read_state_file(o.in);
  const double min_eig = states::validate_state(f.rho);
  std::vector<std::string> notes;
  const auto verdicts = run_checks(f, o, notes);
  if (o.json) {
    json report;
    report["file"] = o.in;
    report["class"] = f.metadata.class_id;
    report["min_eigenvalue"] = min_eig;
    report["verdicts"] = json::array();
    for (const auto& v : verdicts) {
      report["verdicts"].push_back({{"condition", v.condition},
                                    {"holds", v.holds},
                                    {"margin", v.margin},
                                    {"strict", v.strict},
                                    {"tolerance", v.tolerance},
                                    {"inputs", v.inputs}});
    }
    report["notes"] = notes;
    std::cout << report.dump(2) << '\n';
    return 0;
  }
  std::cout << "file " << o.in << " class " << (f.metadata.class_id.empty() ? "-" : f.metadata.class_id) << '\n';
  for (const auto& v : verdicts) {
    std::cout << std::left << std::setw(14) << v.condition << (v.holds ? " holds " : " fails ") << " margin "
              << fmt(v.margin) << (v.strict ? " (strict)" : "") << '\n';
  }
  for (const auto& n : notes) std::cout << "note: " << n << '\n';
  return 0;
}

// ---- scan ----

struct ScanOptions {
  std::string cls = "rho_U";
  std::string unitary = "fourier";
  std::string angles;
  int d = 2;
  std::string grid;
  bool dw = false;
  bool icoh = false;
  std::string out;
};

int cmd_scan(const ScanOptions& o) {
  scan::ScanConfig config;
  const auto family = scan::parse_family(o.cls);
  if (!family) throw UsageError("scan supports --class rho_U or spider_y");
  config.family = *family;
  const bool angles_needed = config.family == scan::Family::SpiderY && o.unitary == "fourier";
  config.unitary = scan::parse_unitary(angles_needed ? "hadamard" : o.unitary, o.angles);
  config.with_dw = o.dw;
  config.with_icoh = o.icoh;
  const auto points = scan::parse_grid(o.grid, o.d);
  const auto records = scan::run_scan(config, points);
  Output out(o.out);
  scan::write_csv(out.stream(), records);
  return 0;
}

// ---- noise ----

struct NoiseOptions {
  std::string cls = "tilde";
  std::string unitary = "hadamard";
  double eps_max = 0.2;
  int points = 41;
  std::string out;
};

int cmd_noise(const NoiseOptions& o) {
  if (o.cls != "tilde") throw UsageError("noise supports --class tilde");
  if (o.points < 2) throw UsageError("--points must be at least 2");
  if (!(o.eps_max > 0.0 && o.eps_max <= 1.0)) throw UsageError("--eps-max must lie in (0, 1]");
  const auto choice = scan::parse_unitary(o.unitary);
  const auto state = analysis::tilde_state(choice.make(2));
  const Operator rho = states::class_c_state(state.params, state.xy);

  const double delta = criteria::tolerable_noise_recurrence(state.params);
  const double dw_threshold = analysis::noise_threshold_dw(rho);

  std::vector<double> rate(static_cast<std::size_t>(o.points));
  std::vector<char> recurrence(rate.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < o.points; ++k) {
    const double eps = o.eps_max * k / (o.points - 1);
    const Operator noisy = states::add_white_noise(rho, eps);
    rate[static_cast<std::size_t>(k)] = analysis::dw_rate_ccq(noisy);
    recurrence[static_cast<std::size_t>(k)] = criteria::general_key_condition(noisy).holds;
  }

  Output out(o.out);
  auto& os = out.stream();
  os << "eps,dw_rate,dw_positive,recurrence_key\n";
  for (int k = 0; k < o.points; ++k) {
    const auto i = static_cast<std::size_t>(k);
    os << fmt(o.eps_max * k / (o.points - 1)) << ',' << fmt(rate[i]) << ',' << (rate[i] > 0.0) << ','
       << static_cast<int>(recurrence[i]) << '\n';
  }
  std::cout << "# recurrence_threshold " << fmt(delta) << '\n'
            << "# dw_threshold " << fmt(dw_threshold) << '\n'
            << "# ratio " << fmt(delta / dw_threshold) << '\n';
  return 0;
}

// ---- erasure ----

struct ErasureOptions {
  std::string config;
  std::string d_range = "2:15";
  std::string out;
};

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--d-range must be a:b");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a_str = s.substr(0, colon);
    const std::string b_str = s.substr(colon + 1);
    const int a = std::stoi(a_str, &used_a);
    const int b = std::stoi(b_str, &used_b);
    if (used_a != a_str.size() || used_b != b_str.size()) throw UsageError("--d-range must be a:b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--d-range must be a:b with integers");
  }
}

int cmd_erasure(const ErasureOptions& o) {
  const auto config = analysis::parse_erasure_config(o.config);
  if (!config) throw UsageError("unknown erasure config '" + o.config + "'");
  const auto [lo, hi] = parse_range(o.d_range);
  const auto reports = analysis::erasure_scan(*config, lo, hi);

  Output out(o.out);
  auto& os = out.stream();
  os << "d,icoh,s,s_ap_b_bp,s_b_bp,s_a_b_bp\n";
  std::optional<int> threshold;
  for (const auto& r : reports) {
    os << r.d << ',' << fmt(r.icoh) << ',' << fmt(r.s) << ',' << fmt(r.s_ap_b_bp) << ',' << fmt(r.s_b_bp) << ','
       << fmt(r.s_a_b_bp) << '\n';
    if (!threshold && r.icoh > 0.0) threshold = r.d;
  }
  std::cout << "# config " << analysis::to_string(*config) << '\n'
            << "# threshold " << (threshold ? std::to_string(*threshold) : std::string("none")) << '\n';
  return 0;
}

// ---- entropy-max ----

struct EntropyOptions {
  std::string family;
  int d = 2;
  std::string unitary = "hadamard";
  std::string angles;
};

void print_breakdown(const analysis::EntropyBreakdown& b) {
  std::cout << "  H(p)                  " << fmt(b.h_p) << '\n'
            << "  p H((1-alpha)/2)      " << fmt(b.p_h_alpha) << '\n'
            << "  p S(|X|)              " << fmt(b.p_s_x) << '\n'
            << "  (1-p) H((1-beta)/2)   " << fmt(b.q_h_beta) << '\n'
            << "  (1-p) S(|Y|)          " << fmt(b.q_s_y) << '\n';
}

void print_search(const analysis::MaxResult& r, const char* arg) {
  std::cout << "maximum " << fmt(r.value) << '\n'
            << "argmax " << arg << " = " << fmt(r.argmax) << '\n'
            << "grid_discrepancy " << fmt(r.discrepancy) << '\n';
}

int cmd_entropy_max(const EntropyOptions& o) {
  if (o.family == "rho_U") {
    const auto r = analysis::entropy_supremum_rho_u(o.d);
    print_search(r, "p");
    const auto xy = states::xy_from_unitary(states::fourier_unitary(o.d));
    const states::ClassParams params{o.d, r.argmax, std::sqrt((1.0 - r.argmax) / r.argmax), 0.0};
    print_breakdown(analysis::entropy_class_c(params, xy));
  } else if (o.family == "spider_y") {
    if (o.d != 2) throw UsageError("spider_y states have d = 2");
    const auto choice = scan::parse_unitary(o.unitary, o.angles);
    if (choice.id != "hadamard" && choice.id != "angles") throw UsageError("spider_y needs hadamard or angles");
    const auto r = analysis::entropy_max_spider_y(choice.angles);
    print_search(r.search, "q");
    std::cout << "p " << fmt(r.state.params.p) << " alpha " << fmt(r.state.params.alpha) << " beta "
              << fmt(r.state.params.beta) << '\n';
    print_breakdown(r.breakdown);
  } else if (o.family == "tilde") {
    const auto choice = scan::parse_unitary(o.unitary, o.angles);
    const auto s = analysis::tilde_state(choice.make(o.d));
    const auto b = analysis::entropy_class_c(s.params, s.xy);
    std::cout << "value " << fmt(b.total) << '\n' << "p " << fmt(s.params.p) << '\n';
    print_breakdown(b);
  } else {
    throw UsageError("unknown family '" + o.family + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-entangled key-distillable states: construction, verdicts and sweeps"};
  app.require_subcommand(1);
  std::function<int()> action;

  ConstructOptions co;
  auto* construct = app.add_subcommand("construct", "Build a state and write it as a state file");
  construct->add_option("--class", co.cls, "rho_U | tilde | spider_y | flag_form | pbit")
      ->required()
      ->check(CLI::IsMember({"rho_U", "tilde", "spider_y", "flag_form", "pbit"}));
  construct->add_option("--unitary", co.unitary, "hadamard | fourier | identity | angles")
      ->check(CLI::IsMember({"hadamard", "fourier", "identity", "angles"}));
  construct->add_option("--angles", co.angles, "alpha,beta,gamma,delta for --unitary angles");
  construct->add_option("--d", co.d, "shield dimension")->check(CLI::PositiveNumber);
  construct->add_option("--p", co.p);
  construct->add_option("--alpha", co.alpha);
  construct->add_option("--beta", co.beta);
  construct->add_option("--q", co.q, "spider_y mixing weight");
  construct->add_option("--noise", co.noise, "white-noise fraction eps");
  construct->add_option("--out", co.out)->required();
  construct->callback([&] { action = [&] { return cmd_construct(co); }; });

  CheckOptions ko;
  auto* check = app.add_subcommand("check", "Evaluate verdicts on a state file");
  check->add_option("--in", ko.in)->required();
  check->add_flag("--ppt", ko.ppt);
  check->add_flag("--key", ko.key);
  check->add_flag("--sep", ko.sep);
  check->add_flag("--json", ko.json);
  check->callback([&] { action = [&] { return cmd_check(ko); }; });

  ScanOptions so;
  auto* scan_cmd = app.add_subcommand("scan", "Sweep a parameter grid and write ScanRecord CSV");
  scan_cmd->add_option("--class", so.cls, "rho_U | spider_y");
  scan_cmd->add_option("--unitary", so.unitary);
  scan_cmd->add_option("--angles", so.angles);
  scan_cmd->add_option("--d", so.d)->check(CLI::PositiveNumber);
  scan_cmd->add_option("--grid", so.grid, "e.g. p=0.51:0.66:20,alpha=path,beta=path")->required();
  scan_cmd->add_flag("--dw", so.dw, "add the Devetak-Winter rate column");
  scan_cmd->add_flag("--icoh", so.icoh, "add the erasure coherent-information column");
  scan_cmd->add_option("--out", so.out);
  scan_cmd->callback([&] { action = [&] { return cmd_scan(so); }; });

  NoiseOptions no;
  auto* noise = app.add_subcommand("noise", "Noise thresholds with and without recurrence");
  noise->add_option("--class", no.cls);
  noise->add_option("--unitary", no.unitary);
  noise->add_option("--eps-max", no.eps_max);
  noise->add_option("--points", no.points);
  noise->add_option("--out", no.out);
  noise->callback([&] { action = [&] { return cmd_noise(no); }; });

  ErasureOptions eo;
  auto* erasure = app.add_subcommand("erasure", "Coherent information after erasing A' with probability 1/2");
  erasure->add_option("--config", eo.config, "tilde_unimodular | beta0 | noisy")->required();
  erasure->add_option("--d-range", eo.d_range, "a:b");
  erasure->add_option("--out", eo.out);
  erasure->callback([&] { action = [&] { return cmd_erasure(eo); }; });

  EntropyOptions mo;
  auto* entropy = app.add_subcommand("entropy-max", "Entropy maxima over PPT key-distillable families");
  entropy->add_option("--family", mo.family, "rho_U | spider_y | tilde")->required();
  entropy->add_option("--d", mo.d)->check(CLI::PositiveNumber);
  entropy->add_option("--unitary", mo.unitary);
  entropy->add_option("--angles", mo.angles);
  entropy->callback([&] { action = [&] { return cmd_entropy_max(mo); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return action();
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
