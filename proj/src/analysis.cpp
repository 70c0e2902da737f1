#include "boundkey/analysis.hpp"

#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <exception>
#include <limits>
#include <sstream>

namespace boundkey::analysis {

namespace {

double singular_value_entropy(const Matrix& x) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x);
  const Eigen::VectorXd& s = svd.singularValues();
  return shannon_entropy({s.data(), static_cast<std::size_t>(s.size())});
}

double entropy_bits(const Matrix& m) { return spectrum_entropy(hermitian_eigenvalues(m).values); }

// Partial trace over A' of every AB block of the class-C state, giving the
// (2, 2, d) marginal on A B B'.
Operator marginal_a_b_bp(const ClassParams& params, const XYPair& xy, const Matrix& sxx, const Matrix& sxdx,
                         const Matrix& syy, const Matrix& sydy) {
  const int d = xy.d();
  const double p = params.p;
  const auto tr_ap = [&](const Matrix& m) { return partial_trace(Operator({d, d}, m), {0}).matrix(); };
  Matrix out = Matrix::Zero(4 * d, 4 * d);
  const auto put = [&](int i, int j, const Matrix& m) { out.block(i * d, j * d, d, d) = m; };
  put(0, 0, 0.5 * p * tr_ap(sxx));
  put(0, 3, 0.5 * params.alpha * p * tr_ap(xy.x.matrix()));
  put(3, 0, 0.5 * params.alpha * p * tr_ap(xy.x.matrix().adjoint()));
  put(3, 3, 0.5 * p * tr_ap(sxdx));
  put(1, 1, 0.5 * (1.0 - p) * tr_ap(syy));
  put(1, 2, 0.5 * params.beta * (1.0 - p) * tr_ap(xy.y.matrix()));
  put(2, 1, 0.5 * params.beta * (1.0 - p) * tr_ap(xy.y.matrix().adjoint()));
  put(2, 2, 0.5 * (1.0 - p) * tr_ap(sydy));
  return {{2, 2, d}, std::move(out)};
}

void finish(ErasureReport& r) {
  r.icoh = 0.5 * (r.s_ap_b_bp - r.s) + 0.5 * (r.s_b_bp - r.s_a_b_bp);
}

}  // namespace

EntropyBreakdown entropy_class_c(const ClassParams& params, const XYPair& xy) {
  params.validate();
  const double p = params.p;
  EntropyBreakdown b;
  b.h_p = binary_entropy(p);
  b.p_h_alpha = p * binary_entropy((1.0 - params.alpha) / 2.0);
  b.p_s_x = p * singular_value_entropy(xy.x.matrix());
  b.q_h_beta = (1.0 - p) * binary_entropy((1.0 - params.beta) / 2.0);
  b.q_s_y = (1.0 - p) * singular_value_entropy(xy.y.matrix());
  b.total = b.h_p + b.p_h_alpha + b.p_s_x + b.q_h_beta + b.q_s_y;
  return b;
}

MaxResult maximize_1d(const std::function<double(double)>& f, double lo, double hi, double tol, int grid_points) {
  if (!(lo <= hi)) throw std::invalid_argument("empty search interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  MaxResult r;
  r.argmax = 0.5 * (a + b);
  r.value = f(r.argmax);

  r.grid_value = -std::numeric_limits<double>::infinity();
  const int n = std::max(grid_points, 2);
  for (int k = 0; k < n; ++k) {
    const double x = k + 1 == n ? hi : lo + (hi - lo) * k / (n - 1);
    const double v = f(x);
    if (v > r.grid_value) {
      r.grid_value = v;
      r.grid_argmax = x;
    }
  }
  r.discrepancy = r.grid_value - r.value;
  if (r.grid_value > r.value) {
    r.value = r.grid_value;
    r.argmax = r.grid_argmax;
  }
  return r;
}

double rho_u_supremum_objective(int d, double p) {
  const double ld = std::log2(static_cast<double>(d));
  const double a = std::sqrt((1.0 - p) / p);
  return (1.0 + p) * ld + (1.0 - p) + binary_entropy(p) + p * binary_entropy((1.0 - a) / 2.0);
}

MaxResult entropy_supremum_rho_u(int d) {
  if (d < 2) throw std::invalid_argument("d must be at least 2");
  const double nxg = 1.0 / std::sqrt(static_cast<double>(d));
  const auto range = criteria::p_range_ppt_key(nxg);
  return maximize_1d([d](double p) { return rho_u_supremum_objective(d, p); }, range.lo, range.hi);
}

ClassState spider_y_at(double q, const states::UnitaryAngles& u1, const states::UnitaryAngles& u2) {
  XYPair xy = states::spider_y(u1, u2, q);
  const double n = xy.norm_x_gamma;
  ClassParams params;
  params.d = 2;
  params.p = 1.0 / (1.0 + n * n);
  params.alpha = std::sqrt((1.0 - params.p) / params.p);
  params.beta = 0.0;
  return {params, std::move(xy)};
}

SpiderYMax entropy_max_spider_y(const states::UnitaryAngles& u) {
  const auto objective = [&u](double q) {
    const auto s = spider_y_at(q, u, u);
    return entropy_class_c(s.params, s.xy).total;
  };
  SpiderYMax out;
  out.search = maximize_1d(objective, 0.5, 1.0);
  out.state = spider_y_at(out.search.argmax, u, u);
  out.breakdown = entropy_class_c(out.state.params, out.state.xy);
  return out;
}

int erasure_dimension_cap() {
  const char* env = std::getenv("BOUNDKEY_DMAX");
  if (env == nullptr || *env == '\0') return kDefaultErasureCap;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 2) throw std::invalid_argument("BOUNDKEY_DMAX must be an integer >= 2");
  return static_cast<int>(v);
}

ErasureReport coherent_information_erasure(const ClassParams& params, const XYPair& xy, int d_cap) {
  params.validate();
  const int d = xy.d();
  if (d != params.d) throw std::invalid_argument("X/Y dimension does not match d");
  if (d > d_cap) {
    std::ostringstream os;
    os << "d = " << d << " exceeds the erasure dimension cap " << d_cap;
    throw std::invalid_argument(os.str());
  }
  const Matrix& x = xy.x.matrix();
  const Matrix& y = xy.y.matrix();
  const Matrix sxx = left_modulus(x);
  const Matrix sxdx = right_modulus(x);
  const Matrix syy = left_modulus(y);
  const Matrix sydy = right_modulus(y);
  const double p = params.p;
  const Matrix m0 = p * sxx + (1.0 - p) * sydy;
  const Matrix m1 = p * sxdx + (1.0 - p) * syy;
  const auto bob = [d](const Matrix& m) { return partial_trace(Operator({d, d}, m), {0}).matrix(); };

  ErasureReport r;
  r.d = d;
  r.s = entropy_class_c(params, xy).total;
  r.s_ap_b_bp = 1.0 + 0.5 * entropy_bits(m0) + 0.5 * entropy_bits(m1);
  r.s_b_bp = 1.0 + 0.5 * entropy_bits(bob(m0)) + 0.5 * entropy_bits(bob(m1));
  r.s_a_b_bp = entropy_bits(marginal_a_b_bp(params, xy, sxx, sxdx, syy, sydy).matrix());
  finish(r);
  return r;
}

ErasureReport coherent_information_erasure(const ClassParams& params, const XYPair& xy) {
  return coherent_information_erasure(params, xy, erasure_dimension_cap());
}

ErasureReport coherent_information_erasure_numeric(const ClassParams& params, const XYPair& xy) {
  const Operator rho = states::class_c_state(params, xy);
  using states::kA;
  using states::kAp;
  ErasureReport r;
  r.d = params.d;
  r.s = von_neumann_entropy(rho);
  r.s_ap_b_bp = von_neumann_entropy(partial_trace(rho, {kA}));
  r.s_b_bp = von_neumann_entropy(partial_trace(rho, {kA, kAp}));
  r.s_a_b_bp = von_neumann_entropy(partial_trace(rho, {kAp}));
  finish(r);
  return r;
}

std::optional<ErasureConfig> parse_erasure_config(const std::string& name) {
  if (name == "tilde_unimodular") return ErasureConfig::TildeUnimodular;
  if (name == "beta0") return ErasureConfig::Beta0;
  if (name == "noisy") return ErasureConfig::Noisy;
  return std::nullopt;
}

std::string to_string(ErasureConfig c) {
  switch (c) {
    case ErasureConfig::TildeUnimodular: return "tilde_unimodular";
    case ErasureConfig::Beta0: return "beta0";
    case ErasureConfig::Noisy: return "noisy";
  }
  return "unknown";
}

ClassState erasure_config_state(ErasureConfig config, int d) {
  XYPair xy = states::xy_from_unitary(states::fourier_unitary(d));
  ClassParams params;
  params.d = d;
  params.p = states::lambda_tilde(xy.norm_x_gamma);
  params.alpha = 1.0;
  params.beta = 1.0;
  if (config == ErasureConfig::Beta0) params.beta = 0.0;
  if (config == ErasureConfig::Noisy) params = {d, 0.5, 0.0, 0.0};
  return {params, std::move(xy)};
}

std::vector<ErasureReport> erasure_scan(ErasureConfig config, int d_min, int d_max) {
  if (d_min < 2 || d_max < d_min) throw std::invalid_argument("erasure range must satisfy 2 <= d_min <= d_max");
  const int cap = erasure_dimension_cap();
  if (d_max > cap) {
    std::ostringstream os;
    os << "d = " << d_max << " exceeds the erasure dimension cap " << cap;
    throw std::invalid_argument(os.str());
  }
  std::vector<ErasureReport> out(static_cast<std::size_t>(d_max - d_min + 1));
  std::exception_ptr failure;
  // Largest d first so the expensive points start early.
#pragma omp parallel for schedule(dynamic, 1)
  for (int d = d_max; d >= d_min; --d) {
    try {
      const auto s = erasure_config_state(config, d);
      out[static_cast<std::size_t>(d - d_min)] = coherent_information_erasure(s.params, s.xy, cap);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::optional<int> erasure_threshold_d(ErasureConfig config, int d_max, int d_min) {
  if (d_max < 2) throw std::invalid_argument("d_max must be at least 2");
  const int cap = erasure_dimension_cap();
  for (int d = std::max(d_min, 2); d <= d_max; ++d) {
    const auto s = erasure_config_state(config, d);
    if (coherent_information_erasure(s.params, s.xy, std::max(cap, d_max)).icoh > 0.0) return d;
  }
  return std::nullopt;
}

double dw_rate(const criteria::CcqState& ccq) {
  const auto& p = ccq.probabilities;
  const double pa[2] = {p[0] + p[1], p[2] + p[3]};
  const double pb[2] = {p[0] + p[2], p[1] + p[3]};
  const double mutual_ab = shannon_entropy(pa) + shannon_entropy(pb) - shannon_entropy(p);

  const Matrix rho_e = ccq.eve_weighted[0] + ccq.eve_weighted[1] + ccq.eve_weighted[2] + ccq.eve_weighted[3];
  double holevo = entropy_bits(rho_e / rho_e.trace().real());
  for (int a = 0; a < 2; ++a) {
    if (pa[a] <= 0.0) continue;
    const Matrix cond = (ccq.eve_weighted[static_cast<std::size_t>(2 * a)] +
                         ccq.eve_weighted[static_cast<std::size_t>(2 * a + 1)]) / pa[a];
    holevo -= pa[a] * entropy_bits(cond);
  }
  return mutual_ab - holevo;
}

double dw_rate_ccq(const Operator& rho) { return dw_rate(criteria::ccq_state(rho)); }

double noise_threshold_dw(const Operator& rho, double eps_max, double tol) {
  if (!(eps_max > 0.0 && eps_max <= 1.0)) throw std::invalid_argument("eps_max must lie in (0, 1]");
  const auto rate = [&rho](double eps) { return dw_rate_ccq(states::add_white_noise(rho, eps)); };
  if (!(rate(0.0) > 0.0)) throw std::domain_error("Devetak-Winter rate is not positive without noise");
  double lo = 0.0;
  double hi = eps_max;
  if (rate(hi) > 0.0) throw std::domain_error("Devetak-Winter rate stays positive up to eps_max");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (rate(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ClassState tilde_state(const Operator& unitary) {
  XYPair xy = states::xy_from_unitary(unitary);
  ClassParams params;
  params.d = xy.d();
  params.p = states::lambda_tilde(xy.norm_x_gamma);
  params.alpha = 1.0;
  params.beta = 1.0;
  return {params, std::move(xy)};
}

}  // namespace boundkey::analysis
