#include "boundkey/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "boundkey/kernels.hpp"

namespace boundkey::criteria {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_key_part(const Operator& rho) {
  const Dims& d = rho.dims();
  if (d.size() < 2 || d[0] != 2 || d[1] != 2) {
    throw std::invalid_argument("expected an operator whose first two factors are qubits");
  }
}

Dims shield_dims(const Dims& dims) {
  Dims s(dims.begin() + 2, dims.end());
  if (s.empty()) s.push_back(1);
  return s;
}

// Operator with AB blocks (i, j) replaced by blocks (3 - i, 3 - j): XX rho XX.
Operator flip_both_keys(const Operator& rho) {
  const Eigen::Index n = rho.side() / 4;
  Matrix out(rho.side(), rho.side());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out.block(i * n, j * n, n, n) = rho.matrix().block((3 - i) * n, (3 - j) * n, n, n);
  }
  return {rho.dims(), std::move(out)};
}

Verdict non_strict(std::string name, double margin, double tol, std::map<std::string, double> inputs) {
  return {std::move(name), margin >= -tol, margin, false, tol, std::move(inputs)};
}

Verdict strict(std::string name, double margin, std::map<std::string, double> inputs) {
  return {std::move(name), margin > 0.0, margin, true, 0.0, std::move(inputs)};
}

}  // namespace

Operator key_block(const Operator& rho, int i, int j) {
  require_key_part(rho);
  const Eigen::Index n = rho.side() / 4;
  return {shield_dims(rho.dims()), rho.matrix().block(i * n, j * n, n, n)};
}

std::optional<SpiderBlocks> is_spider(const Operator& rho, double rel_tol) {
  require_key_part(rho);
  static constexpr std::array<std::array<int, 2>, 8> kOffPattern = {
      {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
  const double tol = rel_tol * std::max(std::abs(rho.trace()), 1.0);
  for (const auto& [i, j] : kOffPattern) {
    if (trace_norm(key_block(rho, i, j)) > tol) return std::nullopt;
  }
  return SpiderBlocks{key_block(rho, 0, 0), key_block(rho, 0, 3), key_block(rho, 1, 1),
                      key_block(rho, 1, 2), key_block(rho, 2, 2), key_block(rho, 3, 3)};
}

Operator privacy_squeezed(const SpiderBlocks& b) {
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = trace_norm(b.c);
  s(0, 3) = s(3, 0) = trace_norm(b.d);
  s(1, 1) = trace_norm(b.e);
  s(1, 2) = s(2, 1) = trace_norm(b.f);
  s(2, 2) = trace_norm(b.e_prime);
  s(3, 3) = trace_norm(b.c_prime);
  return {{2, 2}, std::move(s)};
}

FactorSet bob_factors(const Dims& dims) {
  if (dims.size() == 2) return {1};
  if (dims.size() == 4) return {1, 3};
  throw std::invalid_argument("Alice/Bob cut defined for (A, B) or (A, B, A', B') operators");
}

Verdict ppt_numeric(const Operator& rho, double tol) {
  const auto s = hermitian_eigenvalues(partial_transpose(rho, bob_factors(rho.dims())));
  return non_strict("ppt_numeric", s.min(), tol, {{"min_eigenvalue", s.min()}});
}

double alpha_one(const ClassParams& params, double norm_x_gamma) {
  if (params.p == 0.0) return kInf;
  return (1.0 - params.p) / params.p / norm_x_gamma;
}

Verdict ppt_analytic_class_c(const ClassParams& params, double norm_x_gamma) {
  params.validate();
  const double a1 = alpha_one(params, norm_x_gamma);
  const double bound_alpha = std::min(1.0, a1);
  const double bound_beta = std::min(1.0, a1 == 0.0 ? kInf : 1.0 / a1);
  const double margin = std::min(bound_alpha - std::abs(params.alpha), bound_beta - std::abs(params.beta));
  return non_strict("ppt_analytic", margin, kAnalyticTol,
                    {{"p", params.p},
                     {"alpha", params.alpha},
                     {"beta", params.beta},
                     {"norm_x_gamma", norm_x_gamma},
                     {"alpha_1", a1}});
}

Verdict key_condition_spider(const SpiderBlocks& b, double rel_tol) {
  const double c = trace_norm(b.c);
  const double cp = trace_norm(b.c_prime);
  const double e = trace_norm(b.e);
  const double ep = trace_norm(b.e_prime);
  const double scale = std::max(std::abs(b.c.trace() + b.c_prime.trace() + b.e.trace() + b.e_prime.trace()), 1.0);
  if (std::abs(c - cp) > rel_tol * scale || std::abs(e - ep) > rel_tol * scale) {
    throw std::invalid_argument("key condition needs ||C|| = ||C'|| and ||E|| = ||E'||");
  }
  const double d = trace_norm(b.d);
  const double f = trace_norm(b.f);
  const double margin = std::max(d, f) - std::sqrt(c * e);
  return strict("key_spider", margin, {{"norm_c", c}, {"norm_d", d}, {"norm_e", e}, {"norm_f", f}});
}

Verdict key_condition_class_c(const ClassParams& params) {
  params.validate();
  const auto l = params.lambdas();
  const double s = l[0] + l[1];
  const double margin = std::abs(l[0] - l[1]) - std::sqrt(s * (1.0 - s));
  return strict("key_class_c", margin, {{"p", params.p}, {"alpha", params.alpha}, {"beta", params.beta}});
}

OpenInterval p_range_ppt_key(double norm_x_gamma) {
  if (!(norm_x_gamma > 0.0 && norm_x_gamma <= 1.0 + 1e-12)) {
    throw std::invalid_argument("||X^Gamma|| must lie in (0, 1]");
  }
  return {0.5, 1.0 / (1.0 + norm_x_gamma * norm_x_gamma)};
}

Verdict separability_conditions(const ClassParams& params, double norm_x_gamma) {
  params.validate();
  if (params.d != 2) throw std::invalid_argument("separability conditions are derived for d = 2");
  const double p = params.p;
  const double a = std::abs(params.alpha);
  const double b = std::abs(params.beta);
  const double pre = norm_x_gamma - b;
  const double alpha_cond = (p == 0.0 ? kInf : (1.0 - p) / p) - a;
  const double beta_cond = (p == 1.0 ? kInf : p / (1.0 - p) * norm_x_gamma) - b;
  const double margin = std::min({pre, alpha_cond, beta_cond});
  return non_strict("separable", margin, kAnalyticTol,
                    {{"p", p},
                     {"alpha", params.alpha},
                     {"beta", params.beta},
                     {"norm_x_gamma", norm_x_gamma},
                     {"precondition_margin", pre},
                     {"alpha_margin", alpha_cond},
                     {"beta_margin", beta_cond}});
}

Verdict separability_conditions(const ClassParams& params, const Operator& unitary) {
  const auto xo = states::x_operator(unitary);
  Verdict v = separability_conditions(params, xo.norm_x_gamma);
  if (!v.holds) return v;
  bool members_ppt = true;
  for (const auto& m : states::two_qubit_decomposition(unitary, params)) {
    members_ppt = members_ppt && ppt_numeric(m.rho).holds;
  }
  v.inputs["members_ppt"] = members_ppt ? 1.0 : 0.0;
  v.holds = members_ppt;
  return v;
}

double tolerable_noise_recurrence(const ClassParams& params) {
  params.validate();
  if (!(params.p > 0.5)) throw std::invalid_argument("tolerable noise formula needs p > 1/2");
  const auto l = params.lambdas();
  return 1.0 - 1.0 / std::sqrt(8.0 * (l[0] * l[0] + l[1] * l[1]) - 4.0 * (l[0] + l[1]) + 1.0);
}

Operator twirl_zz(const Operator& rho) {
  require_key_part(rho);
  const Eigen::Index n = rho.side() / 4;
  Matrix out = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int parity_i = (i >> 1) ^ (i & 1);
      const int parity_j = (j >> 1) ^ (j & 1);
      if (parity_i != parity_j) out.block(i * n, j * n, n, n).setZero();
    }
  }
  return {rho.dims(), std::move(out)};
}

Operator twirl_xx(const Operator& rho) {
  require_key_part(rho);
  return 0.5 * (rho + flip_both_keys(rho));
}

Operator twirl_xx_flagged(const Operator& rho) {
  require_key_part(rho);
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  return 0.5 * (kron(rho, Operator({2}, p0)) + kron(flip_both_keys(rho), Operator({2}, p1)));
}

Verdict general_key_condition(const Operator& rho) {
  require_key_part(rho);
  const double a = trace_norm(key_block(rho, 0, 0));
  const double j = trace_norm(key_block(rho, 3, 3));
  const double e = trace_norm(key_block(rho, 1, 1));
  const double h = trace_norm(key_block(rho, 2, 2));
  const double d = trace_norm(key_block(rho, 0, 3));
  const double f = trace_norm(key_block(rho, 1, 2));
  const double margin = std::max(d, f) - 0.5 * std::sqrt((a + j) * (e + h));
  return strict("key_general", margin,
                {{"norm_a", a}, {"norm_j", j}, {"norm_e", e}, {"norm_h", h}, {"norm_d", d}, {"norm_f", f}});
}

Operator apply_twisting(const Operator& rho, const Twisting& twisting) {
  require_key_part(rho);
  const Eigen::Index n = rho.side() / 4;
  std::array<std::span<const Complex>, 4> views;
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix& u = twisting.unitaries[k].matrix();
    if (u.rows() != n || !is_unitary(u, 1e-10)) {
      std::ostringstream os;
      os << "twisting member " << k << " is not a unitary on the shield";
      throw std::invalid_argument(os.str());
    }
    views[k] = {u.data(), static_cast<std::size_t>(u.size())};
  }
  Matrix out(rho.side(), rho.side());
  kernels::parallel::conjugate_blocks({rho.matrix().data(), static_cast<std::size_t>(rho.matrix().size())}, 4, n,
                                      views, {out.data(), static_cast<std::size_t>(out.size())});
  return {rho.dims(), std::move(out)};
}

Twisting canonical_twisting(const SpiderBlocks& blocks) {
  const Dims& dims = blocks.c.dims();
  const Operator id = Operator::identity(dims);
  return {{id, id, Operator(dims, polar(blocks.f.matrix()).unitary), Operator(dims, polar(blocks.d.matrix()).unitary)}};
}

Matrix CcqState::eve_conditional(int ab) const {
  const auto k = static_cast<std::size_t>(ab);
  if (probabilities[k] <= 0.0) return Matrix::Zero(eve_dim, eve_dim);
  return eve_weighted[k] / probabilities[k];
}

Operator CcqState::to_operator() const {
  Matrix m = Matrix::Zero(4 * eve_dim, 4 * eve_dim);
  for (int k = 0; k < 4; ++k) m.block(k * eve_dim, k * eve_dim, eve_dim, eve_dim) = eve_weighted[static_cast<std::size_t>(k)];
  return {{2, 2, eve_dim}, std::move(m)};
}

CcqState ccq_from_purification(const Purification& purification) {
  const Dims& sys = purification.system_dims;
  if (sys.size() < 2 || sys[0] != 2 || sys[1] != 2) throw std::invalid_argument("ccq state needs a key part");
  const auto n_sys = static_cast<Eigen::Index>(product(sys));
  const Eigen::Index n_env = purification.environment_dim;
  const Eigen::Index block = n_sys / 4;
  Eigen::Map<const Matrix> amp(purification.psi.data(), n_sys, n_env);
  CcqState out;
  out.eve_dim = static_cast<int>(n_env);
  for (int k = 0; k < 4; ++k) {
    const auto rows = amp.middleRows(k * block, block);
    out.eve_weighted[static_cast<std::size_t>(k)] = rows.transpose() * rows.conjugate();
    out.probabilities[static_cast<std::size_t>(k)] = out.eve_weighted[static_cast<std::size_t>(k)].trace().real();
  }
  return out;
}

CcqState ccq_state(const Operator& rho) {
  require_key_part(rho);
  return ccq_from_purification(purify(rho));
}

double error_probability(const SpiderBlocks& blocks) {
  return blocks.e.trace().real() + blocks.e_prime.trace().real();
}

}  // namespace boundkey::criteria
