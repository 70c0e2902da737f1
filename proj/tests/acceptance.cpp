// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boundkey/analysis.hpp"
#include "boundkey/criteria.hpp"
#include "boundkey/states.hpp"
#include "oracles.hpp"

using namespace boundkey;
using namespace boundkey::criteria;
using states::ClassParams;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<void(Outcome&)> run;
};

const Dims kD2{2, 2, 2, 2};

void x_gamma_norms(Outcome& out) {
  double worst = 0.0;
  auto check = [&](const Operator& u, double want) {
    const auto xo = states::x_operator(u);
    const double svd = trace_norm(states::shield_gamma(xo.x));
    worst = std::max({worst, std::abs(svd - want), std::abs(xo.norm_x_gamma - want)});
  };
  check(states::hadamard(), 1.0 / std::sqrt(2.0));
  for (int d = 2; d <= 6; ++d) check(states::fourier_unitary(d), 1.0 / std::sqrt(static_cast<double>(d)));
  out.detail << "max deviation " << worst;
  out.require(worst <= 1e-10, "deviation <= 1e-10");
}

void ppt_boundary(Outcome& out) {
  const auto s = analysis::tilde_state(states::hadamard());
  const double m = ppt_numeric(states::class_c_state(s.params, s.xy)).margin;
  out.detail << "p = " << s.params.p << ", min eig(rho^Gamma) = " << m;
  out.require(std::abs(m) <= 1e-8, "|min eig| <= 1e-8");
}

void coexistence_path(Outcome& out) {
  const Operator h = states::hadamard();
  const auto xy = states::xy_from_unitary(h);
  auto path = [&](double p) {
    ClassParams c{2, p, 0.0, 0.0};
    const double a1 = alpha_one(c, xy.norm_x_gamma);
    c.alpha = std::min(1.0, a1);
    c.beta = std::min(1.0, 1.0 / a1);
    return c;
  };
  int passed = 0;
  const int n = 20;
  for (int k = 0; k < n; ++k) {
    const double p = 0.51 + 0.15 * (k + 1) / (n + 1);
    const ClassParams c = path(p);
    if (ppt_numeric(states::class_c_state(c, xy)).holds && key_condition_class_c(c).holds) ++passed;
  }
  const bool endpoint = separability_conditions(path(0.5), h).holds;
  out.detail << passed << "/" << n << " points PPT and key; p = 0.5 separable: " << (endpoint ? "yes" : "no");
  out.require(passed == n, "all path points PPT and key");
  out.require(endpoint, "endpoint separable");
}

void tolerable_noise(Outcome& out) {
  const auto s = analysis::tilde_state(states::hadamard());
  const auto l = s.params.lambdas();
  const double delta = tolerable_noise_recurrence(s.params);
  const double dw = analysis::noise_threshold_dw(states::class_c_state(s.params, s.xy));
  const double ratio = delta / dw;
  out.detail << "lambda = (" << l[0] << ", " << l[1] << "), recurrence " << delta << ", DW " << dw << ", ratio "
             << ratio;
  out.require(std::abs(delta - 0.155) <= 0.001, "recurrence 0.155 +- 0.001");
  out.require(dw > 0.003 && dw < 0.008, "DW in (0.003, 0.008)");
  out.require(ratio > 25 && ratio < 40, "ratio in (25, 40)");
}

void entropy_table(Outcome& out) {
  double worst = 0.0;
  auto both = [&](const ClassParams& p, const states::XYPair& xy) {
    const double closed = analysis::entropy_class_c(p, xy).total;
    const double eig = von_neumann_entropy(states::class_c_state(p, xy));
    worst = std::max(worst, std::abs(closed - eig));
    return closed;
  };
  const auto tilde = analysis::tilde_state(states::hadamard());
  const double s_tilde = both(tilde.params, tilde.xy);
  const auto sup = analysis::entropy_supremum_rho_u(2);
  const auto xy2 = states::xy_from_unitary(states::fourier_unitary(2));
  both({2, sup.argmax, std::sqrt((1 - sup.argmax) / sup.argmax), 0.0}, xy2);
  const auto spider = analysis::entropy_max_spider_y();
  both(spider.state.params, spider.state.xy);
  std::mt19937 rng(101);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 3;
    both(oracle::random_params(rng, d), states::xy_from_unitary(Operator({d}, oracle::random_unitary(rng, d))));
  }
  out.detail << "tilde " << s_tilde << ", rho_U sup " << sup.value << " at p = " << sup.argmax << ", spider-Y "
             << spider.search.value << " at q = " << spider.search.argmax << ", closed vs eig " << worst;
  out.require(worst <= 1e-9, "closed form vs eigensolve <= 1e-9");
  out.require(std::abs(s_tilde - 2.564) <= 0.001, "tilde 2.564 +- 0.001");
  out.require(std::abs(sup.value - 3.319) <= 0.001, "rho_U sup 3.319 +- 0.001");
  out.require(std::abs(sup.argmax - 2.0 / 3.0) <= 0.001, "rho_U argmax 2/3");
  out.require(std::abs(spider.search.value - 3.524) <= 0.005, "spider-Y 3.524 +- 0.005");
  out.require(std::abs(spider.search.argmax - 0.683) <= 0.01, "spider-Y q 0.683 +- 0.01");
}

std::optional<int> first_positive(const std::vector<analysis::ErasureReport>& rows) {
  for (const auto& r : rows) {
    if (r.icoh > 0.0) return r.d;
  }
  return std::nullopt;
}

void erasure(Outcome& out) {
  using analysis::ErasureConfig;
  double worst = 0.0;
  for (auto config : {ErasureConfig::TildeUnimodular, ErasureConfig::Beta0, ErasureConfig::Noisy}) {
    for (int d = 2; d <= 6; ++d) {
      const auto s = analysis::erasure_config_state(config, d);
      const auto a = analysis::coherent_information_erasure(s.params, s.xy);
      const auto b = analysis::coherent_information_erasure_numeric(s.params, s.xy);
      worst = std::max({worst, std::abs(a.s - b.s), std::abs(a.s_ap_b_bp - b.s_ap_b_bp),
                        std::abs(a.s_b_bp - b.s_b_bp), std::abs(a.s_a_b_bp - b.s_a_b_bp)});
    }
  }
  const auto tilde = first_positive(analysis::erasure_scan(ErasureConfig::TildeUnimodular, 2, 12));
  const auto beta0 = first_positive(analysis::erasure_scan(ErasureConfig::Beta0, 2, 23));
  out.detail << "tilde/unimodular threshold " << (tilde ? std::to_string(*tilde) : "none") << ", beta = 0 threshold "
             << (beta0 ? std::to_string(*beta0) : "none") << ", closed vs numeric " << worst;
  out.require(tilde == 11, "tilde/unimodular threshold 11");
  out.require(beta0 == 22, "beta = 0 threshold 22");
  out.require(worst <= 1e-8, "component entropies <= 1e-8");
}

Operator random_spider_op(std::mt19937& rng, int d) { return {{2, 2, d, d}, oracle::random_spider(rng, d)}; }

void property_suites(Outcome& out) {
  std::mt19937 rng(202);

  // Analytic PPT implies numeric PPT.
  const std::vector<Operator> unitaries{Operator::identity({2}), states::hadamard(), states::fourier_unitary(3)};
  int analytic = 0;
  int violations = 0;
  for (int t = 0; t < 500; ++t) {
    const auto xy = states::xy_from_unitary(unitaries[static_cast<std::size_t>(t % 3)]);
    auto params = oracle::random_params(rng, xy.d());
    if (t % 2 == 0) {
      const double a1 = alpha_one(params, xy.norm_x_gamma);
      params.alpha *= std::min(1.0, a1);
      params.beta *= std::min(1.0, 1.0 / a1);
    }
    if (!ppt_analytic_class_c(params, xy.norm_x_gamma).holds) continue;
    ++analytic;
    if (!ppt_numeric(states::class_c_state(params, xy)).holds) ++violations;
  }
  out.detail << "analytic PPT " << analytic << "/500, violations " << violations;
  out.require(violations == 0, "analytic PPT => numeric PPT");

  // Flag form and two-qubit decomposition.
  const Operator h = states::hadamard();
  const auto xy_h = states::xy_from_unitary(h);
  double worst_flag = 0.0;
  double worst_members = 0.0;
  for (int t = 0; t < 50; ++t) {
    const ClassParams p{2, oracle::uniform(rng, 0, 1), oracle::uniform(rng, 0, 1), oracle::uniform(rng, 0, 1)};
    worst_flag = std::max(worst_flag, trace_distance(states::rho_h_flag_form(p).assemble(), states::class_c_state(p, xy_h)));
  }
  for (int checked = 0; checked < 50;) {
    const Operator u({2}, oracle::random_unitary(rng, 2));
    const auto xy = states::xy_from_unitary(u);
    const auto p = oracle::random_params(rng, 2);
    if (std::abs(p.beta) > xy.norm_x_gamma) continue;
    Operator sum = Operator::zero(kD2);
    for (const auto& m : states::two_qubit_decomposition(u, p)) sum += m.weight * m.embed();
    worst_members = std::max(worst_members, max_abs_diff(sum.matrix(), states::class_c_state(p, xy).matrix()));
    ++checked;
  }
  out.detail << "; flag form " << worst_flag << ", two-qubit " << worst_members;
  out.require(worst_flag <= 1e-10, "flag form <= 1e-10");
  out.require(worst_members <= 1e-10, "two-qubit decomposition <= 1e-10");

  // ccq invariance under twisting: the twisted purification gives the same ccq state.
  double worst_ccq = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Operator rho = random_spider_op(rng, 2);
    const Eigen::Index n = rho.side();
    Matrix big = Matrix::Zero(n, n);
    const Eigen::Index m = n / 4;
    for (int k = 0; k < 4; ++k) big.block(k * m, k * m, m, m) = oracle::random_unitary(rng, m);
    const Purification pur = purify(rho);
    Purification moved = pur;
    Eigen::Map<const Matrix> amp(pur.psi.data(), n, pur.environment_dim);
    const Matrix twisted_amp = big * amp;
    moved.psi = Eigen::Map<const Vector>(twisted_amp.data(), twisted_amp.size());
    worst_ccq = std::max(worst_ccq, trace_distance(ccq_from_purification(pur).to_operator(),
                                                   ccq_from_purification(moved).to_operator()));
  }
  out.detail << "; ccq twisting " << worst_ccq;
  out.require(worst_ccq <= 1e-9, "ccq invariance <= 1e-9");

  // Twirl diagram.
  double worst_diagram = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Operator rho = random_spider_op(rng, 2 + t % 2);
    const auto lhs = is_spider(twirl_xx_flagged(twirl_zz(rho)));
    if (!lhs) {
      worst_diagram = INFINITY;
      continue;
    }
    const Operator rhs = twirl_xx(twirl_zz(privacy_squeezed(*is_spider(rho))));
    worst_diagram = std::max(worst_diagram, max_abs_diff(privacy_squeezed(*lhs).matrix(), rhs.matrix()));
  }
  out.detail << "; diagram " << worst_diagram;
  out.require(worst_diagram <= 1e-10, "twirl diagram <= 1e-10");

  // Spider key condition vs the general one, and the error-probability identity.
  int agree = 0;
  double worst_pe = 0.0;
  for (int t = 0; t < 200; ++t) {
    const double noise = oracle::uniform(rng, 0.0, 0.5);
    const Operator rho(kD2, (1 - noise) * oracle::random_squeezable_spider(rng, 2) +
                                noise * Matrix::Identity(16, 16) / 16.0);
    const auto blocks = is_spider(rho);
    if (!blocks) continue;
    if (key_condition_spider(*blocks).holds == general_key_condition(rho).holds) ++agree;
    const double pe = error_probability(*blocks);
    worst_pe = std::max(worst_pe, std::abs(0.5 * std::sqrt(pe * (1 - pe)) -
                                           std::sqrt(trace_norm(blocks->c) * trace_norm(blocks->e))));
  }
  out.detail << "; spider vs general " << agree << "/200, p_e identity " << worst_pe;
  out.require(agree == 200, "spider and general key verdicts agree");
  out.require(worst_pe <= 1e-12, "p_e identity <= 1e-12");
}

void antihermitian(Outcome& out) {
  std::mt19937 rng(303);
  const Matrix g = oracle::random_matrix(rng, 4, 4);
  Matrix anti = Complex(0, 1) * (g + g.adjoint());
  anti /= trace_norm(anti);
  const Operator pbit = states::private_bit(Operator({2, 2}, anti));
  const auto v = general_key_condition(pbit);
  const double herm = trace_norm(Matrix(anti + anti.adjoint()));
  out.detail << "general key margin " << v.margin << ", ||D + D^dagger|| = " << herm;
  out.require(v.holds, "general key condition holds");
  out.require(herm == 0.0, "||D + D^dagger|| = 0");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "X^Gamma norms", 1.0, x_gamma_norms},
      {2, "PPT boundary state", 1.0, ppt_boundary},
      {3, "key and PPT coexistence path", 5.0, coexistence_path},
      {4, "tolerable noise", 30.0, tolerable_noise},
      {5, "entropy table", 30.0, entropy_table},
      {6, "erasure thresholds", 600.0, erasure},
      {7, "property suites", 120.0, property_suites},
      {8, "antihermitian D", 1.0, antihermitian},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) out.require(false, "runtime");
    if (!out.pass) ++failed;
    std::printf("%s criterion %d (%s): %s; %.2f s of %.0f s\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.str().c_str(), seconds, c.time_limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
