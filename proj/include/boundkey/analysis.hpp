// Entropy functionals of class-C states and their maximization, coherent
// information after a 50% erasure channel on A', and one-way
// (Devetak-Winter) key rates of the ccq state.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boundkey/criteria.hpp"
#include "boundkey/states.hpp"

namespace boundkey::analysis {

using states::ClassParams;
using states::XYPair;

/// A class-C parameter point together with its X/Y operators.
struct ClassState {
  ClassParams params;
  XYPair xy;
};

/// S = H(p) + p H((1-alpha)/2) + p S(|X|) + (1-p) H((1-beta)/2) + (1-p) S(|Y|).
struct EntropyBreakdown {
  double total = 0.0;
  double h_p = 0.0;
  double p_h_alpha = 0.0;
  double p_s_x = 0.0;
  double q_h_beta = 0.0;  // (1 - p) H((1 - beta) / 2)
  double q_s_y = 0.0;     // (1 - p) S(sqrt(Y^+ Y))
};

/// Closed-form entropy of a class-C state (mixture of four orthogonal pbits).
EntropyBreakdown entropy_class_c(const ClassParams& params, const XYPair& xy);

struct MaxResult {
  double value = 0.0;
  double argmax = 0.0;
  double grid_value = 0.0;
  double grid_argmax = 0.0;
  /// grid_value - value; positive means the grid beat golden section.
  double discrepancy = 0.0;
};

/// Golden-section maximization on [lo, hi] refined to `tol` in the argument,
/// cross-checked against a uniform grid of `grid_points` (endpoints included).
/// The better of the two candidates is reported in value/argmax.
MaxResult maximize_1d(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-6,
                      int grid_points = 10000);

/// (1 + p) log2 d + (1 - p) + H(p) + p H((1 - sqrt((1-p)/p)) / 2).
double rho_u_supremum_objective(int d, double p);

/// Supremum over p in (1/2, p_max] of the rho_U entropy, unimodular U.
MaxResult entropy_supremum_rho_u(int d);

/// Spider-Y state at given q with p = 1/(1 + ||X^Gamma||^2), alpha = sqrt((1-p)/p), beta = 0.
ClassState spider_y_at(double q, const states::UnitaryAngles& u1, const states::UnitaryAngles& u2);

struct SpiderYMax {
  MaxResult search;  // argmax is q
  ClassState state;
  EntropyBreakdown breakdown;
};
/// Entropy maximization over q with U1 = U2; q is searched in [1/2, 1] since
/// the objective is symmetric under q <-> 1 - q.
SpiderYMax entropy_max_spider_y(const states::UnitaryAngles& u = states::hadamard_angles());

struct ErasureReport {
  int d = 0;
  double icoh = 0.0;
  double s = 0.0;          // S(rho)
  double s_ap_b_bp = 0.0;  // S(A'BB')
  double s_b_bp = 0.0;     // S(BB')
  double s_a_b_bp = 0.0;   // S(ABB')
};

inline constexpr int kDefaultErasureCap = 40;

/// Dimension cap for erasure computations: BOUNDKEY_DMAX if set, else 40.
int erasure_dimension_cap();

/// Closed-form S, S(A'BB'), S(BB'); S(ABB') from the partial trace of the
/// block form. Throws std::invalid_argument if d exceeds `d_cap`.
ErasureReport coherent_information_erasure(const ClassParams& params, const XYPair& xy, int d_cap);
ErasureReport coherent_information_erasure(const ClassParams& params, const XYPair& xy);
/// Every component from explicit marginals of the assembled 4d^2 state.
ErasureReport coherent_information_erasure_numeric(const ClassParams& params, const XYPair& xy);

enum class ErasureConfig {
  TildeUnimodular,  // p = lambda~_1(d), alpha = beta = 1, Fourier U
  Beta0,            // p = lambda~_1(d), alpha = 1, beta = 0, Fourier U
  Noisy,            // p = 1/2, alpha = beta = 0, Fourier U
};
std::optional<ErasureConfig> parse_erasure_config(const std::string& name);
std::string to_string(ErasureConfig c);
ClassState erasure_config_state(ErasureConfig config, int d);

/// ErasureReport for every d in [d_min, d_max], computed in parallel.
std::vector<ErasureReport> erasure_scan(ErasureConfig config, int d_min, int d_max);
/// Smallest d in [d_min, d_max] with I_coh > 0.
std::optional<int> erasure_threshold_d(ErasureConfig config, int d_max, int d_min = 2);

/// I(A:B) - chi(A:E) on the ccq state.
double dw_rate(const criteria::CcqState& ccq);
double dw_rate_ccq(const Operator& rho);

/// Bisection (to `tol`) for the zero of eps -> dw_rate_ccq(add_white_noise(rho, eps))
/// on [0, eps_max]. Throws std::domain_error when the rate at eps = 0 is not
/// positive or when no sign change occurs up to eps_max.
double noise_threshold_dw(const Operator& rho, double eps_max = 1.0, double tol = 1e-4);

/// The two-pbit PPT state: p = lambda~_1, alpha = beta = 1.
ClassState tilde_state(const Operator& unitary);

}  // namespace boundkey::analysis
