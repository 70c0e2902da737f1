// Verdicts on states: spider detection, privacy squeezing, PPT (numeric and
// analytic for class C), key-distillability conditions, separability bounds,
// tolerable noise, twirlings, twistings and ccq states.
//
// Key-part routines accept any operator whose first two factors are qubits
// (the key part A, B); the remaining factors form the shield, which may be
// empty. Blocks are indexed by the key-part basis 00, 01, 10, 11.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "boundkey/linops.hpp"
#include "boundkey/states.hpp"

namespace boundkey::criteria {

using states::ClassParams;

inline constexpr double kBlockZeroRelTol = 1e-9;
inline constexpr double kPptTol = 1e-9;
/// Slack on non-strict analytic inequalities so exact boundary points hold.
inline constexpr double kAnalyticTol = 1e-12;

/// Outcome of a condition check.
///
/// For a non-strict condition `holds == (margin >= -tolerance)`; for a strict
/// one `holds == (margin > 0)` and tolerance is 0.
struct Verdict {
  std::string condition;
  bool holds = false;
  double margin = 0.0;
  bool strict = false;
  double tolerance = 0.0;
  std::map<std::string, double> inputs;
};

/// Nonzero blocks of a spider state:
///   [ C  .  .  D  ]
///   [ .  E  F  .  ]
///   [ .  F+ E' .  ]
///   [ D+ .  .  C' ]
struct SpiderBlocks {
  Operator c, d, e, f, e_prime, c_prime;
};

/// Block (i, j) of a key-part operator, as an operator on the shield.
Operator key_block(const Operator& rho, int i, int j);

/// Spider blocks when every off-pattern block has trace norm <= tol * |tr rho|
/// (default kBlockZeroRelTol); std::nullopt otherwise. Throws
/// std::invalid_argument if the first two factors are not qubits.
std::optional<SpiderBlocks> is_spider(const Operator& rho, double rel_tol = kBlockZeroRelTol);

/// Two-qubit state whose entries are the trace norms of the spider blocks.
Operator privacy_squeezed(const SpiderBlocks& blocks);

/// Factors on Bob's side: {1} for two qubits, {1, 3} for (A, B, A', B').
FactorSet bob_factors(const Dims& dims);

/// Holds iff the smallest eigenvalue of rho^Gamma is >= -tol; margin is that eigenvalue.
Verdict ppt_numeric(const Operator& rho, double tol = kPptTol);

/// alpha_1 = ((1 - p) / p) / ||X^Gamma||, +inf at p = 0.
double alpha_one(const ClassParams& params, double norm_x_gamma);

/// Sufficient class-C PPT conditions |alpha| <= min(1, a1), |beta| <= min(1, 1/a1).
Verdict ppt_analytic_class_c(const ClassParams& params, double norm_x_gamma);

/// max(||D||, ||F||) > sqrt(||C|| ||E||); needs ||C|| = ||C'|| and ||E|| = ||E'||
/// within tol (relative to the trace), else std::invalid_argument.
Verdict key_condition_spider(const SpiderBlocks& blocks, double rel_tol = kBlockZeroRelTol);

/// |lambda_1 - lambda_2| > sqrt((lambda_1 + lambda_2)(1 - lambda_1 - lambda_2)).
Verdict key_condition_class_c(const ClassParams& params);

struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
  bool contains(double x) const { return lo < x && x < hi; }
};
/// Range of p in which class-C states can be PPT and key-distillable: (1/2, p_max).
OpenInterval p_range_ppt_key(double norm_x_gamma);

/// Analytic separability conditions for d = 2 rho_U states.
Verdict separability_conditions(const ClassParams& params, double norm_x_gamma);
/// Same conditions; when they hold, every member of the two-qubit
/// decomposition is additionally checked to be PPT (inputs["members_ppt"]).
Verdict separability_conditions(const ClassParams& params, const Operator& unitary);

/// Noise threshold of recurrence + Devetak-Winter; requires p > 1/2.
double tolerable_noise_recurrence(const ClassParams& params);

Operator twirl_xx(const Operator& rho);
Operator twirl_zz(const Operator& rho);
/// (1/2)(rho (x) |0><0| + XX rho XX (x) |1><1|), flag appended as the last factor.
Operator twirl_xx_flagged(const Operator& rho);

/// max(||D||, ||F||) > (1/2) sqrt((||A|| + ||J||)(||E|| + ||H||)) on any state.
Verdict general_key_condition(const Operator& rho);

/// Controlled unitary sum_ij |ij><ij| (x) U_ij; unitaries indexed 00, 01, 10, 11.
struct Twisting {
  std::array<Operator, 4> unitaries;
};
Operator apply_twisting(const Operator& rho, const Twisting& twisting);
/// Polar-decomposition twisting U_00 = U_01 = I, U_11 = V_D, U_10 = V_F, which
/// makes tr_shield of the twisted state equal privacy_squeezed(blocks).
Twisting canonical_twisting(const SpiderBlocks& blocks);

/// Key-part measurement outcomes with Eve's conditional states.
struct CcqState {
  std::array<double, 4> probabilities{};
  /// p_ab * rho_E^{ab}, indexed ab = 00, 01, 10, 11.
  std::array<Matrix, 4> eve_weighted;
  int eve_dim = 0;

  /// rho_E^{ab}; the zero matrix when p_ab = 0.
  Matrix eve_conditional(int ab) const;
  /// sum_ab |ab><ab| (x) p_ab rho_E^{ab} on dims {2, 2, eve_dim}.
  Operator to_operator() const;
};
/// Purifies rho, measures A and B in the standard basis and discards the shield.
CcqState ccq_state(const Operator& rho);
CcqState ccq_from_purification(const Purification& purification);

/// Probability of anticorrelated key outcomes, tr E + tr E'.
double error_probability(const SpiderBlocks& blocks);

}  // namespace boundkey::criteria
