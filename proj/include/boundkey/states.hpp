// State and operator families: X/Y operators, private bits, the mixtures of
// four orthogonal private bits (class C), the spider-Y subclass, the
// flag decomposition of the Hadamard subclass and the two-qubit decomposition
// of the d = 2 states.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "boundkey/linops.hpp"

namespace boundkey::states {

// Factor positions in a four-factor state on (A, B, A', B').
inline constexpr int kA = 0;
inline constexpr int kB = 1;
inline constexpr int kAp = 2;
inline constexpr int kBp = 3;

/// Mixing weights of a class-C state in the (p, alpha, beta) chart.
///
/// lambda_{1,2} = (1 +- alpha) p / 2 and lambda_{3,4} = (1 +- beta)(1 - p) / 2.
/// At p = 1 beta is meaningless and stored as 0; likewise alpha at p = 0.
struct ClassParams {
  int d = 2;
  double p = 0.5;
  double alpha = 0.0;
  double beta = 0.0;

  static ClassParams from_lambdas(int d, const std::array<double, 4>& lambdas);
  std::array<double, 4> lambdas() const;
  /// Throws std::invalid_argument when outside d >= 2, p in [0,1], |alpha|,|beta| <= 1.
  void validate() const;
};

/// X and Y on A'B' (dims {d, d}), both of unit trace norm, plus ||X^Gamma||.
struct XYPair {
  Operator x;
  Operator y;
  double norm_x_gamma = 1.0;

  int d() const { return x.dims().front(); }
};

/// X = (1/u) sum_ij u_ij |ij><ji| built from a unitary, with u = sum |u_ij|.
struct XOperator {
  Operator x;
  double u = 0.0;
  double norm_x_gamma = 0.0;  // d / u
};

/// Angles of the single-qubit parametrization
/// U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct UnitaryAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// Partial transpose of an A'B' operator over B'.
Operator shield_gamma(const Operator& x);

XOperator x_operator(const Operator& unitary);
/// Y = X^Gamma / ||X^Gamma||.
Operator y_from_x(const Operator& x);
/// X from x_operator(U) paired with Y = y_from_x(X).
XYPair xy_from_unitary(const Operator& unitary);

/// Largest deviation from Gamma-invariance over sqrt(XX^+), sqrt(X^+X),
/// sqrt(YY^+), sqrt(Y^+Y). Class-C membership requires this to vanish.
double class_c_membership_defect(const XYPair& xy);

/// gamma(X) on (2, 2, d, d); requires ||X|| = 1 within 1e-10.
Operator private_bit(const Operator& x);

/// Block assembly of the class-C state on (2, 2, d, d).
Operator class_c_state(const ClassParams& params, const XYPair& xy);
/// The four generating private bits gamma(X), gamma(-X),
/// s_x^A gamma(Y^+) s_x^A, s_x^A gamma(-Y^+) s_x^A.
std::array<Operator, 4> class_c_generators(const XYPair& xy);
/// Same state as class_c_state, assembled as sum_i lambda_i * generator_i.
Operator class_c_state_mixture(const ClassParams& params, const XYPair& xy);

/// Spider-Y pair (d = 2): Y = q Y_{U1} + (1-q) s_x^{A'} Y_{U2} s_x^{A'},
/// X = Y^Gamma / ||Y^Gamma||. U1 and U2 must share the global phase angle.
XYPair spider_y(const UnitaryAngles& u1, const UnitaryAngles& u2, double q);

/// Four Bell states with flags on the shield: sum_i q_i P_{psi_i} (x) rho^(i).
struct FlagForm {
  std::array<double, 4> weights{};
  std::array<Operator, 4> shield_states;

  Operator assemble() const;
};
/// Flag decomposition of the d = 2 Hadamard class state; alpha, beta >= 0.
FlagForm rho_h_flag_form(const ClassParams& params);

/// Two orthonormal vectors of a local qubit, each given as (key bit, shield index).
struct LocalQubitBasis {
  std::array<std::array<int, 2>, 2> vectors{};
};

struct TwoQubitMember {
  double weight = 0.0;
  Operator rho;  // Bell-diagonal, dims {2, 2}
  LocalQubitBasis alice;  // on A A'
  LocalQubitBasis bob;    // on B B'

  /// rho placed on (2, 2, 2, 2) through the local bases.
  Operator embed() const;
};
/// Decomposition of rho_U (d = 2) into four locally embedded two-qubit
/// Bell-diagonal states; requires |beta| <= ||X^Gamma||.
std::vector<TwoQubitMember> two_qubit_decomposition(const Operator& unitary, const ClassParams& params);

/// (1 - eps) rho + eps I / side.
Operator add_white_noise(const Operator& rho, double eps);

Operator qubit_unitary(const UnitaryAngles& a);
UnitaryAngles hadamard_angles();
Operator hadamard();
Operator fourier_unitary(int d);
/// |psi_1,2> = (|00> +- |11>)/sqrt2, |psi_3,4> = (|01> +- |10>)/sqrt2.
Vector bell_state(int i);

/// Throws ValidationError unless rho is Hermitian, has min eigenvalue >= -1e-9
/// and unit trace within 1e-10. Returns the min eigenvalue.
double validate_state(const Operator& rho);

/// 1 / (1 + ||X^Gamma||): weight of the PPT point on the two-pbit line.
double lambda_tilde(double norm_x_gamma);

}  // namespace boundkey::states
