#include "boundkey/states.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace boundkey::states {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;

int single_factor_dim(const Operator& u) {
  if (u.dims().size() != 1) throw std::invalid_argument("expected a single-factor operator");
  return u.dims().front();
}

void require_shield_operator(const Operator& x) {
  if (x.dims().size() != 2) throw std::invalid_argument("expected an operator on A'B'");
}

// Places four blocks on the AB block grid of a (2, 2, shield...) operator.
struct BlockBuilder {
  Eigen::Index n;
  Matrix m;

  explicit BlockBuilder(Eigen::Index block_side) : n(block_side), m(Matrix::Zero(4 * block_side, 4 * block_side)) {}

  void set(int row, int col, const Matrix& b) { m.block(row * n, col * n, n, n) = b; }
};

Dims key_dims(const Dims& shield) {
  Dims d{2, 2};
  d.insert(d.end(), shield.begin(), shield.end());
  return d;
}

// s_x on A: swaps AB blocks 00 <-> 10 and 01 <-> 11.
Operator flip_alice_key(const Operator& rho) {
  const Eigen::Index n = rho.side() / 4;
  static constexpr int kPerm[4] = {2, 3, 0, 1};
  Matrix out(rho.side(), rho.side());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.block(kPerm[i] * n, kPerm[j] * n, n, n) = rho.matrix().block(i * n, j * n, n, n);
    }
  }
  return {rho.dims(), std::move(out)};
}

Matrix y_u(const Operator& u) {
  const int d = single_factor_dim(u);
  Matrix y = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) y(i * d + i, j * d + j) = u(i, j) / static_cast<double>(d);
  }
  return y;
}

}  // namespace

ClassParams ClassParams::from_lambdas(int d, const std::array<double, 4>& l) {
  ClassParams c;
  c.d = d;
  c.p = l[0] + l[1];
  const double q = l[2] + l[3];
  c.alpha = c.p > 0.0 ? (l[0] - l[1]) / c.p : 0.0;
  c.beta = q > 0.0 ? (l[2] - l[3]) / q : 0.0;
  return c;
}

std::array<double, 4> ClassParams::lambdas() const {
  return {(1.0 + alpha) * p / 2.0, (1.0 - alpha) * p / 2.0, (1.0 + beta) * (1.0 - p) / 2.0,
          (1.0 - beta) * (1.0 - p) / 2.0};
}

void ClassParams::validate() const {
  if (d < 2) throw std::invalid_argument("shield dimension must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(std::abs(alpha) <= 1.0)) throw std::invalid_argument("alpha must lie in [-1, 1]");
  if (!(std::abs(beta) <= 1.0)) throw std::invalid_argument("beta must lie in [-1, 1]");
}

Operator shield_gamma(const Operator& x) {
  require_shield_operator(x);
  return partial_transpose(x, {1});
}

XOperator x_operator(const Operator& unitary) {
  const int d = single_factor_dim(unitary);
  if (!is_unitary(unitary.matrix(), kUnitaryTol)) throw std::invalid_argument("x_operator needs a unitary");
  const double u = unitary.matrix().cwiseAbs().sum();
  Matrix x = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) x(i * d + j, j * d + i) = unitary(i, j) / u;
  }
  return {Operator({d, d}, std::move(x)), u, static_cast<double>(d) / u};
}

Operator y_from_x(const Operator& x) {
  const Operator g = shield_gamma(x);
  const double n = trace_norm(g);
  if (n == 0.0) throw std::invalid_argument("y_from_x needs a nonzero operator");
  return (1.0 / n) * g;
}

XYPair xy_from_unitary(const Operator& unitary) {
  auto xo = x_operator(unitary);
  Operator y = y_from_x(xo.x);
  return {std::move(xo.x), std::move(y), xo.norm_x_gamma};
}

double class_c_membership_defect(const XYPair& xy) {
  const Matrix& x = xy.x.matrix();
  const Matrix& y = xy.y.matrix();
  const Dims& dims = xy.x.dims();
  double worst = 0.0;
  for (const Matrix& m : {left_modulus(x), right_modulus(x), left_modulus(y), right_modulus(y)}) {
    const Operator root(dims, m);
    worst = std::max(worst, max_abs_diff(root.matrix(), shield_gamma(root).matrix()));
  }
  return worst;
}

Operator private_bit(const Operator& x) {
  require_shield_operator(x);
  const double n = trace_norm(x);
  if (std::abs(n - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "private bit needs ||X|| = 1, got " << n;
    throw std::invalid_argument(os.str());
  }
  const Matrix& xm = x.matrix();
  BlockBuilder b(x.side());
  b.set(0, 0, 0.5 * left_modulus(xm));
  b.set(0, 3, 0.5 * xm);
  b.set(3, 0, 0.5 * xm.adjoint());
  b.set(3, 3, 0.5 * right_modulus(xm));
  Operator rho(key_dims(x.dims()), std::move(b.m));
  validate_state(rho);
  return rho;
}

Operator class_c_state(const ClassParams& params, const XYPair& xy) {
  params.validate();
  if (xy.d() != params.d || xy.y.dims() != xy.x.dims()) throw std::invalid_argument("X/Y dimension does not match d");
  const auto l = params.lambdas();
  const Matrix& x = xy.x.matrix();
  const Matrix& y = xy.y.matrix();
  BlockBuilder b(xy.x.side());
  b.set(0, 0, 0.5 * (l[0] + l[1]) * left_modulus(x));
  b.set(0, 3, 0.5 * (l[0] - l[1]) * x);
  b.set(3, 0, 0.5 * (l[0] - l[1]) * x.adjoint());
  b.set(3, 3, 0.5 * (l[0] + l[1]) * right_modulus(x));
  b.set(1, 1, 0.5 * (l[2] + l[3]) * left_modulus(y));
  b.set(1, 2, 0.5 * (l[2] - l[3]) * y);
  b.set(2, 1, 0.5 * (l[2] - l[3]) * y.adjoint());
  b.set(2, 2, 0.5 * (l[2] + l[3]) * right_modulus(y));
  Operator rho(key_dims(xy.x.dims()), std::move(b.m));
  validate_state(rho);
  return rho;
}

std::array<Operator, 4> class_c_generators(const XYPair& xy) {
  const Operator ydag = xy.y.adjoint();
  return {private_bit(xy.x), private_bit(-1.0 * xy.x), flip_alice_key(private_bit(ydag)),
          flip_alice_key(private_bit(-1.0 * ydag))};
}

Operator class_c_state_mixture(const ClassParams& params, const XYPair& xy) {
  params.validate();
  if (xy.d() != params.d) throw std::invalid_argument("X/Y dimension does not match d");
  const auto l = params.lambdas();
  const auto g = class_c_generators(xy);
  Operator rho = Operator::zero(g[0].dims());
  for (int i = 0; i < 4; ++i) rho += l[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
  validate_state(rho);
  return rho;
}

XYPair spider_y(const UnitaryAngles& u1, const UnitaryAngles& u2, double q) {
  if (u1.alpha != u2.alpha) throw std::invalid_argument("spider-Y unitaries must share the global phase angle");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
  const Matrix flip = kron(Matrix(Eigen::Matrix2cd{{0.0, 1.0}, {1.0, 0.0}}), Matrix(Matrix::Identity(2, 2)));
  const Matrix y = q * y_u(qubit_unitary(u1)) + (1.0 - q) * flip * y_u(qubit_unitary(u2)) * flip;
  Operator yop({2, 2}, y);
  if (std::abs(trace_norm(yop) - 1.0) > kNormTol) throw ValidationError("spider-Y operator does not have unit trace norm");
  Operator x = y_from_x(yop);
  const double nxg = trace_norm(shield_gamma(x));
  XYPair xy{std::move(x), std::move(yop), nxg};
  if (const double defect = class_c_membership_defect(xy); defect > kNormTol) {
    std::ostringstream os;
    os << "spider-Y diagonal blocks are not PPT-invariant (defect " << defect << ")";
    throw ValidationError(os.str());
  }
  return xy;
}

Operator FlagForm::assemble() const {
  Operator rho = Operator::zero({2, 2, 2, 2});
  for (int i = 0; i < 4; ++i) {
    rho += weights[static_cast<std::size_t>(i)] *
           kron(Operator::projector({2, 2}, bell_state(i + 1)), shield_states[static_cast<std::size_t>(i)]);
  }
  return rho;
}

FlagForm rho_h_flag_form(const ClassParams& params) {
  params.validate();
  if (params.d != 2) throw std::invalid_argument("flag form is defined for d = 2");
  if (params.alpha < 0.0 || params.beta < 0.0) {
    throw std::invalid_argument("flag form needs alpha, beta >= 0");
  }
  const auto proj = [](const Vector& v) { return Operator::projector({2, 2}, v); };
  Vector e00 = Vector::Zero(4);
  e00(0) = 1.0;
  Vector e11 = Vector::Zero(4);
  e11(3) = 1.0;
  const Vector chi_plus = (e00 + bell_state(1)) / std::sqrt(2.0 + std::sqrt(2.0));
  const Vector chi_minus = (e00 - bell_state(1)) / std::sqrt(2.0 - std::sqrt(2.0));
  const Operator quarter = 0.25 * Operator::identity({2, 2});
  const Operator classical = 0.5 * (proj(e00) + proj(e11));
  const double a = params.alpha;
  const double b = params.beta;

  FlagForm f;
  f.weights = {params.p / 2.0, params.p / 2.0, (1.0 - params.p) / 2.0, (1.0 - params.p) / 2.0};
  f.shield_states = {
      a * 0.5 * (proj(e00) + proj(bell_state(3))) + (1.0 - a) * quarter,
      a * 0.5 * (proj(e11) + proj(bell_state(4))) + (1.0 - a) * quarter,
      b * proj(chi_plus) + (1.0 - b) * classical,
      b * proj(chi_minus) + (1.0 - b) * classical,
  };
  for (const auto& s : f.shield_states) validate_state(s);
  return f;
}

Operator TwoQubitMember::embed() const {
  Matrix v = Matrix::Zero(16, 4);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const auto [a, ap] = alice.vectors[static_cast<std::size_t>(x)];
      const auto [b, bp] = bob.vectors[static_cast<std::size_t>(y)];
      v(((a * 2 + b) * 2 + ap) * 2 + bp, x * 2 + y) = 1.0;
    }
  }
  return {{2, 2, 2, 2}, v * rho.matrix() * v.adjoint()};
}

std::vector<TwoQubitMember> two_qubit_decomposition(const Operator& unitary, const ClassParams& params) {
  params.validate();
  if (params.d != 2 || single_factor_dim(unitary) != 2) throw std::invalid_argument("decomposition needs d = 2");
  const auto xo = x_operator(unitary);
  const double n = xo.norm_x_gamma;
  if (std::abs(params.beta) > n + 1e-12) {
    throw std::invalid_argument("decomposition needs |beta| <= ||X^Gamma||");
  }
  // Local bases per (i, j): Alice on AA', Bob on BB', as (key bit, shield index).
  using B = LocalQubitBasis;
  const std::array<std::pair<B, B>, 4> bases = {{
      {B{{{{0, 0}, {1, 0}}}}, B{{{{0, 0}, {1, 0}}}}},
      {B{{{{0, 0}, {1, 1}}}}, B{{{{0, 1}, {1, 0}}}}},
      {B{{{{0, 1}, {1, 0}}}}, B{{{{0, 0}, {1, 1}}}}},
      {B{{{{0, 1}, {1, 1}}}}, B{{{{0, 1}, {1, 1}}}}},
  }};
  const double p = params.p;
  std::vector<TwoQubitMember> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex uij = unitary(i, j);
      const Complex phase = std::abs(uij) > 0.0 ? uij / std::abs(uij) : Complex{1.0, 0.0};
      Matrix r = Matrix::Zero(4, 4);
      r(0, 0) = r(3, 3) = p / 2.0;
      r(1, 1) = r(2, 2) = (1.0 - p) / 2.0;
      r(0, 3) = 0.5 * params.alpha * p * phase;
      r(3, 0) = std::conj(r(0, 3));
      r(1, 2) = 0.5 * params.beta * (1.0 - p) / n * phase;
      r(2, 1) = std::conj(r(1, 2));
      const auto& [alice, bob] = bases[static_cast<std::size_t>(i * 2 + j)];
      out.push_back({std::abs(uij) / xo.u, Operator({2, 2}, std::move(r)), alice, bob});
    }
  }
  return out;
}

Operator add_white_noise(const Operator& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("noise fraction must lie in [0, 1]");
  if (std::abs(rho.trace().real() - 1.0) > kTraceTol) throw std::invalid_argument("noise needs a unit-trace state");
  const double n = static_cast<double>(rho.side());
  Operator out = (1.0 - eps) * rho + (eps / n) * Operator::identity(rho.dims());
  validate_state(out);
  return out;
}

Operator qubit_unitary(const UnitaryAngles& a) {
  const Complex i{0.0, 1.0};
  const double c = std::cos(a.gamma / 2.0);
  const double s = std::sin(a.gamma / 2.0);
  Matrix u(2, 2);
  u(0, 0) = std::exp(i * (-a.beta / 2.0 - a.delta / 2.0)) * c;
  u(0, 1) = -std::exp(i * (-a.beta / 2.0 + a.delta / 2.0)) * s;
  u(1, 0) = std::exp(i * (a.beta / 2.0 - a.delta / 2.0)) * s;
  u(1, 1) = std::exp(i * (a.beta / 2.0 + a.delta / 2.0)) * c;
  u *= std::exp(i * a.alpha);
  return {{2}, std::move(u)};
}

UnitaryAngles hadamard_angles() {
  using std::numbers::pi;
  return {pi / 2.0, 0.0, pi / 2.0, pi};
}

Operator hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << r, r, r, -r;
  return {{2}, std::move(h)};
}

Operator fourier_unitary(int d) {
  if (d < 1) throw std::invalid_argument("Fourier dimension must be positive");
  Matrix f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // Reduce jk mod d before forming the angle to keep the phases exact-ish.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      f(j, k) = std::polar(norm, angle);
    }
  }
  return {{d}, std::move(f)};
}

Vector bell_state(int i) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (i) {
    case 1: v(0) = r; v(3) = r; break;
    case 2: v(0) = r; v(3) = -r; break;
    case 3: v(1) = r; v(2) = r; break;
    case 4: v(1) = r; v(2) = -r; break;
    default: throw std::invalid_argument("Bell state index must be 1..4");
  }
  return v;
}

double validate_state(const Operator& rho) {
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol || std::abs(rho.trace().imag()) > kTraceTol) {
    std::ostringstream os;
    os << "state trace " << std::setprecision(17) << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  Spectrum s;
  try {
    s = hermitian_eigenvalues(rho);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (s.min() < -kPsdTol) {
    std::ostringstream os;
    os << "state has negative eigenvalue " << s.min();
    throw ValidationError(os.str());
  }
  return s.min();
}

double lambda_tilde(double norm_x_gamma) { return 1.0 / (1.0 + norm_x_gamma); }

}  // namespace boundkey::states
