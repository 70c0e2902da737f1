// Dense complex linear algebra over tensor-product Hilbert spaces.
//
// Every state, block and unitary in the library is an Operator: a square
// complex matrix tagged with the ordered list of tensor-factor dimensions it
// acts on. Multi-indices are row-major with the left factor slow, so a state
// on (A, B, A', B') with A, B qubits reads directly as a 4x4 grid of blocks
// on A'B' indexed by the key-part basis {00, 01, 10, 11}.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace boundkey {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<int>;
using FactorSet = std::vector<int>;

/// Raised when a constructed state fails its PSD / unit-trace validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hermiticity tolerance relative to the largest entry modulus.
inline constexpr double kHermitianRelTol = 1e-9;
/// Eigenvalues above -kPsdTol are treated as zero when taking entropies / roots.
inline constexpr double kPsdTol = 1e-9;
/// Unit-trace tolerance for density matrices.
inline constexpr double kTraceTol = 1e-10;

std::size_t product(const Dims& dims);

class Operator {
 public:
  Operator() = default;
  Operator(Dims dims, Matrix data);

  static Operator identity(Dims dims);
  static Operator zero(Dims dims);
  /// |v><v| on the given factors.
  static Operator projector(Dims dims, const Vector& v);

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return data_; }
  Matrix& matrix() noexcept { return data_; }
  Eigen::Index side() const noexcept { return data_.rows(); }

  Complex trace() const { return data_.trace(); }
  Operator adjoint() const;
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return data_(r, c); }

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(Complex s);

 private:
  Dims dims_;
  Matrix data_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(Complex s, Operator a);
Operator operator*(double s, Operator a);
/// Matrix product; both operands must carry identical dims.
Operator operator*(const Operator& a, const Operator& b);

struct Spectrum {
  std::vector<double> values;  // descending
  std::optional<Matrix> vectors;  // column k pairs with values[k]

  double sum() const;
  double min() const { return values.back(); }
  double max() const { return values.front(); }
};

Operator kron(const Operator& a, const Operator& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Transpose over the listed factor indices.
Operator partial_transpose(const Operator& rho, const FactorSet& factors);
/// Trace out the listed factor indices; the result keeps the other factors in order.
Operator partial_trace(const Operator& rho, const FactorSet& traced);

/// Sum of singular values.
double trace_norm(const Matrix& x);
inline double trace_norm(const Operator& x) { return trace_norm(x.matrix()); }

/// Largest |x_ij - conj(x_ji)|.
double hermiticity_defect(const Matrix& x);

/// Real descending spectrum of a Hermitian matrix. Throws std::invalid_argument
/// when the input is not Hermitian to kHermitianRelTol * max|x_ij|.
Spectrum hermitian_eigenvalues(const Matrix& x, bool with_vectors = false);
inline Spectrum hermitian_eigenvalues(const Operator& x, bool with_vectors = false) {
  return hermitian_eigenvalues(x.matrix(), with_vectors);
}

/// -sum p log2 p over a probability vector, with 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
/// Entropy in bits of a spectrum; entries in [-tol, 0) are clipped to zero.
double spectrum_entropy(std::span<const double> eigenvalues, double tol = kPsdTol);
double von_neumann_entropy(const Matrix& rho, double tol = kPsdTol);
inline double von_neumann_entropy(const Operator& rho, double tol = kPsdTol) {
  return von_neumann_entropy(rho.matrix(), tol);
}
double binary_entropy(double x);

/// Square root of a positive semidefinite matrix (negative roundoff clipped).
Matrix psd_sqrt(const Matrix& x);
/// sqrt(x x^dagger) and sqrt(x^dagger x) from one SVD of x; avoids squaring small singular values.
Matrix left_modulus(const Matrix& x);
Matrix right_modulus(const Matrix& x);

/// x = unitary * positive, with positive = sqrt(x^dagger x).
struct PolarDecomposition {
  Matrix unitary;
  Matrix positive;
};
PolarDecomposition polar(const Matrix& x);

double trace_distance(const Matrix& a, const Matrix& b);
inline double trace_distance(const Operator& a, const Operator& b) {
  return trace_distance(a.matrix(), b.matrix());
}
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Spectral purification sum_k sqrt(l_k) |e_k>|k>; the environment is the
/// second factor and has the same dimension as the system.
struct Purification {
  Vector psi;
  Dims system_dims;
  int environment_dim = 0;

  /// Reduced state on the system (traces out the environment).
  Operator system_state() const;
};
Purification purify(const Operator& rho);

bool is_unitary(const Matrix& u, double tol = 1e-10);

}  // namespace boundkey
