#include "boundkey/linops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "boundkey/kernels.hpp"

namespace boundkey {

namespace {

std::span<const Complex> view(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
std::span<Complex> view(Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

std::vector<bool> factor_mask(const Dims& dims, const FactorSet& factors) {
  std::vector<bool> mask(dims.size(), false);
  for (int f : factors) {
    if (f < 0 || static_cast<std::size_t>(f) >= dims.size()) {
      std::ostringstream os;
      os << "factor index " << f << " out of range for " << dims.size() << " factors";
      throw std::out_of_range(os.str());
    }
    mask[static_cast<std::size_t>(f)] = true;
  }
  return mask;
}

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

}  // namespace

std::size_t product(const Dims& dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

Operator::Operator(Dims dims, Matrix data) : dims_(std::move(dims)), data_(std::move(data)) {
  for (int d : dims_) {
    if (d <= 0) throw std::invalid_argument("factor dimensions must be positive");
  }
  const auto n = static_cast<Eigen::Index>(product(dims_));
  if (data_.rows() != n || data_.cols() != n) {
    std::ostringstream os;
    os << "matrix is " << data_.rows() << "x" << data_.cols() << " but dims multiply to " << n;
    throw std::invalid_argument(os.str());
  }
}

Operator Operator::identity(Dims dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return {std::move(dims), Matrix::Identity(n, n)};
}

Operator Operator::zero(Dims dims) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  return {std::move(dims), Matrix::Zero(n, n)};
}

Operator Operator::projector(Dims dims, const Vector& v) {
  return {std::move(dims), v * v.adjoint()};
}

Operator Operator::adjoint() const { return {dims_, data_.adjoint()}; }

Operator& Operator::operator+=(const Operator& o) {
  if (o.dims_ != dims_) throw std::invalid_argument("operator dims mismatch in +");
  data_ += o.data_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  if (o.dims_ != dims_) throw std::invalid_argument("operator dims mismatch in -");
  data_ -= o.data_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  data_ *= s;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }
Operator operator*(Complex s, Operator a) { return a *= s; }
Operator operator*(double s, Operator a) { return a *= Complex{s, 0.0}; }
Operator operator*(const Operator& a, const Operator& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("operator dims mismatch in product");
  return {a.dims(), a.matrix() * b.matrix()};
}

double Spectrum::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  kernels::parallel::kron(view(a), a.rows(), view(b), b.rows(), view(out));
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return {std::move(dims), kron(a.matrix(), b.matrix())};
}

Operator partial_transpose(const Operator& rho, const FactorSet& factors) {
  const auto mask = factor_mask(rho.dims(), factors);
  Matrix out(rho.side(), rho.side());
  kernels::parallel::partial_transpose(view(rho.matrix()), rho.dims(), mask, view(out));
  return {rho.dims(), std::move(out)};
}

Operator partial_trace(const Operator& rho, const FactorSet& traced) {
  const auto mask = factor_mask(rho.dims(), traced);
  Dims kept;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (!mask[k]) kept.push_back(rho.dims()[k]);
  }
  const auto m = static_cast<Eigen::Index>(product(kept));
  Matrix out(m, m);
  kernels::parallel::partial_trace(view(rho.matrix()), rho.dims(), mask, view(out));
  return {std::move(kept), std::move(out)};
}

double trace_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x);
  return svd.singularValues().sum();
}

double hermiticity_defect(const Matrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("hermiticity check needs a square matrix");
  return x.size() == 0 ? 0.0 : (x - x.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum hermitian_eigenvalues(const Matrix& x, bool with_vectors) {
  const double scale = std::max(max_abs(x), 1e-300);
  const double defect = hermiticity_defect(x);
  if (defect > kHermitianRelTol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ")";
    throw std::invalid_argument(os.str());
  }
  const Eigen::MatrixXcd sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      sym, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");

  // Eigen returns ascending order; a stable descending sort keeps the
  // original order of exact ties.
  const auto n = es.eigenvalues().size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return ev(a) > ev(b); });

  Spectrum s;
  s.values.reserve(static_cast<std::size_t>(n));
  for (auto k : order) s.values.push_back(ev(k));
  if (with_vectors) {
    Matrix vecs(n, n);
    for (Eigen::Index j = 0; j < n; ++j) vecs.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
    s.vectors = std::move(vecs);
  }
  return s;
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double spectrum_entropy(std::span<const double> eigenvalues, double tol) {
  double h = 0.0;
  for (double l : eigenvalues) {
    if (l < -tol || l > 1.0 + tol) {
      std::ostringstream os;
      os << "eigenvalue " << l << " outside [0, 1]";
      throw std::invalid_argument(os.str());
    }
    const double p = std::clamp(l, 0.0, 1.0);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann_entropy(const Matrix& rho, double tol) {
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "entropy needs a unit-trace state, trace is " << tr;
    throw std::invalid_argument(os.str());
  }
  const auto s = hermitian_eigenvalues(rho);
  return spectrum_entropy(s.values, tol);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary entropy argument outside [0, 1]");
  const double p[2] = {x, 1.0 - x};
  return shannon_entropy(p);
}

Matrix psd_sqrt(const Matrix& x) {
  const auto s = hermitian_eigenvalues(x, true);
  const Matrix& v = *s.vectors;
  Eigen::VectorXd roots(static_cast<Eigen::Index>(s.values.size()));
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    roots(static_cast<Eigen::Index>(k)) = std::sqrt(std::max(s.values[k], 0.0));
  }
  return v * roots.asDiagonal() * v.adjoint();
}

Matrix left_modulus(const Matrix& x) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeFullU);
  const Eigen::MatrixXcd& u = svd.matrixU();
  return u * svd.singularValues().cast<Complex>().asDiagonal() * u.adjoint();
}

Matrix right_modulus(const Matrix& x) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeFullV);
  const Eigen::MatrixXcd& v = svd.matrixV();
  return v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
}

PolarDecomposition polar(const Matrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("polar decomposition needs a square matrix");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd& u = svd.matrixU();
  const Eigen::MatrixXcd& v = svd.matrixV();
  PolarDecomposition out;
  out.unitary = u * v.adjoint();
  out.positive = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  return out;
}

double trace_distance(const Matrix& a, const Matrix& b) { return 0.5 * trace_norm(Matrix(a - b)); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

Operator Purification::system_state() const {
  const auto n = static_cast<Eigen::Index>(product(system_dims));
  // psi is indexed (system, environment) with the environment fast.
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.data(), n, environment_dim);
  return {system_dims, m * m.adjoint()};
}

Purification purify(const Operator& rho) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-8) throw std::invalid_argument("purify needs a unit-trace state");
  const auto s = hermitian_eigenvalues(rho, true);
  if (s.min() < -kPsdTol) throw std::invalid_argument("purify needs a positive semidefinite state");
  const Eigen::Index n = rho.side();
  Purification out;
  out.system_dims = rho.dims();
  out.environment_dim = static_cast<int>(n);
  out.psi = Vector::Zero(n * n);
  const Matrix& v = *s.vectors;
  for (Eigen::Index k = 0; k < n; ++k) {
    // Roundoff-level eigenvalues would leak ~sqrt(eps) amplitudes into the environment.
    const double lambda = s.values[static_cast<std::size_t>(k)];
    if (lambda <= 1e-13) continue;
    const double w = std::sqrt(lambda);
    // Fix the eigenvector phase: largest component real and positive.
    Eigen::Index arg = 0;
    v.col(k).cwiseAbs().maxCoeff(&arg);
    const Complex phase = std::conj(v(arg, k)) / std::abs(v(arg, k));
    for (Eigen::Index i = 0; i < n; ++i) out.psi(i * n + k) = w * phase * v(i, k);
  }
  return out;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return max_abs_diff(u * u.adjoint(), id) <= tol;
}

}  // namespace boundkey
