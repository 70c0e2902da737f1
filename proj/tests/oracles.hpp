// Reference computations and random generators shared by the test suites.
//
// The index oracles below decode every multi-index digit by digit and never
// touch the library kernels, so they can judge both kernel variants.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "boundkey/linops.hpp"
#include "boundkey/states.hpp"

namespace oracle {

using boundkey::Complex;
using boundkey::Dims;
using boundkey::Matrix;
using boundkey::Operator;

inline std::vector<int> digits(long index, const Dims& dims) {
  std::vector<int> out(dims.size());
  for (long k = static_cast<long>(dims.size()) - 1; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = static_cast<int>(index % dims[static_cast<std::size_t>(k)]);
    index /= dims[static_cast<std::size_t>(k)];
  }
  return out;
}

inline long flatten(const std::vector<int>& dig, const Dims& dims) {
  long index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + dig[k];
  return index;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix partial_transpose(const Matrix& m, const Dims& dims, const std::vector<int>& factors) {
  Matrix out(m.rows(), m.cols());
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      auto rd = digits(r, dims);
      auto cd = digits(c, dims);
      for (int f : factors) std::swap(rd[static_cast<std::size_t>(f)], cd[static_cast<std::size_t>(f)]);
      out(flatten(rd, dims), flatten(cd, dims)) = m(r, c);
    }
  }
  return out;
}

inline Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<int>& traced) {
  Dims kept;
  std::vector<bool> is_traced(dims.size(), false);
  for (int f : traced) is_traced[static_cast<std::size_t>(f)] = true;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!is_traced[k]) kept.push_back(dims[k]);
  long side = 1;
  for (int d : kept) side *= d;
  Matrix out = Matrix::Zero(side, side);
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      const auto rd = digits(r, dims);
      const auto cd = digits(c, dims);
      bool diagonal = true;
      std::vector<int> rk, ck;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (is_traced[k]) {
          diagonal = diagonal && rd[k] == cd[k];
        } else {
          rk.push_back(rd[k]);
          ck.push_back(cd[k]);
        }
      }
      if (diagonal) out(flatten(rk, kept), flatten(ck, kept)) += m(r, c);
    }
  }
  return out;
}

// Entropy from a general (non-Hermitian-specialized) eigensolver.
inline double entropy_general_solver(const Matrix& rho) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(rho), false);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double l = es.eigenvalues()(k).real();
    if (l > 1e-14) s -= l * std::log2(l);
  }
  return s;
}

inline double min_eigenvalue_general(const Matrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(m), false);
  double lo = INFINITY;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) lo = std::min(lo, es.eigenvalues()(k).real());
  return lo;
}

inline double trace_norm_via_eigs(const Matrix& x) {
  // The Hermitian dilation [[0, x], [x^dagger, 0]] has eigenvalues +-sigma_k,
  // so ||x||_1 is the sum of its positive eigenvalues.
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + m, n + m);
  h.topRightCorner(n, m) = x;
  h.bottomLeftCorner(m, n) = x.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) s += std::max(es.eigenvalues()(k), 0.0);
  return s;
}

inline double fro(const Matrix& a) { return a.norm(); }

// ---- random generators ----

inline Matrix random_matrix(std::mt19937& rng, long rows, long cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline Matrix random_unitary(std::mt19937& rng, long n) {
  const Eigen::MatrixXcd z = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long k = 0; k < n; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

// Density matrix of rank `rank` (full rank when rank <= 0).
inline Matrix random_density(std::mt19937& rng, long n, long rank = 0) {
  const Matrix g = random_matrix(rng, n, rank > 0 ? rank : n);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline boundkey::states::ClassParams random_params(std::mt19937& rng, int d) {
  return {d, uniform(rng, 0.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
}

// Spider state: a random density pinched onto span{00,11} (+) span{01,10}
// of the key part; pinching keeps it positive.
inline Matrix random_spider(std::mt19937& rng, int d, long rank = 0) {
  const long n = static_cast<long>(d) * d;
  Matrix rho = random_density(rng, 4 * n, rank);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool even_i = i == 0 || i == 3;
      const bool even_j = j == 0 || j == 3;
      if (even_i != even_j) rho.block(i * n, j * n, n, n).setZero();
    }
  }
  return rho;
}

// Spider with ||C|| = ||C'|| and ||E|| = ||E'||: averaged with its image under
// the swap 00 <-> 11, 01 <-> 10, then conjugated by a random twisting so the
// blocks are not trivially related. Low rank keeps the key coherences large.
inline Matrix random_squeezable_spider(std::mt19937& rng, int d, long rank = 1) {
  const long n = static_cast<long>(d) * d;
  const Matrix s = random_spider(rng, d, rank);
  Matrix flipped(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) flipped.block(i * n, j * n, n, n) = s.block((3 - i) * n, (3 - j) * n, n, n);
  Matrix rho = 0.5 * (s + flipped);
  Matrix u = Matrix::Zero(4 * n, 4 * n);
  for (int i = 0; i < 4; ++i) u.block(i * n, i * n, n, n) = random_unitary(rng, n);
  return u * rho * u.adjoint();
}

}  // namespace oracle
