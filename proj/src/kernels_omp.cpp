#include "boundkey/kernels.hpp"

#include <Eigen/Dense>

#include "index_maps.hpp"

namespace boundkey::kernels::parallel {

namespace {
using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat, Eigen::Unaligned, Eigen::OuterStride<>>;
using MutMap = Eigen::Map<RowMat, Eigen::Unaligned, Eigen::OuterStride<>>;
}  // namespace

void kron(std::span<const Complex> a, long a_side, std::span<const Complex> b, long b_side,
          std::span<Complex> out) {
  const long n = a_side * b_side;
#pragma omp parallel for schedule(static)
  for (long row = 0; row < n; ++row) {
    const long i1 = row / b_side;
    const long i2 = row % b_side;
    Complex* dst = out.data() + row * n;
    for (long j1 = 0; j1 < a_side; ++j1) {
      const Complex av = a[static_cast<std::size_t>(i1 * a_side + j1)];
      const Complex* brow = b.data() + i2 * b_side;
#pragma omp simd
      for (long j2 = 0; j2 < b_side; ++j2) dst[j1 * b_side + j2] = av * brow[j2];
    }
  }
}

void partial_transpose(std::span<const Complex> in, const std::vector<int>& dims,
                       const std::vector<bool>& transposed, std::span<Complex> out) {
  const auto split = detail::split_index(dims, transposed);
  const long n = static_cast<long>(split.rest.size());
  const long* rest = split.rest.data();
  const long* sel = split.selected.data();
  // Gather form: each output row is written by exactly one thread.
#pragma omp parallel for schedule(static)
  for (long r2 = 0; r2 < n; ++r2) {
    for (long c2 = 0; c2 < n; ++c2) {
      const long r = rest[r2] + sel[c2];
      const long c = rest[c2] + sel[r2];
      out[static_cast<std::size_t>(r2 * n + c2)] = in[static_cast<std::size_t>(r * n + c)];
    }
  }
}

void partial_trace(std::span<const Complex> in, const std::vector<int>& dims,
                   const std::vector<bool>& traced, std::span<Complex> out) {
  std::vector<bool> kept(traced.size());
  for (std::size_t k = 0; k < traced.size(); ++k) kept[k] = !traced[k];
  const auto keep = detail::enumerate_offsets(dims, kept);
  const auto sum = detail::enumerate_offsets(dims, traced);
  long n = 1;
  for (int d : dims) n *= d;
  const long m = static_cast<long>(keep.size());
  const long nt = static_cast<long>(sum.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (long r = 0; r < m; ++r) {
    for (long c = 0; c < m; ++c) {
      double re = 0.0;
      double im = 0.0;
      const long base = keep[static_cast<std::size_t>(r)] * n + keep[static_cast<std::size_t>(c)];
      for (long t = 0; t < nt; ++t) {
        const long off = sum[static_cast<std::size_t>(t)];
        const Complex v = in[static_cast<std::size_t>(base + off * n + off)];
        re += v.real();
        im += v.imag();
      }
      out[static_cast<std::size_t>(r * m + c)] = Complex{re, im};
    }
  }
}

void conjugate_blocks(std::span<const Complex> in, long nb, long bs,
                      std::span<const std::span<const Complex>> unitaries, std::span<Complex> out) {
  const long n = nb * bs;
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (long i = 0; i < nb; ++i) {
    for (long j = 0; j < nb; ++j) {
      const ConstMap ui(unitaries[static_cast<std::size_t>(i)].data(), bs, bs, Eigen::OuterStride<>(bs));
      const ConstMap uj(unitaries[static_cast<std::size_t>(j)].data(), bs, bs, Eigen::OuterStride<>(bs));
      const ConstMap block(in.data() + i * bs * n + j * bs, bs, bs, Eigen::OuterStride<>(n));
      MutMap dst(out.data() + i * bs * n + j * bs, bs, bs, Eigen::OuterStride<>(n));
      dst.noalias() = ui * block * uj.adjoint();
    }
  }
}

}  // namespace boundkey::kernels::parallel
