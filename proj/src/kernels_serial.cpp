#include "boundkey/kernels.hpp"

#include <Eigen/Dense>

#include "index_maps.hpp"

namespace boundkey::kernels::serial {

namespace {
using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat, Eigen::Unaligned, Eigen::OuterStride<>>;
using MutMap = Eigen::Map<RowMat, Eigen::Unaligned, Eigen::OuterStride<>>;
}  // namespace

void kron(std::span<const Complex> a, long a_side, std::span<const Complex> b, long b_side,
          std::span<Complex> out) {
  const long n = a_side * b_side;
  for (long i1 = 0; i1 < a_side; ++i1) {
    for (long i2 = 0; i2 < b_side; ++i2) {
      const long row = i1 * b_side + i2;
      for (long j1 = 0; j1 < a_side; ++j1) {
        const Complex av = a[static_cast<std::size_t>(i1 * a_side + j1)];
        for (long j2 = 0; j2 < b_side; ++j2) {
          out[static_cast<std::size_t>(row * n + j1 * b_side + j2)] = av * b[static_cast<std::size_t>(i2 * b_side + j2)];
        }
      }
    }
  }
}

void partial_transpose(std::span<const Complex> in, const std::vector<int>& dims,
                       const std::vector<bool>& transposed, std::span<Complex> out) {
  const auto split = detail::split_index(dims, transposed);
  const long n = static_cast<long>(split.rest.size());
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) {
      const long r2 = split.rest[static_cast<std::size_t>(r)] + split.selected[static_cast<std::size_t>(c)];
      const long c2 = split.rest[static_cast<std::size_t>(c)] + split.selected[static_cast<std::size_t>(r)];
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
  for (long r = 0; r < m; ++r) {
    for (long c = 0; c < m; ++c) {
      Complex acc{0.0, 0.0};
      for (long t : sum) {
        acc += in[static_cast<std::size_t>((keep[static_cast<std::size_t>(r)] + t) * n + keep[static_cast<std::size_t>(c)] + t)];
      }
      out[static_cast<std::size_t>(r * m + c)] = acc;
    }
  }
}

void conjugate_blocks(std::span<const Complex> in, long nb, long bs,
                      std::span<const std::span<const Complex>> unitaries, std::span<Complex> out) {
  const long n = nb * bs;
  for (long i = 0; i < nb; ++i) {
    const ConstMap ui(unitaries[static_cast<std::size_t>(i)].data(), bs, bs, Eigen::OuterStride<>(bs));
    for (long j = 0; j < nb; ++j) {
      const ConstMap uj(unitaries[static_cast<std::size_t>(j)].data(), bs, bs, Eigen::OuterStride<>(bs));
      const ConstMap block(in.data() + i * bs * n + j * bs, bs, bs, Eigen::OuterStride<>(n));
      MutMap dst(out.data() + i * bs * n + j * bs, bs, bs, Eigen::OuterStride<>(n));
      dst.noalias() = ui * block * uj.adjoint();
    }
  }
}

}  // namespace boundkey::kernels::serial
