// Index-shuffling kernels for tensor-structured matrices.
//
// Two implementations with identical contracts: `serial` is the reference kept
// for testing, `parallel` distributes output rows over OpenMP threads. All
// matrices are dense row-major buffers of side product(dims).
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace boundkey::kernels {

using Complex = std::complex<double>;

namespace serial {

void kron(std::span<const Complex> a, long a_side, std::span<const Complex> b, long b_side,
          std::span<Complex> out);

/// `transposed[k]` selects the factors whose row/column digits are swapped.
void partial_transpose(std::span<const Complex> in, const std::vector<int>& dims,
                       const std::vector<bool>& transposed, std::span<Complex> out);

/// `traced[k]` selects factors summed over; `out` has side prod(kept dims).
void partial_trace(std::span<const Complex> in, const std::vector<int>& dims,
                   const std::vector<bool>& traced, std::span<Complex> out);

/// Block-diagonal conjugation: for a matrix split into nb x nb blocks of side
/// bs, block (i, j) becomes U_i * block * U_j^dagger.
void conjugate_blocks(std::span<const Complex> in, long nb, long bs,
                      std::span<const std::span<const Complex>> unitaries, std::span<Complex> out);

}  // namespace serial

namespace parallel {

void kron(std::span<const Complex> a, long a_side, std::span<const Complex> b, long b_side,
          std::span<Complex> out);
void partial_transpose(std::span<const Complex> in, const std::vector<int>& dims,
                       const std::vector<bool>& transposed, std::span<Complex> out);
void partial_trace(std::span<const Complex> in, const std::vector<int>& dims,
                   const std::vector<bool>& traced, std::span<Complex> out);
void conjugate_blocks(std::span<const Complex> in, long nb, long bs,
                      std::span<const std::span<const Complex>> unitaries, std::span<Complex> out);

}  // namespace parallel

}  // namespace boundkey::kernels
