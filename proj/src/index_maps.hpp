// Shared digit bookkeeping for the tensor kernels.
#pragma once

#include <cstddef>
#include <vector>

namespace boundkey::kernels::detail {

// For every flat index i of a space with the given factor dims, split i into
// the part carried by selected factors and the part carried by the rest, each
// expressed as an offset in the full space.
struct SplitIndex {
  std::vector<long> selected;
  std::vector<long> rest;
};

inline SplitIndex split_index(const std::vector<int>& dims, const std::vector<bool>& mask) {
  long n = 1;
  for (int d : dims) n *= d;
  SplitIndex s{std::vector<long>(static_cast<std::size_t>(n)), std::vector<long>(static_cast<std::size_t>(n))};
  std::vector<long> strides(dims.size(), 1);
  for (long k = static_cast<long>(dims.size()) - 2; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = strides[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
  }
  for (long i = 0; i < n; ++i) {
    long sel = 0;
    long rest = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const long digit = (i / strides[k]) % dims[k];
      (mask[k] ? sel : rest) += digit * strides[k];
    }
    s.selected[static_cast<std::size_t>(i)] = sel;
    s.rest[static_cast<std::size_t>(i)] = rest;
  }
  return s;
}

// Offsets (in the full space) of every multi-index ranging over the selected
// factors only, enumerated in row-major order of those factors.
inline std::vector<long> enumerate_offsets(const std::vector<int>& dims, const std::vector<bool>& mask) {
  std::vector<long> strides(dims.size(), 1);
  for (long k = static_cast<long>(dims.size()) - 2; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = strides[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
  }
  std::vector<long> offsets{0};
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!mask[k]) continue;
    std::vector<long> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dims[k]));
    for (long base : offsets) {
      for (int digit = 0; digit < dims[k]; ++digit) next.push_back(base + digit * strides[k]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace boundkey::kernels::detail
