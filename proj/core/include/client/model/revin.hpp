#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "client/tensor/tensor.hpp"

namespace client {

// Per-instance statistics removed by encode and restored by decode.
// Index b * variables + c for batch item b, variable c.
struct RevinState {
  std::size_t batch = 1;
  std::size_t variables = 0;
  std::vector<double> mean;
  std::vector<double> stdev;  // population std, clamped below by eps
};

// Optional learnable per-variable affine applied after standardisation.
struct RevinAffine {
  Tensor scale;  // [C], initialised to 1
  Tensor shift;  // [C], initialised to 0
};

// Statistics of a look-back window [L, C] or batch [B, L, C] over the time axis.
RevinState revin_statistics(const Tensor& x, double eps);

// x_norm = affine((x - mean) / stdev). The statistics are constants of the graph.
std::pair<Tensor, RevinState> revin_encode(const Tensor& x, double eps, const RevinAffine* affine = nullptr);

// Inverse of encode applied to a forecast [T, C] or [B, T, C].
Tensor revin_decode(const Tensor& y, const RevinState& state, const RevinAffine* affine = nullptr);

}  // namespace client
