#pragma once

#include <span>

#include "client/tensor/tensor.hpp"

namespace client {

// Means over all elements. Throw DimensionError on a size or shape mismatch.
double mse(std::span<const double> pred, std::span<const double> target);
double mae(std::span<const double> pred, std::span<const double> target);
double mse(const Tensor& pred, const Tensor& target);
double mae(const Tensor& pred, const Tensor& target);

struct Metrics {
  double mse = 0.0;
  double mae = 0.0;
  bool operator==(const Metrics&) const = default;
};

}  // namespace client
