#include "client/train/metrics.hpp"

#include <cmath>

#include "client/errors.hpp"

namespace client {

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("metric inputs differ in size: " + std::to_string(a) + " vs " + std::to_string(b));
  if (a == 0) throw DimensionError("metric inputs are empty");
}

void check_shapes(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionError("metric shape mismatch: " + shape_to_string(a.shape()) + " vs " + shape_to_string(b.shape()));
  }
}

}  // namespace

double mse(std::span<const double> pred, std::span<const double> target) {
  check_sizes(pred.size(), target.size());
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    s += d * d;
  }
  return s / static_cast<double>(pred.size());
}

double mae(std::span<const double> pred, std::span<const double> target) {
  check_sizes(pred.size(), target.size());
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) s += std::abs(pred[i] - target[i]);
  return s / static_cast<double>(pred.size());
}

double mse(const Tensor& pred, const Tensor& target) {
  check_shapes(pred, target);
  return mse(pred.data(), target.data());
}

double mae(const Tensor& pred, const Tensor& target) {
  check_shapes(pred, target);
  return mae(pred.data(), target.data());
}

}  // namespace client
