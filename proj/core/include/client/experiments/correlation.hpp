#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "client/data/series.hpp"

namespace client {

// simultaneous: variable i vs variable j over the same sub-series.
// lagged: variable i over a sub-series vs variable j over the following sub_len steps.
enum class CorrelationMode { simultaneous, lagged };

std::string_view to_string(CorrelationMode m);
CorrelationMode parse_correlation_mode(std::string_view s);

struct CorrelationOptions {
  std::size_t samples = 100;
  std::size_t sub_len = 96;
  double threshold = 0.8;
  CorrelationMode mode = CorrelationMode::simultaneous;
  std::uint64_t seed = 2024;
};

struct CorrelationResult {
  Matrix mean;    // C x C mean Pearson coefficient over the samples
  Matrix binary;  // 1 where mean > threshold, else 0
};

// Pearson correlation; 0 when either input has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

// Start positions are drawn uniformly with replacement from the seeded
// "correlation" stream. In simultaneous mode the diagonal is 1 for every
// sample, including zero-variance columns.
CorrelationResult correlation_analysis(const Matrix& values, const CorrelationOptions& options);

}  // namespace client
