#pragma once

#include <vector>

#include "client/data/series.hpp"

namespace client {

// Per-variable z-score with population std, fitted on training rows only.
struct ZScoreScaler {
  std::vector<double> mean;
  std::vector<double> stdev;  // clamped below by eps

  static ZScoreScaler fit(const Matrix& values, std::size_t row_begin, std::size_t row_end, double eps = 1e-8);

  Matrix transform(const Matrix& values) const;
  Matrix inverse_transform(const Matrix& values) const;
  std::size_t variables() const { return mean.size(); }
  bool operator==(const ZScoreScaler&) const = default;
};

}  // namespace client
