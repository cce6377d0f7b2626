#include "client/data/scaler.hpp"

#include <algorithm>
#include <cmath>

#include "client/errors.hpp"

namespace client {

ZScoreScaler ZScoreScaler::fit(const Matrix& values, std::size_t row_begin, std::size_t row_end, double eps) {
  if (row_end <= row_begin || row_end > values.rows) throw DataError("scaler: empty or out-of-range fit rows");
  const std::size_t c = values.cols;
  const auto n = static_cast<double>(row_end - row_begin);
  ZScoreScaler s;
  s.mean.assign(c, 0.0);
  s.stdev.assign(c, 0.0);
  for (std::size_t r = row_begin; r < row_end; ++r)
    for (std::size_t j = 0; j < c; ++j) s.mean[j] += values.at(r, j);
  for (auto& m : s.mean) m /= n;
  for (std::size_t r = row_begin; r < row_end; ++r)
    for (std::size_t j = 0; j < c; ++j) {
      const double d = values.at(r, j) - s.mean[j];
      s.stdev[j] += d * d;
    }
  for (auto& v : s.stdev) v = std::max(std::sqrt(v / n), eps);
  return s;
}

Matrix ZScoreScaler::transform(const Matrix& values) const {
  if (values.cols != variables()) throw DimensionError("scaler: variable count mismatch");
  Matrix out = values;
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t j = 0; j < out.cols; ++j) {
      double& v = out.values[r * out.cols + j];
      v = (v - mean[j]) / stdev[j];
    }
  return out;
}

Matrix ZScoreScaler::inverse_transform(const Matrix& values) const {
  if (values.cols != variables()) throw DimensionError("scaler: variable count mismatch");
  Matrix out = values;
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t j = 0; j < out.cols; ++j) {
      double& v = out.values[r * out.cols + j];
      v = v * stdev[j] + mean[j];
    }
  return out;
}

}  // namespace client
