#pragma once

#include <string_view>

#include "client/data/scaler.hpp"
#include "client/data/series.hpp"
#include "client/data/windows.hpp"

namespace client {

// ett_hourly / ett_minute use fixed 12/4/4-month borders; ratio is 0.7/0.1/0.2 by rows.
enum class SplitProfile { ett_hourly, ett_minute, ratio };

std::string_view to_string(SplitProfile p);
SplitProfile parse_split_profile(std::string_view s);

// Half-open row ranges into the full series. val and test start L rows early
// so their first window forecasts the first row after the preceding segment.
struct SplitBorders {
  std::size_t train_begin = 0, train_end = 0;
  std::size_t val_begin = 0, val_end = 0;
  std::size_t test_begin = 0, test_end = 0;

  std::size_t train_rows() const { return train_end - train_begin; }
  std::size_t val_rows() const { return val_end - val_begin; }
  std::size_t test_rows() const { return test_end - test_begin; }
};

// Throws DataError when any segment is shorter than L + T.
SplitBorders split_borders(std::size_t rows, SplitProfile profile, std::size_t lookback, std::size_t horizon);

struct SeriesSplits {
  Matrix train, val, test;
};
SeriesSplits chrono_split(const Matrix& values, SplitProfile profile, std::size_t lookback, std::size_t horizon);

// Scaler fitted on the training rows, the whole series transformed with it,
// and windows over each segment of the normalised matrix.
struct PreparedData {
  ZScoreScaler scaler;
  SplitBorders borders;
  std::shared_ptr<const Matrix> normalized;
  WindowedDataset train, val, test;
};

// With a scaler given (e.g. from a checkpoint) it is used instead of refitting.
PreparedData prepare_dataset(const MultivariateSeries& series, SplitProfile profile, std::size_t lookback,
                             std::size_t horizon, const ZScoreScaler* scaler = nullptr);

}  // namespace client
