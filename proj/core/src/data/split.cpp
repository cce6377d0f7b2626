#include "client/data/split.hpp"

#include <string>

#include "client/errors.hpp"

namespace client {

namespace {

constexpr std::size_t kHoursPerMonth = 30 * 24;

Matrix copy_rows(const Matrix& m, std::size_t begin, std::size_t end) {
  Matrix out;
  out.rows = end - begin;
  out.cols = m.cols;
  out.values.assign(m.values.begin() + static_cast<std::ptrdiff_t>(begin * m.cols),
                    m.values.begin() + static_cast<std::ptrdiff_t>(end * m.cols));
  return out;
}

}  // namespace

std::string_view to_string(SplitProfile p) {
  switch (p) {
    case SplitProfile::ett_hourly: return "ett_hourly";
    case SplitProfile::ett_minute: return "ett_minute";
    case SplitProfile::ratio: return "ratio";
  }
  return "?";
}

SplitProfile parse_split_profile(std::string_view s) {
  if (s == "ett_hourly") return SplitProfile::ett_hourly;
  if (s == "ett_minute") return SplitProfile::ett_minute;
  if (s == "ratio") return SplitProfile::ratio;
  throw ConfigError("unknown split profile '" + std::string(s) + "' (ett_hourly, ett_minute, ratio)");
}

SplitBorders split_borders(std::size_t rows, SplitProfile profile, std::size_t lookback, std::size_t horizon) {
  std::size_t train = 0, val = 0, test = 0;
  if (profile == SplitProfile::ratio) {
    train = rows * 7 / 10;
    test = rows * 2 / 10;
    val = rows - train - test;
  } else {
    const std::size_t month = profile == SplitProfile::ett_hourly ? kHoursPerMonth : 4 * kHoursPerMonth;
    train = 12 * month;
    val = 4 * month;
    test = 4 * month;
    if (rows < train + val + test) {
      throw DataError(std::string(to_string(profile)) + " split needs " + std::to_string(train + val + test) +
                      " rows, series has " + std::to_string(rows));
    }
  }
  SplitBorders b;
  b.train_end = train;
  b.val_begin = train >= lookback ? train - lookback : 0;
  b.val_end = train + val;
  b.test_begin = b.val_end >= lookback ? b.val_end - lookback : 0;
  b.test_end = train + val + test;

  const std::size_t need = lookback + horizon;
  const auto check = [&](const char* name, std::size_t n) {
    if (n < need) {
      throw DataError(std::string(name) + " split has " + std::to_string(n) + " rows, shorter than L+T = " +
                      std::to_string(need));
    }
  };
  check("train", b.train_rows());
  check("val", b.val_rows());
  check("test", b.test_rows());
  return b;
}

SeriesSplits chrono_split(const Matrix& values, SplitProfile profile, std::size_t lookback, std::size_t horizon) {
  const SplitBorders b = split_borders(values.rows, profile, lookback, horizon);
  return {copy_rows(values, b.train_begin, b.train_end), copy_rows(values, b.val_begin, b.val_end),
          copy_rows(values, b.test_begin, b.test_end)};
}

PreparedData prepare_dataset(const MultivariateSeries& series, SplitProfile profile, std::size_t lookback,
                             std::size_t horizon, const ZScoreScaler* scaler) {
  PreparedData d;
  d.borders = split_borders(series.length(), profile, lookback, horizon);
  d.scaler = scaler ? *scaler : ZScoreScaler::fit(series.values, d.borders.train_begin, d.borders.train_end);
  d.normalized = std::make_shared<const Matrix>(d.scaler.transform(series.values));
  d.train = WindowedDataset(d.normalized, d.borders.train_begin, d.borders.train_end, lookback, horizon);
  d.val = WindowedDataset(d.normalized, d.borders.val_begin, d.borders.val_end, lookback, horizon);
  d.test = WindowedDataset(d.normalized, d.borders.test_begin, d.borders.test_end, lookback, horizon);
  return d;
}

}  // namespace client
