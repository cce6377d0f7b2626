#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace client {

// Row-major rows x cols block of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

// A multivariate series as loaded from disk: N rows (time steps) of C variables.
struct MultivariateSeries {
  std::vector<std::string> names;
  std::vector<std::string> timestamp_text;  // empty when the file has no date column
  std::vector<std::int64_t> timestamps;     // seconds since the epoch, UTC
  Matrix values;
  std::vector<std::string> diagnostics;     // one entry per rejected row

  std::size_t length() const { return values.rows; }
  std::size_t variables() const { return values.cols; }
  bool has_timestamps() const { return !timestamps.empty(); }
};

// Parses CSV text: a header row, an optional leading column named "date"
// (case-insensitive) holding timestamps, and numeric columns after it.
// Rows containing non-finite values (nan, inf, empty, NA) are dropped and
// reported in diagnostics. Unparseable cells and ragged rows throw DataError
// citing the 1-based data row and column.
MultivariateSeries parse_csv(std::istream& in, std::string_view source = "<stream>");
MultivariateSeries load_csv(const std::filesystem::path& path);

void write_csv(const MultivariateSeries& series, std::ostream& out);
void write_csv(const MultivariateSeries& series, const std::filesystem::path& path);

// Accepts "YYYY-MM-DD[ HH:MM[:SS]]" with '-' or '/' separators.
std::int64_t parse_timestamp(std::string_view text);

}  // namespace client
