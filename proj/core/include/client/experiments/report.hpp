#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace client {

struct ReportRow {
  std::string experiment;
  std::string dataset;
  std::string variant;
  std::size_t lookback = 0;
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  double mse = 0.0;
  double mae = 0.0;
  double seconds = 0.0;
  std::size_t params = 0;
  std::string error;  // non-empty marks a failed row

  bool failed() const { return !error.empty(); }
  // Equality on everything except wall-clock seconds.
  bool same_result(const ReportRow& other) const;
};

// Rows in insertion order, written as CSV with the fixed header
// experiment,dataset,variant,L,T,seed,mse,mae,seconds,params
// and as JSON lines with the same fields (plus "error" on failed rows).
class ExperimentReport {
 public:
  void add(ReportRow row) { rows_.push_back(std::move(row)); }
  void append(const ExperimentReport& other);
  const std::vector<ReportRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  void write_csv(std::ostream& out) const;
  void write_jsonl(std::ostream& out) const;
  // Writes <stem>.csv and <stem>.jsonl.
  void save(const std::filesystem::path& stem) const;

  static const char* csv_header();

 private:
  std::vector<ReportRow> rows_;
};

// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace client
