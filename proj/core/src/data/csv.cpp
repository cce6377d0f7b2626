#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "client/data/series.hpp"
#include "client/errors.hpp"

namespace client {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n\"");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_missing_marker(const std::string& s) {
  const std::string l = lower(s);
  return l.empty() || l == "na" || l == "nan" || l == "null";
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
  int parts[6] = {0, 0, 0, 0, 0, 0};
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size() && count < 6) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    int value = 0;
    const auto res = std::from_chars(text.data() + i, text.data() + text.size(), value);
    parts[count++] = value;
    i = static_cast<std::size_t>(res.ptr - text.data());
    if (i < text.size()) {
      const char sep = text[i];
      if (sep != '-' && sep != '/' && sep != ' ' && sep != ':' && sep != 'T') {
        throw DataError("unrecognised timestamp '" + std::string(text) + "'");
      }
    }
  }
  if (count < 3 || parts[1] < 1 || parts[1] > 12 || parts[2] < 1 || parts[2] > 31) {
    throw DataError("unrecognised timestamp '" + std::string(text) + "'");
  }
  const std::int64_t days = days_from_civil(parts[0], static_cast<unsigned>(parts[1]), static_cast<unsigned>(parts[2]));
  return days * 86400 + parts[3] * 3600 + parts[4] * 60 + parts[5];
}

MultivariateSeries parse_csv(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::string line;
  if (!std::getline(in, line)) throw DataError(src + ": empty file");
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
  const std::vector<std::string> header = split_fields(line);
  if (header.empty()) throw DataError(src + ": missing header");

  MultivariateSeries series;
  const bool has_date = lower(header[0]) == "date";
  const std::size_t first_value = has_date ? 1 : 0;
  series.names.assign(header.begin() + static_cast<std::ptrdiff_t>(first_value), header.end());
  const std::size_t c = series.names.size();
  if (c == 0) throw DataError(src + ": no value columns");
  series.values.cols = c;

  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++data_row;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataError(src + ": row " + std::to_string(data_row) + " has " + std::to_string(fields.size()) +
                      " fields, header has " + std::to_string(header.size()));
    }
    std::vector<double> row(c);
    bool finite = true;
    for (std::size_t j = 0; j < c; ++j) {
      const std::string& cell = fields[first_value + j];
      if (is_missing_marker(cell)) {
        finite = false;
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw DataError(src + ": unparseable value '" + cell + "' at row " + std::to_string(data_row) +
                        ", column " + std::to_string(first_value + j + 1));
      }
      if (!std::isfinite(v)) finite = false;
      row[j] = v;
    }
    if (!finite) {
      series.diagnostics.push_back("row " + std::to_string(data_row) + " rejected: non-finite value");
      continue;
    }
    if (has_date) {
      std::int64_t ts = 0;
      try {
        ts = parse_timestamp(fields[0]);
      } catch (const DataError&) {
        throw DataError(src + ": unparseable timestamp '" + fields[0] + "' at row " + std::to_string(data_row) +
                        ", column 1");
      }
      if (!series.timestamps.empty() && ts < series.timestamps.back()) {
        throw DataError(src + ": timestamps not monotone at row " + std::to_string(data_row));
      }
      series.timestamps.push_back(ts);
      series.timestamp_text.push_back(fields[0]);
    }
    series.values.values.insert(series.values.values.end(), row.begin(), row.end());
    ++series.values.rows;
  }
  if (series.values.rows < 2) throw DataError(src + ": need at least 2 finite rows, found " +
                                              std::to_string(series.values.rows));
  return series;
}

MultivariateSeries load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_csv(in, path.string());
}

void write_csv(const MultivariateSeries& series, std::ostream& out) {
  const bool dates = !series.timestamp_text.empty();
  if (dates) out << "date";
  for (std::size_t j = 0; j < series.names.size(); ++j) out << ((dates || j) ? "," : "") << series.names[j];
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t r = 0; r < series.length(); ++r) {
    if (dates) out << series.timestamp_text[r];
    for (std::size_t j = 0; j < series.variables(); ++j) out << ((dates || j) ? "," : "") << series.values.at(r, j);
    out << '\n';
  }
}

void write_csv(const MultivariateSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_csv(series, out);
}

}  // namespace client
