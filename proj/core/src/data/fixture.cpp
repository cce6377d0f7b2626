#include "client/data/fixture.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "client/errors.hpp"
#include "client/random.hpp"

namespace client {

namespace {

// Inverse of days_from_civil in csv.cpp.
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2));
}

std::string format_timestamp(std::int64_t seconds) {
  int y;
  unsigned mo, d;
  civil_from_days(seconds / 86400, y, mo, d);
  const auto rem = seconds % 86400;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", y, mo, d, static_cast<int>(rem / 3600),
                static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
  return buf;
}

}  // namespace

MultivariateSeries make_fixture(std::size_t rows, std::size_t variables, std::uint64_t seed) {
  if (rows < 2 || variables < 2) throw ContractError("fixture needs at least 2 rows and 2 variables");
  Rng rng(seed);
  MultivariateSeries s;
  for (std::size_t j = 0; j < variables; ++j) s.names.push_back("v" + std::to_string(j));
  s.values.rows = rows;
  s.values.cols = variables;
  s.values.values.resize(rows * variables);
  const std::int64_t start = parse_timestamp("2016-07-01 00:00:00");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto t = static_cast<double>(r);
    for (std::size_t j = 0; j + 1 < variables; ++j) {
      const auto phase = 0.9 * static_cast<double>(j);
      const double amp = 1.0 + 0.25 * static_cast<double>(j);
      s.values.values[r * variables + j] = amp * std::sin(two_pi * t / 24.0 + phase) +
                                           0.4 * std::cos(two_pi * t / 168.0 + 2.0 * phase) +
                                           2e-4 * t * static_cast<double>(j + 1) + 0.05 * rng.normal();
    }
    s.values.values[r * variables + variables - 1] = s.values.values[r * variables];
    const std::int64_t ts = start + static_cast<std::int64_t>(r) * 3600;
    s.timestamps.push_back(ts);
    s.timestamp_text.push_back(format_timestamp(ts));
  }
  return s;
}

}  // namespace client
