#include "client/experiments/correlation.hpp"

#include <cmath>
#include <string>

#include "client/errors.hpp"
#include "client/random.hpp"

namespace client {

std::string_view to_string(CorrelationMode m) { return m == CorrelationMode::simultaneous ? "simultaneous" : "lagged"; }

CorrelationMode parse_correlation_mode(std::string_view s) {
  if (s == "simultaneous") return CorrelationMode::simultaneous;
  if (s == "lagged") return CorrelationMode::lagged;
  throw ConfigError("unknown correlation mode '" + std::string(s) + "' (simultaneous, lagged)");
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw DimensionError("pearson: inputs must be non-empty and equal length");
  const auto n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

CorrelationResult correlation_analysis(const Matrix& values, const CorrelationOptions& o) {
  const bool lagged = o.mode == CorrelationMode::lagged;
  const std::size_t span_len = lagged ? 2 * o.sub_len : o.sub_len;
  if (o.sub_len < 2) throw ContractError("correlation sub-series length must be at least 2");
  if (o.samples < 1) throw ContractError("correlation needs at least one sample");
  if (values.rows < span_len) {
    throw DataError("correlation needs " + std::to_string(span_len) + " rows, series has " +
                    std::to_string(values.rows));
  }
  const std::size_t c = values.cols;
  Rng rng(derive_seed(o.seed, "correlation"));
  CorrelationResult result;
  result.mean = Matrix{c, c, std::vector<double>(c * c, 0.0)};

  // Column-major copy of one window: cols[j] holds sub_len values of variable j.
  std::vector<std::vector<double>> hist(c, std::vector<double>(o.sub_len));
  std::vector<std::vector<double>> fut(lagged ? c : 0, std::vector<double>(o.sub_len));
  for (std::size_t s = 0; s < o.samples; ++s) {
    const std::size_t start = rng.below(values.rows - span_len + 1);
    for (std::size_t t = 0; t < o.sub_len; ++t) {
      for (std::size_t j = 0; j < c; ++j) {
        hist[j][t] = values.at(start + t, j);
        if (lagged) fut[j][t] = values.at(start + o.sub_len + t, j);
      }
    }
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        if (lagged) {
          result.mean.values[i * c + j] += pearson(hist[i], fut[j]);
        } else if (i == j) {
          result.mean.values[i * c + j] += 1.0;
        } else if (j > i) {
          const double r = pearson(hist[i], hist[j]);
          result.mean.values[i * c + j] += r;
          result.mean.values[j * c + i] += r;
        }
      }
    }
  }
  result.binary = Matrix{c, c, std::vector<double>(c * c, 0.0)};
  for (std::size_t k = 0; k < c * c; ++k) {
    result.mean.values[k] /= static_cast<double>(o.samples);
    result.binary.values[k] = result.mean.values[k] > o.threshold ? 1.0 : 0.0;
  }
  return result;
}

}  // namespace client
