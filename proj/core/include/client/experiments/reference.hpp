#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace client {

// Published results for the model, kept for annotation and tolerance checks.
// Values are test-set MSE/MAE on z-scored data.
struct ReferenceResult {
  std::string_view experiment;  // "main", "ablation", "lookback", "attention"
  std::string_view dataset;
  std::string_view variant;
  std::size_t lookback;
  std::size_t horizon;
  double mse;
  double mae;
};

struct ReferenceEfficiency {
  std::string_view dataset;
  double params_millions;
  double memory_mib;  // GPU memory while training; not measured here
  double seconds_per_iteration;
};

std::span<const ReferenceResult> reference_results();
std::span<const ReferenceEfficiency> reference_efficiency();

std::optional<ReferenceResult> find_reference(std::string_view experiment, std::string_view dataset,
                                              std::string_view variant, std::size_t lookback, std::size_t horizon);

}  // namespace client
