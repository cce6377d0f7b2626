#pragma once

#include <cstdint>

#include "client/model/client_model.hpp"

namespace client {

struct EfficiencyReport {
  std::size_t parameters = 0;         // closed form
  std::size_t enumerated = 0;         // elements actually allocated by the model
  std::size_t parameter_bytes = 0;    // parameters * 8
  std::size_t activation_elements = 0;
  // 8 * (4 * parameters + 2 * activation_elements): values, gradients and the
  // two Adam moments of every parameter, plus value and gradient of every
  // tensor in one training step's graph.
  std::size_t peak_bytes_estimate = 0;
  double seconds_per_iteration = 0.0;  // median over the timed iterations
  std::size_t iterations = 0;
  std::size_t batch = 0;
};

// Times forward + backward + Adam on random [batch, L, C] inputs after two
// warm-up iterations. iterations is raised to at least 20.
EfficiencyReport efficiency_report(const ClientConfig& config, std::size_t iterations = 20, std::size_t batch = 32,
                                   std::uint64_t seed = 2024);

}  // namespace client
