#include "client/experiments/efficiency.hpp"

#include <algorithm>
#include <chrono>

#include "client/random.hpp"
#include "client/tensor/ops.hpp"
#include "client/train/adam.hpp"

namespace client {

EfficiencyReport efficiency_report(const ClientConfig& config, std::size_t iterations, std::size_t batch,
                                   std::uint64_t seed) {
  iterations = std::max<std::size_t>(iterations, 20);
  ClientModel model(config, derive_seed(seed, "init"));
  Adam adam(model.parameters(), AdamOptions{});
  Rng rng(derive_seed(seed, "bench"));
  const auto& task = config.task;
  auto random_tensor = [&](Shape shape) {
    Tensor t = Tensor::zeros(std::move(shape));
    for (double& v : t.mutable_data()) v = rng.normal();
    return t;
  };
  const Tensor x = random_tensor({batch, task.lookback, task.variables});
  const Tensor y = random_tensor({batch, task.horizon, task.variables});

  EfficiencyReport r;
  r.parameters = parameter_count(config);
  r.enumerated = model.parameter_count();
  r.parameter_bytes = r.parameters * sizeof(double);
  r.iterations = iterations;
  r.batch = batch;

  std::vector<double> times;
  for (std::size_t i = 0; i < iterations + 2; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    model.zero_grad();
    const Tensor loss = mse_reduce(model.forward(x), y);
    if (i == 0) r.activation_elements = graph_element_count(loss);
    backward(loss);
    adam.step();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (i >= 2) times.push_back(dt);
  }
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  r.seconds_per_iteration = n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
  r.peak_bytes_estimate = sizeof(double) * (4 * r.parameters + 2 * r.activation_elements);
  return r;
}

}  // namespace client
