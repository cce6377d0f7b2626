#pragma once

#include <span>
#include <vector>

#include "client/tensor/grad_check.hpp"

namespace client {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamMoments {
  std::vector<double> m;
  std::vector<double> v;
};

// One bias-corrected Adam update of theta in place. t is the 1-based step.
void adam_update(std::span<double> theta, std::span<const double> grad, AdamMoments& state, std::size_t t,
                 const AdamOptions& options);

// Adam over a fixed parameter list, reading each parameter's accumulated gradient.
class Adam {
 public:
  Adam(std::vector<NamedTensor> params, AdamOptions options);

  // Throws NumericError naming the first parameter with a non-finite gradient;
  // no parameter is modified in that case.
  void step();
  std::size_t steps() const { return t_; }
  const AdamOptions& options() const { return options_; }

 private:
  std::vector<NamedTensor> params_;
  std::vector<AdamMoments> state_;
  AdamOptions options_;
  std::size_t t_ = 0;
};

}  // namespace client
