#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "client/tensor/tensor.hpp"

namespace client {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct ParamGradError {
  std::string name;
  std::size_t checked = 0;       // coordinates compared
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;         // values at worst_index
  double numeric = 0.0;
};

struct GradReport {
  std::vector<ParamGradError> params;
  double tolerance = 0.0;
  bool passed = false;
  std::string diagnostic;  // set when the check could not run (non-finite f...)

  double max_rel_error() const;
  std::string summary() const;
};

struct GradCheckOptions {
  double step = 1e-6;
  double tolerance = 1e-4;
  // Parameters with more elements are checked on a deterministic subsample.
  std::size_t max_coords_per_param = 64;
  std::uint64_t seed = 0;
};

// |a - n| / max(|a|, |n|, 1e-8)
double gradient_relative_error(double analytic, double numeric);

// Compares reverse-mode gradients of the scalar objective with central
// differences (f(p + h) - f(p - h)) / 2h, coordinate by coordinate.
// objective() must rebuild the graph from the current parameter values each call.
GradReport grad_check(const std::function<Tensor()>& objective, const std::vector<NamedTensor>& params,
                      const GradCheckOptions& options = {});

}  // namespace client
