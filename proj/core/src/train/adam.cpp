#include "client/train/adam.hpp"

#include <cmath>

#include "client/errors.hpp"

namespace client {

void adam_update(std::span<double> theta, std::span<const double> grad, AdamMoments& state, std::size_t t,
                 const AdamOptions& o) {
  if (t < 1) throw ContractError("adam step index must be >= 1");
  if (grad.size() != theta.size()) throw DimensionError("adam: gradient size does not match the parameter");
  if (state.m.empty()) {
    state.m.assign(theta.size(), 0.0);
    state.v.assign(theta.size(), 0.0);
  }
  if (state.m.size() != theta.size() || state.v.size() != theta.size()) {
    throw DimensionError("adam: moment size does not match the parameter");
  }
  const double c1 = 1.0 - std::pow(o.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(o.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double g = grad[i];
    state.m[i] = o.beta1 * state.m[i] + (1.0 - o.beta1) * g;
    state.v[i] = o.beta2 * state.v[i] + (1.0 - o.beta2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    theta[i] -= o.learning_rate * m_hat / (std::sqrt(v_hat) + o.eps);
  }
}

Adam::Adam(std::vector<NamedTensor> params, AdamOptions options)
    : params_(std::move(params)), state_(params_.size()), options_(options) {}

void Adam::step() {
  for (const auto& p : params_) {
    if (!p.tensor.has_grad()) continue;
    for (const double g : p.tensor.impl()->grad) {
      if (!std::isfinite(g)) throw NumericError("non-finite gradient in parameter " + p.name);
    }
  }
  ++t_;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Tensor t = params_[i].tensor;
    const std::vector<double> g = t.grad();
    adam_update(t.mutable_data(), g, state_[i], t_, options_);
  }
}

}  // namespace client
