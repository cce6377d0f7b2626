#include "client/data/mask.hpp"

#include <string>

#include "client/errors.hpp"

namespace client {

Tensor mask_series(const Tensor& h, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("mask fraction " + std::to_string(p) + " outside [0, 1]");
  Tensor out = h.detach();
  if (p == 0.0) return out;
  for (double& v : out.mutable_data())
    if (rng.bernoulli(p)) v = 0.0;
  return out;
}

Tensor mask_series(const Tensor& h, double p, std::uint64_t seed) {
  Rng rng(seed);
  return mask_series(h, p, rng);
}

}  // namespace client
