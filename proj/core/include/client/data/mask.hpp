#pragma once

#include <cstdint>

#include "client/random.hpp"
#include "client/tensor/tensor.hpp"

namespace client {

// Zeroes each element independently with probability p, visiting elements in
// row-major order. The result is a constant (no gradient). p must be in [0, 1].
Tensor mask_series(const Tensor& h, double p, Rng& rng);
Tensor mask_series(const Tensor& h, double p, std::uint64_t seed);

}  // namespace client
