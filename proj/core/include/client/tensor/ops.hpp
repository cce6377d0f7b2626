#pragma once

#include <span>
#include <vector>

#include "client/tensor/tensor.hpp"

namespace client {

// Matrix product over the last two axes.
//   [m,k]   x [k,n]   -> [m,n]
//   [B,m,k] x [k,n]   -> [B,m,n]   (right operand shared across the batch)
//   [m,k]   x [B,k,n] -> [B,m,n]   (left operand shared across the batch)
//   [B,m,k] x [B,k,n] -> [B,m,n]
// Backward: dA = dC * B^T, dB = A^T * dC, summed over the batch for a shared operand.
Tensor matmul(const Tensor& a, const Tensor& b);

// Swaps the last two axes ("Permute(1,0)" per batch item). Materialises.
Tensor transpose(const Tensor& x);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor mul_scalar(const Tensor& x, double s);
Tensor add_scalar(const Tensor& x, double s);
// Multiplies every element by a learnable one-element tensor.
Tensor scale_by(const Tensor& x, const Tensor& s);
// x + v and x * v with v broadcast along the last axis (v has x.dim(-1) elements).
Tensor add_bias(const Tensor& x, const Tensor& v);
Tensor mul_bias(const Tensor& x, const Tensor& v);
// Elementwise 1 / x.
Tensor reciprocal(const Tensor& x);
// Repeats a rank-2 tensor along a new leading batch axis.
Tensor broadcast_batch(const Tensor& x, std::size_t batch);

// Per (batch item, column) affine map with constant coefficients:
// out[b,r,c] = x[b,r,c] * scale[b*C+c] + shift[b*C+c]. Rank-2 input is one batch item.
Tensor column_affine(const Tensor& x, std::span<const double> scale, std::span<const double> shift);

// Softmax over the last axis, computed with max subtraction.
Tensor softmax_rows(const Tensor& x);

// Normalises each row over the last axis to zero mean and unit population
// variance, then applies gamma/beta.
Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, double eps);

Tensor relu(const Tensor& x);
// tanh approximation of GELU.
Tensor gelu(const Tensor& x);

// Columns [offset, offset+length) of the last axis.
Tensor slice_last(const Tensor& x, std::size_t offset, std::size_t length);
Tensor concat_last(const std::vector<Tensor>& parts);

Tensor sum_all(const Tensor& x);
// mean((a - b)^2) over all elements, as a one-element tensor.
Tensor mse_reduce(const Tensor& a, const Tensor& b);

// Copy of x viewed with a different shape of equal element count.
Tensor reshape(const Tensor& x, Shape shape);

}  // namespace client
