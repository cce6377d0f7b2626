#include "client/model/revin.hpp"

#include <algorithm>
#include <cmath>

#include "client/errors.hpp"
#include "client/tensor/ops.hpp"

namespace client {

namespace {

std::size_t batch_of(const Tensor& x) { return x.rank() == 3 ? x.dim(0) : 1; }

}  // namespace

RevinState revin_statistics(const Tensor& x, double eps) {
  if (x.rank() < 2) throw DimensionError("RevIN expects [L, C] or [B, L, C], got " + shape_to_string(x.shape()));
  RevinState st;
  st.batch = batch_of(x);
  st.variables = x.dim(-1);
  const std::size_t l = x.dim(-2), c = st.variables;
  st.mean.assign(st.batch * c, 0.0);
  st.stdev.assign(st.batch * c, 0.0);
  const double* X = x.data().data();
  for (std::size_t b = 0; b < st.batch; ++b) {
    for (std::size_t j = 0; j < c; ++j) {
      double mean = 0.0;
      for (std::size_t t = 0; t < l; ++t) mean += X[(b * l + t) * c + j];
      mean /= static_cast<double>(l);
      double var = 0.0;
      for (std::size_t t = 0; t < l; ++t) {
        const double d = X[(b * l + t) * c + j] - mean;
        var += d * d;
      }
      var /= static_cast<double>(l);
      st.mean[b * c + j] = mean;
      st.stdev[b * c + j] = std::max(std::sqrt(var), eps);
    }
  }
  return st;
}

std::pair<Tensor, RevinState> revin_encode(const Tensor& x, double eps, const RevinAffine* affine) {
  RevinState st = revin_statistics(x, eps);
  std::vector<double> scale(st.mean.size()), shift(st.mean.size());
  for (std::size_t i = 0; i < scale.size(); ++i) {
    scale[i] = 1.0 / st.stdev[i];
    shift[i] = -st.mean[i] / st.stdev[i];
  }
  Tensor out = column_affine(x, scale, shift);
  if (affine) out = add_bias(mul_bias(out, affine->scale), affine->shift);
  return {std::move(out), std::move(st)};
}

Tensor revin_decode(const Tensor& y, const RevinState& st, const RevinAffine* affine) {
  if (y.rank() < 2 || y.dim(-1) != st.variables || batch_of(y) != st.batch) {
    throw DimensionError("RevIN decode: forecast " + shape_to_string(y.shape()) + " does not match state with " +
                         std::to_string(st.batch) + " instance(s) of " + std::to_string(st.variables) +
                         " variables");
  }
  Tensor out = y;
  if (affine) {
    out = add_bias(out, mul_scalar(affine->shift, -1.0));
    out = mul_bias(out, reciprocal(affine->scale));
  }
  return column_affine(out, st.stdev, st.mean);
}

}  // namespace client
