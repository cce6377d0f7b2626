#include "client/tensor/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "client/errors.hpp"
#include "client/tensor/parallel.hpp"

namespace client {

namespace {

using detail::TensorImpl;

constexpr std::size_t kRowChunk = 16;

// C[m x n] += A[m x k] * B[k x n]
void gemm_nn(const double* A, const double* B, double* C, std::size_t m, std::size_t k, std::size_t n) {
  parallel_for(m, kRowChunk, [=](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double* c = C + i * n;
      const double* a = A + i * k;
      for (std::size_t p = 0; p < k; ++p) {
        const double av = a[p];
        if (av == 0.0) continue;
        const double* b = B + p * n;
        for (std::size_t j = 0; j < n; ++j) c[j] += av * b[j];
      }
    }
  });
}

// C[m x n] += A[m x k] * B[n x k]^T
void gemm_nt(const double* A, const double* B, double* C, std::size_t m, std::size_t k, std::size_t n) {
  parallel_for(m, kRowChunk, [=](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* a = A + i * k;
      double* c = C + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double* b = B + j * k;
        double s = 0.0;
        for (std::size_t p = 0; p < k; ++p) s += a[p] * b[p];
        c[j] += s;
      }
    }
  });
}

// C[m x n] += A[k x m]^T * B[k x n]
void gemm_tn(const double* A, const double* B, double* C, std::size_t m, std::size_t k, std::size_t n) {
  parallel_for(m, kRowChunk, [=](std::size_t begin, std::size_t end) {
    for (std::size_t p = 0; p < k; ++p) {
      const double* b = B + p * n;
      for (std::size_t i = begin; i < end; ++i) {
        const double av = A[p * m + i];
        if (av == 0.0) continue;
        double* c = C + i * n;
        for (std::size_t j = 0; j < n; ++j) c[j] += av * b[j];
      }
    }
  });
}

bool tracks(const Tensor& t) { return grad_enabled() && t.requires_grad(); }

// Builds the output tensor and, when any input requires gradient, attaches
// the backward closure.
Tensor record(Shape shape, std::vector<double> data, std::initializer_list<const Tensor*> inputs,
              const char* op, std::function<void(TensorImpl&)> bw) {
  Tensor out = Tensor::from(std::move(shape), std::move(data));
  bool needs = false;
  for (const auto* t : inputs) needs = needs || tracks(*t);
  if (!needs) return out;
  auto node = std::make_unique<detail::Node>();
  node->op = op;
  for (const auto* t : inputs) node->parents.push_back(t->impl_ptr());
  node->backward = std::move(bw);
  out.impl()->requires_grad = true;
  out.impl()->node = std::move(node);
  return out;
}

// Gradient buffer of the i-th parent, or nullptr when it is a constant.
double* parent_grad(TensorImpl& out, std::size_t i) {
  TensorImpl& p = *out.node->parents[i];
  if (!p.requires_grad) return nullptr;
  return p.grad_buffer().data();
}

const double* parent_data(TensorImpl& out, std::size_t i) { return out.node->parents[i]->data.data(); }

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) + " vs " +
                         shape_to_string(b.shape()));
  }
}

std::size_t rows_of(const Tensor& x) { return x.numel() / x.dim(-1); }

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  const auto mismatch = [&] {
    return DimensionError("matmul: incompatible shapes " + shape_to_string(a.shape()) + " and " +
                          shape_to_string(b.shape()));
  };
  if (a.rank() < 2 || b.rank() < 2) throw mismatch();
  const std::size_t m = a.dim(-2), k = a.dim(-1), n = b.dim(-1);
  if (b.dim(-2) != k) throw mismatch();
  const bool a_batched = a.rank() == 3, b_batched = b.rank() == 3;
  const std::size_t batch = a_batched ? a.dim(0) : (b_batched ? b.dim(0) : 1);
  if (a_batched && b_batched && b.dim(0) != batch) throw mismatch();

  Shape out_shape = (a_batched || b_batched) ? Shape{batch, m, n} : Shape{m, n};
  std::vector<double> out(batch * m * n, 0.0);
  const double* A = a.data().data();
  const double* B = b.data().data();

  if (!b_batched) {
    // Fold the batch into the row dimension.
    gemm_nn(A, B, out.data(), batch * m, k, n);
  } else {
    for (std::size_t t = 0; t < batch; ++t) {
      gemm_nn(A + (a_batched ? t * m * k : 0), B + t * k * n, out.data() + t * m * n, m, k, n);
    }
  }

  return record(std::move(out_shape), std::move(out), {&a, &b}, "matmul",
                [batch, m, k, n, a_batched, b_batched](TensorImpl& o) {
                  const double* dC = o.grad.data();
                  const double* A = parent_data(o, 0);
                  const double* B = parent_data(o, 1);
                  double* dA = parent_grad(o, 0);
                  double* dB = parent_grad(o, 1);
                  if (!b_batched) {
                    if (dA) gemm_nt(dC, B, dA, batch * m, n, k);
                    if (dB) gemm_tn(A, dC, dB, k, batch * m, n);
                    return;
                  }
                  for (std::size_t t = 0; t < batch; ++t) {
                    const double* dCt = dC + t * m * n;
                    const std::size_t a_off = a_batched ? t * m * k : 0;
                    if (dA) gemm_nt(dCt, B + t * k * n, dA + a_off, m, n, k);
                    if (dB) gemm_tn(A + a_off, dCt, dB + t * k * n, k, m, n);
                  }
                });
}

Tensor transpose(const Tensor& x) {
  if (x.rank() < 2) throw DimensionError("transpose needs rank 2 or 3, got " + shape_to_string(x.shape()));
  const std::size_t batch = x.rank() == 3 ? x.dim(0) : 1;
  const std::size_t r = x.dim(-2), c = x.dim(-1);
  std::vector<double> out(x.numel());
  const double* in = x.data().data();
  for (std::size_t t = 0; t < batch; ++t) {
    const double* src = in + t * r * c;
    double* dst = out.data() + t * r * c;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) dst[j * r + i] = src[i * c + j];
  }
  Shape shape = x.shape();
  std::swap(shape[shape.size() - 1], shape[shape.size() - 2]);
  return record(std::move(shape), std::move(out), {&x}, "transpose", [batch, r, c](TensorImpl& o) {
    double* dx = parent_grad(o, 0);
    if (!dx) return;
    for (std::size_t t = 0; t < batch; ++t) {
      const double* g = o.grad.data() + t * r * c;
      double* d = dx + t * r * c;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) d[i * c + j] += g[j * r + i];
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] + b.data()[i];
  return record(a.shape(), std::move(out), {&a, &b}, "add", [](TensorImpl& o) {
    for (std::size_t p = 0; p < 2; ++p) {
      if (double* d = parent_grad(o, p))
        for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] - b.data()[i];
  return record(a.shape(), std::move(out), {&a, &b}, "sub", [](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i];
    if (double* d = parent_grad(o, 1))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] -= o.grad[i];
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] * b.data()[i];
  return record(a.shape(), std::move(out), {&a, &b}, "mul", [](TensorImpl& o) {
    const double* A = parent_data(o, 0);
    const double* B = parent_data(o, 1);
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i] * B[i];
    if (double* d = parent_grad(o, 1))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i] * A[i];
  });
}

Tensor mul_scalar(const Tensor& x, double s) {
  std::vector<double> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.data()[i] * s;
  return record(x.shape(), std::move(out), {&x}, "mul_scalar", [s](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i] * s;
  });
}

Tensor add_scalar(const Tensor& x, double s) {
  std::vector<double> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.data()[i] + s;
  return record(x.shape(), std::move(out), {&x}, "add_scalar", [](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i];
  });
}

Tensor scale_by(const Tensor& x, const Tensor& s) {
  if (s.numel() != 1) throw DimensionError("scale_by expects a one-element scale, got " + shape_to_string(s.shape()));
  const double sv = s.data()[0];
  std::vector<double> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.data()[i] * sv;
  return record(x.shape(), std::move(out), {&x, &s}, "scale_by", [](TensorImpl& o) {
    const double* X = parent_data(o, 0);
    const double sv = parent_data(o, 1)[0];
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i] * sv;
    if (double* d = parent_grad(o, 1)) {
      double acc = 0.0;
      for (std::size_t i = 0; i < o.grad.size(); ++i) acc += o.grad[i] * X[i];
      d[0] += acc;
    }
  });
}

Tensor add_bias(const Tensor& x, const Tensor& v) {
  const std::size_t n = x.dim(-1);
  if (v.numel() != n) {
    throw DimensionError("add_bias: bias " + shape_to_string(v.shape()) + " does not match last axis of " +
                         shape_to_string(x.shape()));
  }
  std::vector<double> out(x.numel());
  const double* X = x.data().data();
  const double* V = v.data().data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = X[i] + V[i % n];
  return record(x.shape(), std::move(out), {&x, &v}, "add_bias", [n](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i];
    if (double* d = parent_grad(o, 1))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i % n] += o.grad[i];
  });
}

Tensor mul_bias(const Tensor& x, const Tensor& v) {
  const std::size_t n = x.dim(-1);
  if (v.numel() != n) {
    throw DimensionError("mul_bias: factor " + shape_to_string(v.shape()) + " does not match last axis of " +
                         shape_to_string(x.shape()));
  }
  std::vector<double> out(x.numel());
  const double* X = x.data().data();
  const double* V = v.data().data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = X[i] * V[i % n];
  return record(x.shape(), std::move(out), {&x, &v}, "mul_bias", [n](TensorImpl& o) {
    const double* X = parent_data(o, 0);
    const double* V = parent_data(o, 1);
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i] * V[i % n];
    if (double* d = parent_grad(o, 1))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i % n] += o.grad[i] * X[i];
  });
}

Tensor reciprocal(const Tensor& x) {
  std::vector<double> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / x.data()[i];
  std::vector<double> saved = out;
  return record(x.shape(), std::move(out), {&x}, "reciprocal", [saved = std::move(saved)](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] -= o.grad[i] * saved[i] * saved[i];
  });
}

Tensor broadcast_batch(const Tensor& x, std::size_t batch) {
  if (x.rank() != 2) throw DimensionError("broadcast_batch expects rank 2, got " + shape_to_string(x.shape()));
  const std::size_t n = x.numel();
  std::vector<double> out(batch * n);
  for (std::size_t t = 0; t < batch; ++t) std::copy(x.data().begin(), x.data().end(), out.begin() + t * n);
  return record({batch, x.dim(0), x.dim(1)}, std::move(out), {&x}, "broadcast_batch", [n, batch](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t t = 0; t < batch; ++t)
        for (std::size_t i = 0; i < n; ++i) d[i] += o.grad[t * n + i];
  });
}

Tensor column_affine(const Tensor& x, std::span<const double> scale, std::span<const double> shift) {
  if (x.rank() < 2) throw DimensionError("column_affine needs rank 2 or 3, got " + shape_to_string(x.shape()));
  const std::size_t batch = x.rank() == 3 ? x.dim(0) : 1;
  const std::size_t r = x.dim(-2), c = x.dim(-1);
  if (scale.size() != batch * c || shift.size() != batch * c) {
    throw DimensionError("column_affine: expected " + std::to_string(batch * c) + " coefficients for " +
                         shape_to_string(x.shape()));
  }
  std::vector<double> out(x.numel());
  const double* X = x.data().data();
  for (std::size_t t = 0; t < batch; ++t)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        const std::size_t idx = (t * r + i) * c + j;
        out[idx] = X[idx] * scale[t * c + j] + shift[t * c + j];
      }
  std::vector<double> saved(scale.begin(), scale.end());
  return record(x.shape(), std::move(out), {&x}, "column_affine",
                [batch, r, c, saved = std::move(saved)](TensorImpl& o) {
                  double* d = parent_grad(o, 0);
                  if (!d) return;
                  for (std::size_t t = 0; t < batch; ++t)
                    for (std::size_t i = 0; i < r; ++i)
                      for (std::size_t j = 0; j < c; ++j) {
                        const std::size_t idx = (t * r + i) * c + j;
                        d[idx] += o.grad[idx] * saved[t * c + j];
                      }
                });
}

Tensor softmax_rows(const Tensor& x) {
  const std::size_t c = x.dim(-1), rows = rows_of(x);
  std::vector<double> out(x.numel());
  const double* X = x.data().data();
  for (std::size_t i = 0; i < rows; ++i) {
    const double* in = X + i * c;
    double* y = out.data() + i * c;
    const double mx = *std::max_element(in, in + c);
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      y[j] = std::exp(in[j] - mx);
      sum += y[j];
    }
    for (std::size_t j = 0; j < c; ++j) y[j] /= sum;
  }
  std::vector<double> saved = out;
  return record(x.shape(), std::move(out), {&x}, "softmax_rows",
                [rows, c, saved = std::move(saved)](TensorImpl& o) {
                  double* d = parent_grad(o, 0);
                  if (!d) return;
                  for (std::size_t i = 0; i < rows; ++i) {
                    const double* y = saved.data() + i * c;
                    const double* g = o.grad.data() + i * c;
                    double dot = 0.0;
                    for (std::size_t j = 0; j < c; ++j) dot += g[j] * y[j];
                    for (std::size_t j = 0; j < c; ++j) d[i * c + j] += y[j] * (g[j] - dot);
                  }
                });
}

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, double eps) {
  const std::size_t d = x.dim(-1), rows = rows_of(x);
  if (gamma.numel() != d || beta.numel() != d) {
    throw DimensionError("layer_norm: gamma/beta " + shape_to_string(gamma.shape()) + "/" +
                         shape_to_string(beta.shape()) + " do not match width " + std::to_string(d));
  }
  if (!(eps > 0.0)) throw ContractError("layer_norm: eps must be positive");
  std::vector<double> out(x.numel()), xhat(x.numel()), rstd(rows);
  const double* X = x.data().data();
  const double* G = gamma.data().data();
  const double* Bt = beta.data().data();
  for (std::size_t i = 0; i < rows; ++i) {
    const double* in = X + i * d;
    double mean = 0.0;
    for (std::size_t j = 0; j < d; ++j) mean += in[j];
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (std::size_t j = 0; j < d; ++j) var += (in[j] - mean) * (in[j] - mean);
    var /= static_cast<double>(d);
    rstd[i] = 1.0 / std::sqrt(var + eps);
    for (std::size_t j = 0; j < d; ++j) {
      const double h = (in[j] - mean) * rstd[i];
      xhat[i * d + j] = h;
      out[i * d + j] = h * G[j] + Bt[j];
    }
  }
  return record(x.shape(), std::move(out), {&x, &gamma, &beta}, "layer_norm",
                [rows, d, xhat = std::move(xhat), rstd = std::move(rstd)](TensorImpl& o) {
                  const double* G = parent_data(o, 1);
                  double* dx = parent_grad(o, 0);
                  double* dg = parent_grad(o, 1);
                  double* db = parent_grad(o, 2);
                  const double inv_d = 1.0 / static_cast<double>(d);
                  for (std::size_t i = 0; i < rows; ++i) {
                    const double* g = o.grad.data() + i * d;
                    const double* h = xhat.data() + i * d;
                    if (dg)
                      for (std::size_t j = 0; j < d; ++j) dg[j] += g[j] * h[j];
                    if (db)
                      for (std::size_t j = 0; j < d; ++j) db[j] += g[j];
                    if (!dx) continue;
                    double mean_g = 0.0, mean_gh = 0.0;
                    for (std::size_t j = 0; j < d; ++j) {
                      const double gj = g[j] * G[j];
                      mean_g += gj;
                      mean_gh += gj * h[j];
                    }
                    mean_g *= inv_d;
                    mean_gh *= inv_d;
                    for (std::size_t j = 0; j < d; ++j) {
                      dx[i * d + j] += rstd[i] * (g[j] * G[j] - mean_g - h[j] * mean_gh);
                    }
                  }
                });
}

Tensor relu(const Tensor& x) {
  std::vector<double> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.data()[i] > 0.0 ? x.data()[i] : 0.0;
  return record(x.shape(), std::move(out), {&x}, "relu", [](TensorImpl& o) {
    const double* X = parent_data(o, 0);
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i)
        if (X[i] > 0.0) d[i] += o.grad[i];
  });
}

Tensor gelu(const Tensor& x) {
  constexpr double k = 0.7978845608028654;  // sqrt(2/pi)
  constexpr double c = 0.044715;
  std::vector<double> out(x.numel());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = x.data()[i];
    out[i] = 0.5 * v * (1.0 + std::tanh(k * (v + c * v * v * v)));
  }
  return record(x.shape(), std::move(out), {&x}, "gelu", [](TensorImpl& o) {
    const double* X = parent_data(o, 0);
    double* d = parent_grad(o, 0);
    if (!d) return;
    for (std::size_t i = 0; i < o.grad.size(); ++i) {
      const double v = X[i];
      const double u = k * (v + c * v * v * v);
      const double t = std::tanh(u);
      const double du = k * (1.0 + 3.0 * c * v * v);
      d[i] += o.grad[i] * (0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * du);
    }
  });
}

Tensor slice_last(const Tensor& x, std::size_t offset, std::size_t length) {
  const std::size_t n = x.dim(-1), rows = rows_of(x);
  if (length == 0 || offset + length > n) {
    throw DimensionError("slice_last: [" + std::to_string(offset) + ", " + std::to_string(offset + length) +
                         ") out of range for " + shape_to_string(x.shape()));
  }
  std::vector<double> out(rows * length);
  for (std::size_t i = 0; i < rows; ++i)
    std::copy_n(x.data().data() + i * n + offset, length, out.data() + i * length);
  Shape shape = x.shape();
  shape.back() = length;
  return record(std::move(shape), std::move(out), {&x}, "slice_last", [rows, n, offset, length](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < length; ++j) d[i * n + offset + j] += o.grad[i * length + j];
  });
}

Tensor concat_last(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw ContractError("concat_last: no inputs");
  Shape lead = parts[0].shape();
  lead.pop_back();
  std::size_t total = 0;
  std::vector<std::size_t> widths;
  for (const auto& p : parts) {
    Shape l = p.shape();
    l.pop_back();
    if (l != lead) throw DimensionError("concat_last: leading shapes differ: " + shape_to_string(p.shape()));
    widths.push_back(p.dim(-1));
    total += p.dim(-1);
  }
  const std::size_t rows = rows_of(parts[0]);
  std::vector<double> out(rows * total);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t i = 0; i < rows; ++i)
      std::copy_n(parts[k].data().data() + i * widths[k], widths[k], out.data() + i * total + offset);
    offset += widths[k];
  }
  Shape shape = lead;
  shape.push_back(total);

  Tensor result = Tensor::from(shape, std::move(out));
  bool needs = false;
  for (const auto& p : parts) needs = needs || tracks(p);
  if (!needs) return result;
  auto node = std::make_unique<detail::Node>();
  node->op = "concat_last";
  for (const auto& p : parts) node->parents.push_back(p.impl_ptr());
  node->backward = [rows, total, widths](TensorImpl& o) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < widths.size(); ++k) {
      if (double* d = parent_grad(o, k))
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < widths[k]; ++j) d[i * widths[k] + j] += o.grad[i * total + off + j];
      off += widths[k];
    }
  };
  result.impl()->requires_grad = true;
  result.impl()->node = std::move(node);
  return result;
}

Tensor sum_all(const Tensor& x) {
  double s = 0.0;
  for (const double v : x.data()) s += v;
  return record({1}, {s}, {&x}, "sum_all", [](TensorImpl& o) {
    if (double* d = parent_grad(o, 0)) {
      const std::size_t n = o.node->parents[0]->data.size();
      for (std::size_t i = 0; i < n; ++i) d[i] += o.grad[0];
    }
  });
}

Tensor mse_reduce(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mse_reduce");
  const std::size_t n = a.numel();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = a.data()[i] - b.data()[i];
    s += e * e;
  }
  return record({1}, {s / static_cast<double>(n)}, {&a, &b}, "mse_reduce", [n](TensorImpl& o) {
    const double* A = parent_data(o, 0);
    const double* B = parent_data(o, 1);
    const double scale = 2.0 * o.grad[0] / static_cast<double>(n);
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < n; ++i) d[i] += scale * (A[i] - B[i]);
    if (double* d = parent_grad(o, 1))
      for (std::size_t i = 0; i < n; ++i) d[i] -= scale * (A[i] - B[i]);
  });
}

Tensor reshape(const Tensor& x, Shape shape) {
  if (shape_numel(shape) != x.numel()) {
    throw DimensionError("reshape: cannot view " + shape_to_string(x.shape()) + " as " + shape_to_string(shape));
  }
  std::vector<double> out(x.data().begin(), x.data().end());
  return record(std::move(shape), std::move(out), {&x}, "reshape", [](TensorImpl& o) {
    if (double* d = parent_grad(o, 0))
      for (std::size_t i = 0; i < o.grad.size(); ++i) d[i] += o.grad[i];
  });
}

Tensor Tensor::reshape(Shape shape) const { return client::reshape(*this, std::move(shape)); }

}  // namespace client
