#include "client/model/layers.hpp"

#include <cmath>

#include "client/errors.hpp"
#include "client/tensor/ops.hpp"

namespace client {

Tensor ParameterStore::add(std::string name, Tensor value) {
  if (contains(name)) throw ContractError("duplicate parameter name " + name);
  value.set_requires_grad(true);
  entries_.push_back({std::move(name), value});
  return value;
}

Tensor ParameterStore::get(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e.tensor;
  throw ContractError("no parameter named " + std::string(name));
}

bool ParameterStore::contains(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

std::size_t ParameterStore::element_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.tensor.numel();
  return n;
}

void ParameterStore::zero_grad() {
  for (auto& e : entries_) e.tensor.zero_grad();
}

Tensor uniform_init(Shape shape, std::size_t fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Tensor t = Tensor::zeros(std::move(shape));
  for (double& v : t.mutable_data()) v = rng.uniform(-bound, bound);
  return t;
}

Dense make_dense(ParameterStore& store, const std::string& name, std::size_t in, std::size_t out, Rng& rng) {
  Dense d;
  d.weight = store.add(name + ".weight", uniform_init({in, out}, in, rng));
  d.bias = store.add(name + ".bias", uniform_init({out}, in, rng));
  return d;
}

AttentionWeights make_attention(ParameterStore& store, const std::string& name, std::size_t width, Rng& rng) {
  AttentionWeights w;
  w.wq = store.add(name + ".wq", uniform_init({width, width}, width, rng));
  w.wk = store.add(name + ".wk", uniform_init({width, width}, width, rng));
  w.wv = store.add(name + ".wv", uniform_init({width, width}, width, rng));
  w.wo = store.add(name + ".wo", uniform_init({width, width}, width, rng));
  return w;
}

LayerNormParams make_layer_norm(ParameterStore& store, const std::string& name, std::size_t width) {
  return {store.add(name + ".gamma", Tensor::filled({width}, 1.0)),
          store.add(name + ".beta", Tensor::zeros({width}))};
}

FeedForward make_feed_forward(ParameterStore& store, const std::string& name, std::size_t width,
                              std::size_t hidden, Rng& rng) {
  FeedForward f;
  f.in = make_dense(store, name + ".in", width, hidden, rng);
  f.out = make_dense(store, name + ".out", hidden, width, rng);
  return f;
}

Tensor apply_dense(const Tensor& x, const Dense& d) { return add_bias(matmul(x, d.weight), d.bias); }

Tensor activate(const Tensor& x, Activation a) { return a == Activation::gelu ? gelu(x) : relu(x); }

Tensor feed_forward(const Tensor& h, const FeedForward& ffn, Activation a) {
  return apply_dense(activate(apply_dense(h, ffn.in), a), ffn.out);
}

Tensor multi_head_attention(const Tensor& query_src, const Tensor& kv_src, const AttentionWeights& w,
                            std::size_t heads, ScalingMode scaling, AttentionProbs* probs) {
  const std::size_t width = query_src.dim(-1);
  if (heads == 0 || width % heads != 0) {
    throw ConfigError("attention: " + std::to_string(heads) + " heads do not divide width " + std::to_string(width));
  }
  const std::size_t head_width = width / heads;
  const std::size_t tokens = kv_src.dim(-2);
  const double denom = scaling == ScalingMode::sqrt_c ? std::sqrt(static_cast<double>(tokens))
                                                      : std::sqrt(static_cast<double>(head_width));

  const Tensor q = matmul(query_src, w.wq);
  const Tensor k = matmul(kv_src, w.wk);
  const Tensor v = matmul(kv_src, w.wv);
  std::vector<Tensor> outputs;
  outputs.reserve(heads);
  for (std::size_t h = 0; h < heads; ++h) {
    const Tensor qh = heads == 1 ? q : slice_last(q, h * head_width, head_width);
    const Tensor kh = heads == 1 ? k : slice_last(k, h * head_width, head_width);
    const Tensor vh = heads == 1 ? v : slice_last(v, h * head_width, head_width);
    const Tensor scores = mul_scalar(matmul(qh, transpose(kh)), 1.0 / denom);
    const Tensor p = softmax_rows(scores);
    if (probs) probs->push_back(p.detach());
    outputs.push_back(matmul(p, vh));
  }
  const Tensor merged = heads == 1 ? outputs.front() : concat_last(outputs);
  return matmul(merged, w.wo);
}

Tensor cross_variable_attention(const Tensor& h, const AttentionWeights& w, std::size_t heads,
                                ScalingMode scaling, AttentionProbs* probs) {
  return multi_head_attention(h, h, w, heads, scaling, probs);
}

Tensor variable_mixing(const Tensor& h, const MixingWeights& m, AttentionKind kind, Activation a) {
  switch (kind) {
    case AttentionKind::linear: return matmul(m.first, h);
    case AttentionKind::mlp: return matmul(m.second, activate(matmul(m.first, h), a));
    default: throw ContractError("variable_mixing called for attention kind " + std::string(to_string(kind)));
  }
}

Tensor encoder_block(const Tensor& h, const EncoderLayer& layer, const BlockOptions& opt, AttentionProbs* probs) {
  Tensor x = h;
  if (opt.kind != AttentionKind::none) {
    const Tensor mixed = opt.kind == AttentionKind::full
                             ? cross_variable_attention(x, layer.attention, opt.heads, opt.scaling, probs)
                             : variable_mixing(x, layer.mixing, opt.kind, opt.activation);
    x = layer_norm(add(x, mixed), layer.norm1.gamma, layer.norm1.beta, opt.norm_eps);
  }
  return layer_norm(add(x, feed_forward(x, layer.ffn, opt.activation)), layer.norm2.gamma, layer.norm2.beta,
                    opt.norm_eps);
}

Tensor projection_head(const Tensor& x_enc, const Dense& proj) {
  if (x_enc.dim(-1) != proj.weight.dim(0)) {
    throw DimensionError("projection head expects width " + std::to_string(proj.weight.dim(0)) + ", got " +
                         shape_to_string(x_enc.shape()));
  }
  return transpose(apply_dense(x_enc, proj));
}

Tensor linear_branch(const Tensor& h_norm, const Dense& linear) {
  if (h_norm.dim(-2) != linear.weight.dim(0)) {
    throw DimensionError("linear branch expects " + std::to_string(linear.weight.dim(0)) + " time steps, got " +
                         shape_to_string(h_norm.shape()));
  }
  return transpose(apply_dense(transpose(h_norm), linear));
}

Tensor decoder_head(const Tensor& x_enc, const DecoderHead& dec, const BlockOptions& opt) {
  Tensor q = x_enc.rank() == 3 ? broadcast_batch(dec.queries, x_enc.dim(0)) : dec.queries;
  q = layer_norm(add(q, multi_head_attention(q, q, dec.self_attention, opt.heads, opt.scaling)), dec.norm1.gamma,
                 dec.norm1.beta, opt.norm_eps);
  q = layer_norm(add(q, multi_head_attention(q, x_enc, dec.cross_attention, opt.heads, opt.scaling)),
                 dec.norm2.gamma, dec.norm2.beta, opt.norm_eps);
  return layer_norm(add(q, feed_forward(q, dec.ffn, opt.activation)), dec.norm3.gamma, dec.norm3.beta,
                    opt.norm_eps);
}

}  // namespace client
