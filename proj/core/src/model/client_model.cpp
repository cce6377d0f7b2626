#include "client/model/client_model.hpp"

#include "client/errors.hpp"
#include "client/random.hpp"
#include "client/tensor/ops.hpp"

namespace client {

ClientModel::ClientModel(ClientConfig config, std::uint64_t seed) : config_(std::move(config)) {
  config_.validate();
  Rng rng(seed);
  const std::size_t w = config_.token_width();
  const std::size_t c = config_.task.variables;
  const std::size_t l = config_.task.lookback;
  const std::size_t t = config_.task.horizon;

  block_options_ = {config_.attention, config_.resolved_heads(), config_.scaling, config_.activation,
                    config_.layer_norm_eps};

  if (config_.revin && config_.revin_affine) {
    revin_affine_ = RevinAffine{store_.add("revin.scale", Tensor::filled({c}, 1.0)),
                                store_.add("revin.shift", Tensor::zeros({c}))};
  }
  if (config_.input_embedding) embedding_ = make_dense(store_, "embed", l, w, rng);

  for (std::size_t i = 0; i < config_.layers; ++i) {
    const std::string prefix = "layers." + std::to_string(i);
    EncoderLayer layer;
    switch (config_.attention) {
      case AttentionKind::full: layer.attention = make_attention(store_, prefix + ".attn", w, rng); break;
      case AttentionKind::linear:
        layer.mixing.first = store_.add(prefix + ".mix.first", uniform_init({c, c}, c, rng));
        break;
      case AttentionKind::mlp:
        layer.mixing.first = store_.add(prefix + ".mix.first", uniform_init({c, c}, c, rng));
        layer.mixing.second = store_.add(prefix + ".mix.second", uniform_init({c, c}, c, rng));
        break;
      case AttentionKind::none: break;
    }
    if (config_.attention != AttentionKind::none) layer.norm1 = make_layer_norm(store_, prefix + ".norm1", w);
    layer.ffn = make_feed_forward(store_, prefix + ".ffn", w, config_.d_ff, rng);
    layer.norm2 = make_layer_norm(store_, prefix + ".norm2", w);
    layers_.push_back(std::move(layer));
  }

  if (config_.decoder_head) {
    DecoderHead dec;
    dec.queries = store_.add("decoder.queries", uniform_init({c, w}, w, rng));
    dec.self_attention = make_attention(store_, "decoder.self_attn", w, rng);
    dec.norm1 = make_layer_norm(store_, "decoder.norm1", w);
    dec.cross_attention = make_attention(store_, "decoder.cross_attn", w, rng);
    dec.norm2 = make_layer_norm(store_, "decoder.norm2", w);
    dec.ffn = make_feed_forward(store_, "decoder.ffn", w, config_.d_ff, rng);
    dec.norm3 = make_layer_norm(store_, "decoder.norm3", w);
    decoder_ = std::move(dec);
  }

  head_ = make_dense(store_, "head", w, t, rng);

  if (config_.linear_branch) {
    linear_ = make_dense(store_, "linear", l, t, rng);
    const std::size_t n = config_.blend == BlendMode::scalar ? 1 : c;
    blend_ = store_.add("linear.w_lin", Tensor::filled({n}, config_.w_lin_init));
  }
}

Tensor ClientModel::forward(const Tensor& input, ForwardTrace* trace) const {
  const auto& task = config_.task;
  const bool batched = input.rank() == 3;
  if (input.rank() < 2 || input.dim(-2) != task.lookback || input.dim(-1) != task.variables) {
    throw DimensionError("model expects input [" + std::to_string(task.lookback) + "x" +
                         std::to_string(task.variables) + "] (optionally batched), got " +
                         shape_to_string(input.shape()));
  }
  const Tensor x = batched ? input : reshape(input, {1, task.lookback, task.variables});

  Tensor normed = x;
  std::optional<RevinState> state;
  const RevinAffine* affine = revin_affine_ ? &*revin_affine_ : nullptr;
  if (config_.revin) {
    auto [encoded, st] = revin_encode(x, config_.revin_eps, affine);
    normed = std::move(encoded);
    state = std::move(st);
  }

  // Variables become tokens: [B, L, C] -> [B, C, L].
  const Tensor tokens = transpose(normed);
  Tensor h = embedding_ ? apply_dense(tokens, *embedding_) : tokens;

  if (trace) trace->attention.clear();
  for (const auto& layer : layers_) {
    AttentionProbs probs;
    h = encoder_block(h, layer, block_options_, trace ? &probs : nullptr);
    if (trace && !probs.empty()) trace->attention.push_back(std::move(probs));
  }
  if (decoder_) h = decoder_head(h, *decoder_, block_options_);

  Tensor forecast = projection_head(h, head_);
  if (trace) trace->transformer_branch = forecast.detach();
  if (linear_) {
    const Tensor lin = linear_branch(normed, *linear_);
    if (trace) trace->linear_branch = lin.detach();
    forecast = add(forecast, config_.blend == BlendMode::scalar ? scale_by(lin, blend_) : mul_bias(lin, blend_));
  }
  if (state) {
    forecast = revin_decode(forecast, *state, affine);
    if (trace) trace->revin = state;
  }
  return batched ? forecast : reshape(forecast, {task.horizon, task.variables});
}

void ClientModel::copy_parameters_from(const ClientModel& other) {
  if (!(other.config_ == config_)) throw ContractError("copy_parameters_from: config mismatch");
  restore(other.snapshot());
}

std::vector<std::vector<double>> ClientModel::snapshot() const {
  std::vector<std::vector<double>> values;
  values.reserve(parameters().size());
  for (const auto& p : parameters()) values.emplace_back(p.tensor.data().begin(), p.tensor.data().end());
  return values;
}

void ClientModel::restore(const std::vector<std::vector<double>>& values) {
  const auto& params = parameters();
  if (values.size() != params.size()) throw ContractError("restore: parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor t = params[i].tensor;
    if (values[i].size() != t.numel()) throw ContractError("restore: size mismatch for " + params[i].name);
    std::copy(values[i].begin(), values[i].end(), t.mutable_data().begin());
  }
}

}  // namespace client
