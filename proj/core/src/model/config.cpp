#include "client/model/config.hpp"

#include <array>
#include <utility>

#include "client/errors.hpp"

namespace client {

void ForecastTask::validate() const {
  if (lookback < 1 || variables < 1 || horizon < 1) {
    throw ConfigError("forecast task needs L, C, T >= 1 (got L=" + std::to_string(lookback) +
                      ", C=" + std::to_string(variables) + ", T=" + std::to_string(horizon) + ")");
  }
}

std::size_t default_heads(std::size_t token_width) {
  for (std::size_t h = 8; h > 1; --h) {
    if (token_width % h == 0) return h;
  }
  return 1;
}

std::size_t ClientConfig::token_width() const { return input_embedding ? embed_dim : task.lookback; }

std::size_t ClientConfig::resolved_heads() const { return heads ? heads : default_heads(token_width()); }

void ClientConfig::validate() const {
  task.validate();
  if (layers < 1) throw ConfigError("layers must be positive");
  if (d_ff < 1) throw ConfigError("d_ff must be positive");
  if (input_embedding && embed_dim < 1) throw ConfigError("embed_dim must be positive when the embedding is on");
  if (!(revin_eps > 0.0)) throw ConfigError("revin_eps must be positive");
  if (!(layer_norm_eps > 0.0)) throw ConfigError("layer_norm_eps must be positive");
  const bool uses_attention = attention == AttentionKind::full || decoder_head;
  if (uses_attention && token_width() % resolved_heads() != 0) {
    throw ConfigError("heads (" + std::to_string(resolved_heads()) + ") must divide the token width (" +
                      std::to_string(token_width()) + ")");
  }
  if (revin_affine && !revin) throw ConfigError("revin_affine requires revin");
}

std::size_t parameter_count(const ClientConfig& cfg) {
  const std::size_t w = cfg.token_width();
  const std::size_t c = cfg.task.variables;
  const std::size_t l = cfg.task.lookback;
  const std::size_t t = cfg.task.horizon;
  const std::size_t f = cfg.d_ff;

  const std::size_t ffn = w * f + f + f * w + w;
  const std::size_t norm = 2 * w;
  std::size_t mixing = 0;
  std::size_t norms_per_layer = 2;
  switch (cfg.attention) {
    case AttentionKind::full: mixing = 4 * w * w; break;
    case AttentionKind::linear: mixing = c * c; break;
    case AttentionKind::mlp: mixing = 2 * c * c; break;
    case AttentionKind::none: norms_per_layer = 1; break;
  }
  std::size_t total = cfg.layers * (mixing + ffn + norms_per_layer * norm);

  if (cfg.input_embedding) total += l * w + w;
  if (cfg.decoder_head) total += c * w + 2 * (4 * w * w) + ffn + 3 * norm;
  total += w * t + t;  // projection head
  if (cfg.linear_branch) total += l * t + t + (cfg.blend == BlendMode::scalar ? 1 : c);
  if (cfg.revin && cfg.revin_affine) total += 2 * c;
  return total;
}

ClientConfig apply_variant(ClientConfig base, Variant variant) {
  switch (variant) {
    case Variant::client: break;
    case Variant::no_linear: base.linear_branch = false; break;
    case Variant::no_revin:
      base.revin = false;
      base.revin_affine = false;
      break;
    case Variant::embed: base.input_embedding = true; break;
    case Variant::decoder: base.decoder_head = true; break;
  }
  return base;
}

namespace {

constexpr std::array<std::pair<Variant, std::pair<std::string_view, std::string_view>>, 5> kVariants{{
    {Variant::client, {"Client", "client"}},
    {Variant::no_linear, {"Client-Linear", "no-linear"}},
    {Variant::no_revin, {"Client-ReVIN", "no-revin"}},
    {Variant::embed, {"Client+Embed", "embed"}},
    {Variant::decoder, {"Client+Decoder", "decoder"}},
}};

}  // namespace

std::string_view variant_label(Variant v) {
  for (const auto& [key, names] : kVariants)
    if (key == v) return names.first;
  return "?";
}

std::string_view variant_key(Variant v) {
  for (const auto& [key, names] : kVariants)
    if (key == v) return names.second;
  return "?";
}

Variant parse_variant(std::string_view s) {
  for (const auto& [key, names] : kVariants)
    if (s == names.second || s == names.first) return key;
  throw ConfigError("unknown variant '" + std::string(s) + "' (expected client, no-linear, no-revin, embed, decoder)");
}

std::string_view to_string(Activation a) { return a == Activation::gelu ? "gelu" : "relu"; }

std::string_view to_string(AttentionKind k) {
  switch (k) {
    case AttentionKind::full: return "full";
    case AttentionKind::linear: return "linear";
    case AttentionKind::mlp: return "mlp";
    case AttentionKind::none: return "none";
  }
  return "?";
}

std::string_view to_string(ScalingMode s) { return s == ScalingMode::sqrt_c ? "sqrt_C" : "sqrt_dk"; }
std::string_view to_string(BlendMode b) { return b == BlendMode::scalar ? "scalar" : "per_variable"; }

Activation parse_activation(std::string_view s) {
  if (s == "gelu") return Activation::gelu;
  if (s == "relu") return Activation::relu;
  throw ConfigError("unknown activation '" + std::string(s) + "'");
}

AttentionKind parse_attention_kind(std::string_view s) {
  for (auto k : {AttentionKind::full, AttentionKind::linear, AttentionKind::mlp, AttentionKind::none})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown attention kind '" + std::string(s) + "' (expected full, linear, mlp, none)");
}

ScalingMode parse_scaling_mode(std::string_view s) {
  if (s == "sqrt_C" || s == "sqrt_c") return ScalingMode::sqrt_c;
  if (s == "sqrt_dk") return ScalingMode::sqrt_dk;
  throw ConfigError("unknown scaling mode '" + std::string(s) + "'");
}

BlendMode parse_blend_mode(std::string_view s) {
  if (s == "scalar") return BlendMode::scalar;
  if (s == "per_variable") return BlendMode::per_variable;
  throw ConfigError("unknown blend mode '" + std::string(s) + "'");
}

}  // namespace client
