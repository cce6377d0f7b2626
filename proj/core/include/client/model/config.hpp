#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace client {

// Forecasting problem: L look-back steps of C variables to T future steps.
struct ForecastTask {
  std::size_t lookback = 96;   // L
  std::size_t variables = 7;   // C
  std::size_t horizon = 96;    // T

  void validate() const;
  bool operator==(const ForecastTask&) const = default;
};

enum class Activation { gelu, relu };

// What mixes information across the variable axis inside an encoder block.
//   full   - multi-head cross-variable attention
//   linear - learnable C x C matrix applied across variables
//   mlp    - two C x C mixing matrices with the activation in between
//   none   - sublayer removed; blocks are FFN only
enum class AttentionKind { full, linear, mlp, none };

// Attention score denominator: sqrt(C) (number of variables) or sqrt(head width).
enum class ScalingMode { sqrt_c, sqrt_dk };

// Linear-branch blend weight: one learnable scalar, or one per variable.
enum class BlendMode { scalar, per_variable };

enum class Variant { client, no_linear, no_revin, embed, decoder };

struct ClientConfig {
  ForecastTask task;
  std::size_t layers = 2;
  std::size_t d_ff = 32;
  std::size_t heads = 0;  // 0 selects 8, or the largest divisor of the token width below 8
  Activation activation = Activation::gelu;
  AttentionKind attention = AttentionKind::full;
  ScalingMode scaling = ScalingMode::sqrt_c;
  bool linear_branch = true;
  BlendMode blend = BlendMode::scalar;
  double w_lin_init = 0.75;
  bool revin = true;
  bool revin_affine = false;
  double revin_eps = 1e-5;
  bool input_embedding = false;
  std::size_t embed_dim = 64;
  bool decoder_head = false;
  double layer_norm_eps = 1e-5;

  // Width of one variable token: L, or embed_dim when the embedding is on.
  std::size_t token_width() const;
  std::size_t resolved_heads() const;
  void validate() const;
  bool operator==(const ClientConfig&) const = default;
};

std::size_t default_heads(std::size_t token_width);

// Closed-form learnable parameter count for a configuration.
std::size_t parameter_count(const ClientConfig& config);

ClientConfig apply_variant(ClientConfig base, Variant variant);
// Table-style display name, e.g. "Client-ReVIN".
std::string_view variant_label(Variant variant);
// Command-line key, e.g. "no-revin".
std::string_view variant_key(Variant variant);
Variant parse_variant(std::string_view key);

std::string_view to_string(Activation a);
std::string_view to_string(AttentionKind k);
std::string_view to_string(ScalingMode s);
std::string_view to_string(BlendMode b);
Activation parse_activation(std::string_view s);
AttentionKind parse_attention_kind(std::string_view s);
ScalingMode parse_scaling_mode(std::string_view s);
BlendMode parse_blend_mode(std::string_view s);

}  // namespace client
