#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "client/model/config.hpp"
#include "client/random.hpp"
#include "client/tensor/grad_check.hpp"
#include "client/tensor/tensor.hpp"

namespace client {

// Ordered, named collection of learnable tensors. Names are stable and used
// as checkpoint record keys.
class ParameterStore {
 public:
  Tensor add(std::string name, Tensor value);
  Tensor get(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::vector<NamedTensor>& entries() const { return entries_; }
  std::size_t element_count() const;
  void zero_grad();

 private:
  std::vector<NamedTensor> entries_;
};

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)), the init used for every dense map.
Tensor uniform_init(Shape shape, std::size_t fan_in, Rng& rng);

struct Dense {
  Tensor weight;  // [in, out]
  Tensor bias;    // [out]
};

struct AttentionWeights {
  Tensor wq, wk, wv, wo;  // each [w, w]
};

struct MixingWeights {
  Tensor first;   // [C, C]
  Tensor second;  // [C, C], mlp only
};

struct LayerNormParams {
  Tensor gamma, beta;
};

struct FeedForward {
  Dense in;   // [w, d_ff]
  Dense out;  // [d_ff, w]
};

struct EncoderLayer {
  AttentionWeights attention;  // full
  MixingWeights mixing;        // linear / mlp
  LayerNormParams norm1;       // after the mixing sublayer
  LayerNormParams norm2;       // after the FFN sublayer
  FeedForward ffn;
};

struct DecoderHead {
  Tensor queries;  // [C, w] learned query bank
  AttentionWeights self_attention;
  AttentionWeights cross_attention;
  LayerNormParams norm1, norm2, norm3;
  FeedForward ffn;
};

struct BlockOptions {
  AttentionKind kind = AttentionKind::full;
  std::size_t heads = 1;
  ScalingMode scaling = ScalingMode::sqrt_c;
  Activation activation = Activation::gelu;
  double norm_eps = 1e-5;
};

// Post-softmax attention weights, one [B, Cq, Ck] tensor per head.
using AttentionProbs = std::vector<Tensor>;

Dense make_dense(ParameterStore& store, const std::string& name, std::size_t in, std::size_t out, Rng& rng);
AttentionWeights make_attention(ParameterStore& store, const std::string& name, std::size_t width, Rng& rng);
LayerNormParams make_layer_norm(ParameterStore& store, const std::string& name, std::size_t width);
FeedForward make_feed_forward(ParameterStore& store, const std::string& name, std::size_t width,
                              std::size_t hidden, Rng& rng);

Tensor apply_dense(const Tensor& x, const Dense& d);
Tensor activate(const Tensor& x, Activation a);
Tensor feed_forward(const Tensor& h, const FeedForward& ffn, Activation a);

// Scaled dot-product attention with the query rows taken from query_src and
// key/value rows from kv_src, split into `heads` column slices.
Tensor multi_head_attention(const Tensor& query_src, const Tensor& kv_src, const AttentionWeights& w,
                            std::size_t heads, ScalingMode scaling, AttentionProbs* probs = nullptr);

// Attention among variable tokens: h is [C, w] or [B, C, w], one row per variable.
// No positional information is added anywhere.
Tensor cross_variable_attention(const Tensor& h, const AttentionWeights& w, std::size_t heads,
                                ScalingMode scaling, AttentionProbs* probs = nullptr);

// Variable-axis mixing for the non-attention kinds: M h, or M2 act(M1 h).
Tensor variable_mixing(const Tensor& h, const MixingWeights& m, AttentionKind kind, Activation a);

// LayerNorm(h + Mix(h)) followed by LayerNorm(h + FFN(h)), post-norm as in the
// reference encoder. With kind == none only the FFN sublayer remains.
Tensor encoder_block(const Tensor& h, const EncoderLayer& layer, const BlockOptions& options,
                     AttentionProbs* probs = nullptr);

// (x_enc W + b) with the last two axes swapped: [.., C, w] -> [.., T, C].
Tensor projection_head(const Tensor& x_enc, const Dense& proj);

// Channel-independent L -> T affine map shared by all variables: [.., L, C] -> [.., T, C].
Tensor linear_branch(const Tensor& h_norm, const Dense& linear);

// Decoder alternative to the projection head: self-attention over a learned
// query bank, cross-attention to the encoder output, FFN; returns [B, C, w].
Tensor decoder_head(const Tensor& x_enc, const DecoderHead& dec, const BlockOptions& options);

}  // namespace client
