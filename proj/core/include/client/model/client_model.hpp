#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "client/model/config.hpp"
#include "client/model/layers.hpp"
#include "client/model/revin.hpp"

namespace client {

// Intermediate values captured by a traced forward pass.
struct ForwardTrace {
  // attention[layer][head] is [B, C, C]; empty for non-attention kinds.
  std::vector<AttentionProbs> attention;
  Tensor transformer_branch;  // projection-head output before blending, normalised scale
  Tensor linear_branch;       // linear-branch output before the blend weight
  std::optional<RevinState> revin;
};

// The forecasting model: RevIN encode, variables-as-tokens encoder stack,
// projection head, blended channel-independent linear branch, RevIN decode.
// Ablation and attention-replacement variants are selected through the config.
class ClientModel {
 public:
  ClientModel(ClientConfig config, std::uint64_t seed);
  // Copies would alias the parameter tensors.
  ClientModel(const ClientModel&) = delete;
  ClientModel& operator=(const ClientModel&) = delete;
  ClientModel(ClientModel&&) = default;
  ClientModel& operator=(ClientModel&&) = default;

  const ClientConfig& config() const { return config_; }

  // x: [L, C] -> [T, C], or [B, L, C] -> [B, T, C].
  Tensor forward(const Tensor& x, ForwardTrace* trace = nullptr) const;

  const std::vector<NamedTensor>& parameters() const { return store_.entries(); }
  Tensor parameter(std::string_view name) const { return store_.get(name); }
  bool has_parameter(std::string_view name) const { return store_.contains(name); }
  std::size_t parameter_count() const { return store_.element_count(); }
  void zero_grad() { store_.zero_grad(); }

  // Copies parameter values (not graph state) from a model of identical config.
  void copy_parameters_from(const ClientModel& other);
  std::vector<std::vector<double>> snapshot() const;
  void restore(const std::vector<std::vector<double>>& values);

 private:
  ClientConfig config_;
  ParameterStore store_;
  std::optional<RevinAffine> revin_affine_;
  std::optional<Dense> embedding_;
  std::vector<EncoderLayer> layers_;
  std::optional<DecoderHead> decoder_;
  Dense head_;
  std::optional<Dense> linear_;
  Tensor blend_;
  BlockOptions block_options_;
};

}  // namespace client
