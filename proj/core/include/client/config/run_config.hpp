#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "client/data/split.hpp"
#include "client/model/config.hpp"
#include "client/train/trainer.hpp"

namespace client {

struct DataConfig {
  std::string path;
  std::string name;  // report label; defaults to the file stem
  SplitProfile profile = SplitProfile::ratio;
  bool operator==(const DataConfig&) const = default;
};

// Everything needed to replay a run. Serialised as INI:
//
//   [data]  path, name, profile
//   [task]  lookback, variables (0 = take from the data), horizon
//   [model] layers, d_ff, heads, activation, attention, scaling, linear_branch,
//           blend, w_lin_init, revin, revin_affine, revin_eps, input_embedding,
//           embed_dim, decoder_head, layer_norm_eps
//   [train] learning_rate, batch_size, max_epochs, patience, beta1, beta2,
//           adam_eps, clip_norm, train_mask_fraction
//   [run]   seed, out
struct RunConfig {
  DataConfig data;
  ClientConfig model;
  TrainConfig train;
  std::uint64_t seed = 2024;
  std::string out = "runs";

  RunConfig() { model.task.variables = 0; }
  bool operator==(const RunConfig&) const = default;
};

// Sets one "section.key" value. Throws ConfigError for unknown keys or values
// that do not parse completely.
void apply_setting(RunConfig& config, std::string_view section, std::string_view key, std::string_view value);
// "section.key=value"
void apply_override(RunConfig& config, std::string_view assignment);

// Strict INI parse on top of the defaults: unknown sections or keys are errors.
RunConfig parse_run_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

// Every field, including defaults. Numbers use shortest round-trip form.
std::string to_ini(const RunConfig& config);
// Only [task], [model] and [run] seed; the block stored in checkpoints.
std::string model_ini(const ClientConfig& model, std::uint64_t seed);

}  // namespace client
