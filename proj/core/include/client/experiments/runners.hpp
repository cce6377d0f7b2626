#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "client/data/split.hpp"
#include "client/experiments/report.hpp"
#include "client/model/client_model.hpp"
#include "client/train/checkpoint.hpp"
#include "client/train/trainer.hpp"

namespace client {

// Shared inputs of the training runners. model.task.variables is replaced by
// the series' variable count; L and T come from the model config unless a
// runner sweeps them.
struct SuiteSetup {
  std::string dataset;
  const MultivariateSeries* series = nullptr;
  SplitProfile profile = SplitProfile::ratio;
  ClientConfig model;
  TrainConfig train;
  std::uint64_t seed = 2024;
  std::ostream* log = nullptr;
};

struct TrainedRun {
  ClientModel model;
  PreparedData data;
  TrainResult training;
  Metrics test;
  double seconds = 0.0;  // training plus test evaluation
  std::uint64_t seed = 0;

  Checkpoint checkpoint() const { return make_checkpoint(model, seed, data.scaler, training.history); }
};

// Prepare splits, initialise from derive_seed(seed, "init"), train, evaluate on test.
TrainedRun train_and_evaluate(const MultivariateSeries& series, SplitProfile profile, ClientConfig model,
                              TrainConfig train, std::uint64_t seed, std::ostream* log = nullptr);

// Evaluates the test windows once per fraction with mask_series applied to
// every input. Fractions must be ascending, within [0, 1] and include 0.
// Row experiment ids are "mask:<p>".
ExperimentReport mask_experiment(const ClientModel& model, const WindowedDataset& test,
                                 std::span<const double> fractions, std::uint64_t seed, const std::string& dataset,
                                 std::size_t batch_size = 32);

// One row per variant and horizon, labelled with the variant display names.
ExperimentReport ablation_suite(const SuiteSetup& setup, std::span<const Variant> variants,
                                std::span<const std::size_t> horizons);

// One row per look-back and horizon, Client variant.
ExperimentReport lookback_sweep(const SuiteSetup& setup, std::span<const std::size_t> lookbacks,
                                std::span<const std::size_t> horizons);

// One row per mixing kind and horizon.
ExperimentReport attention_replacement_suite(const SuiteSetup& setup, std::span<const AttentionKind> kinds,
                                             std::span<const std::size_t> horizons);

// "Attention", "Linear", "MLP", "No Attention"
std::string_view attention_kind_label(AttentionKind kind);

}  // namespace client
