#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "client/data/windows.hpp"
#include "client/model/client_model.hpp"
#include "client/train/adam.hpp"
#include "client/train/metrics.hpp"

namespace client {

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 10;
  std::size_t patience = 3;
  std::uint64_t seed = 2024;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double clip_norm = 0.0;            // 0 disables global-norm clipping
  double train_mask_fraction = 0.0;  // input masking during training; off unless set

  void validate() const;
  AdamOptions adam() const { return {learning_rate, beta1, beta2, adam_eps}; }
  bool operator==(const TrainConfig&) const = default;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_mse = 0.0;
  double val_mse = 0.0;
  double seconds = 0.0;
};

// Patience counter over validation losses. A loss counts as an improvement
// only when strictly below the best seen so far.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  // Records one epoch; returns true when it is the new best.
  bool update(double val_loss);
  bool should_stop() const { return bad_epochs_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_; }

 private:
  std::size_t patience_;
  std::size_t epoch_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t bad_epochs_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

struct TrainResult {
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  double best_val_mse = 0.0;
  std::size_t steps = 0;
  bool stopped_early = false;
};

// Applied to each [B, L, C] input batch before the forward pass; the second
// argument is the batch index.
using InputTransform = std::function<Tensor(const Tensor&, std::size_t)>;

// Mean per-window MSE/MAE over every window, in ascending batches.
Metrics evaluate(const ClientModel& model, const WindowedDataset& windows, std::size_t batch_size = 32,
                 const InputTransform& transform = {});

// Epoch loop with seeded shuffling, Adam, validation after every epoch and
// early stopping. On return the model holds the best-validation parameters.
// Throws NumericError with epoch/batch indices if the loss diverges.
TrainResult train(ClientModel& model, const WindowedDataset& train_windows, const WindowedDataset& val_windows,
                  const TrainConfig& config, std::ostream* log = nullptr);

// Repeated Adam steps on a single batch until the loss falls below target or
// max_steps is reached. Returns the per-step losses (loss before each step).
std::vector<double> fit_batch(ClientModel& model, const Tensor& x, const Tensor& y, std::size_t max_steps,
                              const AdamOptions& options, double target = 0.0);

void write_history_csv(const std::vector<EpochRecord>& history, std::ostream& out);

}  // namespace client
