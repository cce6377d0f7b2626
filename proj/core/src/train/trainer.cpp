#include "client/train/trainer.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "client/data/mask.hpp"
#include "client/errors.hpp"
#include "client/random.hpp"
#include "client/tensor/ops.hpp"

namespace client {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (batch_size < 1) throw ConfigError("batch_size must be positive");
  if (max_epochs < 1) throw ConfigError("max_epochs must be positive");
  if (patience < 1 || patience > max_epochs) throw ConfigError("patience must be in [1, max_epochs]");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("Adam betas must be in [0, 1)");
  if (!(adam_eps > 0.0)) throw ConfigError("adam_eps must be positive");
  if (clip_norm < 0.0) throw ConfigError("clip_norm must be >= 0");
  if (!(train_mask_fraction >= 0.0 && train_mask_fraction <= 1.0)) {
    throw ConfigError("train_mask_fraction must be in [0, 1]");
  }
}

bool EarlyStopping::update(double val_loss) {
  ++epoch_;
  if (val_loss < best_) {
    best_ = val_loss;
    best_epoch_ = epoch_;
    bad_epochs_ = 0;
    return true;
  }
  ++bad_epochs_;
  return false;
}

Metrics evaluate(const ClientModel& model, const WindowedDataset& windows, std::size_t batch_size,
                 const InputTransform& transform) {
  if (windows.empty()) throw DataError("evaluate: no windows");
  const auto& task = model.config().task;
  if (windows.lookback() != task.lookback || windows.horizon() != task.horizon ||
      windows.variables() != task.variables) {
    throw DimensionError("evaluate: windows are L=" + std::to_string(windows.lookback()) +
                         " T=" + std::to_string(windows.horizon()) + " C=" + std::to_string(windows.variables()) +
                         ", model expects L=" + std::to_string(task.lookback) + " T=" +
                         std::to_string(task.horizon) + " C=" + std::to_string(task.variables));
  }
  NoGradGuard no_grad;
  double se = 0.0, ae = 0.0;
  std::size_t count = 0;
  std::vector<std::size_t> idx;
  for (std::size_t start = 0, b = 0; start < windows.size(); start += batch_size, ++b) {
    idx.resize(std::min(batch_size, windows.size() - start));
    std::iota(idx.begin(), idx.end(), start);
    auto [x, y] = windows.batch(idx);
    if (transform) x = transform(x, b);
    const Tensor pred = model.forward(x);
    const auto p = pred.data();
    const auto t = y.data();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double d = p[i] - t[i];
      se += d * d;
      ae += std::abs(d);
    }
    count += p.size();
  }
  // Every window has T*C elements, so the element mean equals the mean of per-window means.
  return {se / static_cast<double>(count), ae / static_cast<double>(count)};
}

namespace {

void clip_gradients(const std::vector<NamedTensor>& params, double max_norm) {
  double sq = 0.0;
  for (const auto& p : params)
    if (p.tensor.has_grad())
      for (const double g : p.tensor.impl()->grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0.0) return;
  const double s = max_norm / norm;
  for (const auto& p : params)
    if (p.tensor.has_grad())
      for (double& g : p.tensor.impl()->grad) g *= s;
}

}  // namespace

TrainResult train(ClientModel& model, const WindowedDataset& train_windows, const WindowedDataset& val_windows,
                  const TrainConfig& config, std::ostream* log) {
  config.validate();
  if (train_windows.empty()) throw DataError("train: no training windows");
  if (val_windows.empty()) throw DataError("train: no validation windows");

  Adam adam(model.parameters(), config.adam());
  Rng shuffle_rng(derive_seed(config.seed, "shuffle"));
  Rng mask_rng(derive_seed(config.seed, "mask", 1));
  EarlyStopping stopper(config.patience);
  TrainResult result;
  std::vector<std::vector<double>> best = model.snapshot();

  std::vector<std::size_t> order(train_windows.size());
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.shuffle(std::span<std::size_t>(order));

    double loss_sum = 0.0;
    for (std::size_t start = 0, b = 0; start < order.size(); start += config.batch_size, ++b) {
      const std::size_t n = std::min(config.batch_size, order.size() - start);
      auto [x, y] = train_windows.batch(std::span<const std::size_t>(order.data() + start, n));
      if (config.train_mask_fraction > 0.0) x = mask_series(x, config.train_mask_fraction, mask_rng);
      model.zero_grad();
      const Tensor loss = mse_reduce(model.forward(x), y);
      const double value = loss.item();
      if (!std::isfinite(value)) {
        throw NumericError("non-finite training loss at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(b));
      }
      backward(loss);
      if (config.clip_norm > 0.0) clip_gradients(model.parameters(), config.clip_norm);
      adam.step();
      loss_sum += value * static_cast<double>(n);
    }

    const double val = evaluate(model, val_windows, config.batch_size).mse;
    if (!std::isfinite(val)) throw NumericError("non-finite validation loss at epoch " + std::to_string(epoch));
    if (stopper.update(val)) best = model.snapshot();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    result.history.push_back({epoch, loss_sum / static_cast<double>(order.size()), val, elapsed.count()});
    if (log) {
      *log << "epoch " << epoch << "  train_mse " << std::setprecision(6) << result.history.back().train_mse
           << "  val_mse " << val << "  " << std::setprecision(3) << elapsed.count() << "s\n";
    }
    if (stopper.should_stop()) {
      result.stopped_early = epoch < config.max_epochs;
      break;
    }
  }
  model.restore(best);
  model.zero_grad();
  result.best_epoch = stopper.best_epoch();
  result.best_val_mse = stopper.best_loss();
  result.steps = adam.steps();
  return result;
}

std::vector<double> fit_batch(ClientModel& model, const Tensor& x, const Tensor& y, std::size_t max_steps,
                              const AdamOptions& options, double target) {
  Adam adam(model.parameters(), options);
  std::vector<double> losses;
  for (std::size_t s = 0; s < max_steps; ++s) {
    model.zero_grad();
    const Tensor loss = mse_reduce(model.forward(x), y);
    const double value = loss.item();
    if (!std::isfinite(value)) throw NumericError("non-finite loss at step " + std::to_string(s));
    losses.push_back(value);
    if (value < target) break;
    backward(loss);
    adam.step();
  }
  model.zero_grad();
  return losses;
}

void write_history_csv(const std::vector<EpochRecord>& history, std::ostream& out) {
  auto shortest = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  out << "epoch,train_mse,val_mse,seconds\n";
  for (const auto& r : history) {
    out << r.epoch << ',' << shortest(r.train_mse) << ',' << shortest(r.val_mse) << ',' << shortest(r.seconds) << '\n';
  }
}

}  // namespace client
