#include "client/experiments/runners.hpp"

#include <chrono>
#include <ostream>

#include "client/data/mask.hpp"
#include "client/errors.hpp"
#include "client/random.hpp"

namespace client {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Trains one configuration; failures become an error row instead of propagating.
ReportRow run_row(const SuiteSetup& setup, const std::string& experiment, const std::string& variant,
                  ClientConfig config) {
  config.task.variables = setup.series->variables();
  ReportRow row;
  row.experiment = experiment;
  row.dataset = setup.dataset;
  row.variant = variant;
  row.lookback = config.task.lookback;
  row.horizon = config.task.horizon;
  row.seed = setup.seed;
  if (setup.log) {
    *setup.log << "[" << experiment << "] " << setup.dataset << " " << variant << " L=" << row.lookback
               << " T=" << row.horizon << "\n";
  }
  try {
    row.params = parameter_count(config);
    TrainedRun run = train_and_evaluate(*setup.series, setup.profile, config, setup.train, setup.seed, setup.log);
    row.mse = run.test.mse;
    row.mae = run.test.mae;
    row.seconds = run.seconds;
  } catch (const std::exception& e) {
    row.error = e.what();
    if (setup.log) *setup.log << "  failed: " << e.what() << "\n";
  }
  return row;
}

void require_series(const SuiteSetup& setup) {
  if (!setup.series) throw ContractError("suite setup has no series");
}

}  // namespace

TrainedRun train_and_evaluate(const MultivariateSeries& series, SplitProfile profile, ClientConfig model,
                              TrainConfig train_config, std::uint64_t seed, std::ostream* log) {
  const auto t0 = std::chrono::steady_clock::now();
  model.task.variables = series.variables();
  train_config.seed = seed;
  PreparedData data = prepare_dataset(series, profile, model.task.lookback, model.task.horizon);
  TrainedRun run{ClientModel(model, derive_seed(seed, "init")), std::move(data), {}, {}, 0.0, seed};
  run.training = train(run.model, run.data.train, run.data.val, train_config, log);
  run.test = evaluate(run.model, run.data.test, train_config.batch_size);
  run.seconds = seconds_since(t0);
  if (log) *log << "  test mse " << run.test.mse << "  mae " << run.test.mae << "\n";
  return run;
}

ExperimentReport mask_experiment(const ClientModel& model, const WindowedDataset& test,
                                 std::span<const double> fractions, std::uint64_t seed, const std::string& dataset,
                                 std::size_t batch_size) {
  if (fractions.empty() || fractions.front() != 0.0) throw ContractError("mask fractions must start at 0");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] >= 0.0 && fractions[i] <= 1.0)) throw ContractError("mask fractions must lie in [0, 1]");
    if (i > 0 && !(fractions[i] > fractions[i - 1])) throw ContractError("mask fractions must be ascending");
  }
  const auto& cfg = model.config();
  ExperimentReport report;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double p = fractions[k];
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(seed, "mask", k));
    const InputTransform masker = [&](const Tensor& x, std::size_t) { return mask_series(x, p, rng); };
    const Metrics m = evaluate(model, test, batch_size, p > 0.0 ? masker : InputTransform{});
    report.add({"mask:" + format_double(p), dataset, "Client", cfg.task.lookback, cfg.task.horizon, seed, m.mse,
                m.mae, seconds_since(t0), model.parameter_count(), {}});
  }
  return report;
}

ExperimentReport ablation_suite(const SuiteSetup& setup, std::span<const Variant> variants,
                                std::span<const std::size_t> horizons) {
  require_series(setup);
  ExperimentReport report;
  for (const std::size_t h : horizons) {
    for (const Variant v : variants) {
      ClientConfig cfg = apply_variant(setup.model, v);
      cfg.task.horizon = h;
      report.add(run_row(setup, "ablation", std::string(variant_label(v)), cfg));
    }
  }
  return report;
}

ExperimentReport lookback_sweep(const SuiteSetup& setup, std::span<const std::size_t> lookbacks,
                                std::span<const std::size_t> horizons) {
  require_series(setup);
  ExperimentReport report;
  for (const std::size_t h : horizons) {
    for (const std::size_t l : lookbacks) {
      ClientConfig cfg = setup.model;
      cfg.task.lookback = l;
      cfg.task.horizon = h;
      report.add(run_row(setup, "lookback", "Client", cfg));
    }
  }
  return report;
}

ExperimentReport attention_replacement_suite(const SuiteSetup& setup, std::span<const AttentionKind> kinds,
                                             std::span<const std::size_t> horizons) {
  require_series(setup);
  ExperimentReport report;
  for (const std::size_t h : horizons) {
    for (const AttentionKind k : kinds) {
      ClientConfig cfg = setup.model;
      cfg.attention = k;
      cfg.task.horizon = h;
      report.add(run_row(setup, "attention", std::string(attention_kind_label(k)), cfg));
    }
  }
  return report;
}

std::string_view attention_kind_label(AttentionKind kind) {
  switch (kind) {
    case AttentionKind::full: return "Attention";
    case AttentionKind::linear: return "Linear";
    case AttentionKind::mlp: return "MLP";
    case AttentionKind::none: return "No Attention";
  }
  return "?";
}

}  // namespace client
