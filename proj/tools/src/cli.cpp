#include "client_cli/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "client/config/run_config.hpp"
#include "client/data/fixture.hpp"
#include "client/errors.hpp"
#include "client/experiments/correlation.hpp"
#include "client/experiments/efficiency.hpp"
#include "client/experiments/heatmap.hpp"
#include "client/experiments/reference.hpp"
#include "client/experiments/runners.hpp"
#include "client/train/checkpoint.hpp"

namespace client::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string data;
  std::string out;
  std::string checkpoint;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;

  std::vector<double> fractions{0.0, 0.2, 0.5, 0.8};
  std::vector<std::string> variants{"client", "no-linear", "no-revin", "embed", "decoder"};
  std::vector<std::size_t> lookbacks{96, 144, 192};
  std::vector<std::string> kinds{"full", "linear", "mlp", "none"};
  std::vector<std::size_t> horizons;

  std::string mode = "simultaneous";
  std::size_t samples = 100;
  std::size_t sub_len = 96;
  double threshold = 0.8;

  std::size_t layer = 0;
  std::size_t head = 0;
  std::size_t index = 0;

  std::size_t iterations = 20;
  std::size_t batch = 32;

  std::size_t rows = 2000;
  std::size_t variables = 4;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "INI run configuration");
  cmd->add_option("--data", o.data, "dataset CSV (overrides [data] path)");
  cmd->add_option("--out", o.out, "output directory (overrides [run] out)");
  cmd->add_option("--seed", o.seed, "root seed (overrides [run] seed)");
  cmd->add_option("--checkpoint", o.checkpoint, "checkpoint file");
  cmd->add_option("--set", o.overrides, "config override, section.key=value (repeatable)");
}

void add_horizons(CLI::App* cmd, Options& o) {
  cmd->add_option("--horizons", o.horizons, "comma-separated horizons (default: [task] horizon)")->delimiter(',');
}

RunConfig resolve(const Options& o) {
  RunConfig rc = o.config.empty() ? RunConfig{} : load_run_config(o.config);
  for (const auto& s : o.overrides) apply_override(rc, s);
  if (!o.data.empty()) rc.data.path = o.data;
  if (!o.out.empty()) rc.out = o.out;
  if (o.seed) rc.seed = *o.seed;
  if (rc.data.name.empty() && !rc.data.path.empty()) rc.data.name = fs::path(rc.data.path).stem().string();
  return rc;
}

MultivariateSeries load_series(RunConfig& rc, std::ostream& err) {
  if (rc.data.path.empty()) throw ConfigError("no dataset: pass --data or set [data] path");
  MultivariateSeries series = load_csv(rc.data.path);
  if (!series.diagnostics.empty()) {
    err << rc.data.path << ": " << series.diagnostics.size() << " rows rejected (first: " << series.diagnostics.front()
        << ")\n";
  }
  auto& c = rc.model.task.variables;
  if (c != 0 && c != series.variables()) {
    throw DataError("config mismatch: config declares C=" + std::to_string(c) + ", " + rc.data.path + " has " +
                    std::to_string(series.variables()) + " variables");
  }
  c = series.variables();
  return series;
}

fs::path prepare_out(const RunConfig& rc) {
  const fs::path out = rc.out;
  fs::create_directories(out);
  std::ofstream(out / "resolved-config.ini") << to_ini(rc);
  return out;
}

std::vector<std::size_t> horizons_or_default(const Options& o, const RunConfig& rc) {
  return o.horizons.empty() ? std::vector<std::size_t>{rc.model.task.horizon} : o.horizons;
}

SuiteSetup suite_setup(const RunConfig& rc, const MultivariateSeries& series, std::ostream& out) {
  return {rc.data.name, &series, rc.data.profile, rc.model, rc.train, rc.seed, &out};
}

void print_report(const ExperimentReport& report, std::ostream& out) {
  out << std::left << std::setw(12) << "experiment" << std::setw(16) << "variant" << std::setw(6) << "L"
      << std::setw(6) << "T" << std::setw(12) << "mse" << std::setw(12) << "mae" << "reference\n";
  for (const auto& r : report.rows()) {
    out << std::setw(12) << r.experiment << std::setw(16) << r.variant << std::setw(6) << r.lookback << std::setw(6)
        << r.horizon;
    if (r.failed()) {
      out << "ERROR: " << r.error << '\n';
      continue;
    }
    out << std::setw(12) << std::setprecision(4) << r.mse << std::setw(12) << r.mae;
    const std::string exp = r.experiment.starts_with("mask") ? "main" : r.experiment;
    if (const auto ref = find_reference(exp, r.dataset, r.variant, r.lookback, r.horizon)) {
      out << ref->mse << " / " << ref->mae;
    }
    out << '\n';
  }
  out << std::right;
}

// Checkpoint plus data, with the task checked against the data.
struct Loaded {
  Checkpoint checkpoint;
  MultivariateSeries series;
  PreparedData data;
};

Loaded load_for_eval(const Options& o, RunConfig& rc, std::ostream& err) {
  if (o.checkpoint.empty()) throw ConfigError("--checkpoint is required");
  Loaded l;
  l.checkpoint = load_checkpoint(o.checkpoint);
  if (o.config.empty()) {
    rc.model.task.lookback = l.checkpoint.config.task.lookback;
    rc.model.task.horizon = l.checkpoint.config.task.horizon;
  }
  rc.model.task.variables = 0;
  l.series = load_series(rc, err);
  require_task(l.checkpoint, rc.model.task);
  rc.model = l.checkpoint.config;
  l.data = prepare_dataset(l.series, rc.data.profile, rc.model.task.lookback, rc.model.task.horizon,
                           &l.checkpoint.scaler);
  return l;
}

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  const MultivariateSeries series = load_series(rc, err);
  const fs::path dir = prepare_out(rc);
  TrainedRun run = train_and_evaluate(series, rc.data.profile, rc.model, rc.train, rc.seed, &out);
  save_checkpoint(run.checkpoint(), dir / "checkpoint.clnt");
  std::ofstream history(dir / "history.csv");
  write_history_csv(run.training.history, history);
  ExperimentReport report;
  report.add({"train", rc.data.name, "Client", rc.model.task.lookback, rc.model.task.horizon, rc.seed, run.test.mse,
              run.test.mae, run.seconds, run.model.parameter_count(), {}});
  report.save(dir / "train");
  print_report(report, out);
  out << "checkpoint: " << (dir / "checkpoint.clnt").string() << '\n';
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  Loaded l = load_for_eval(o, rc, err);
  const fs::path dir = prepare_out(rc);
  const ClientModel model = restore_model(l.checkpoint);
  const auto t0 = std::chrono::steady_clock::now();
  const Metrics m = evaluate(model, l.data.test, rc.train.batch_size);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ExperimentReport report;
  report.add({"eval", rc.data.name, "Client", rc.model.task.lookback, rc.model.task.horizon, l.checkpoint.seed, m.mse,
              m.mae, secs, model.parameter_count(), {}});
  report.save(dir / "eval");
  print_report(report, out);
  return kOk;
}

int cmd_mask(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  Loaded l = load_for_eval(o, rc, err);
  const fs::path dir = prepare_out(rc);
  const ClientModel model = restore_model(l.checkpoint);
  const ExperimentReport report =
      mask_experiment(model, l.data.test, o.fractions, rc.seed, rc.data.name, rc.train.batch_size);
  report.save(dir / "mask");
  std::ofstream curve(dir / "mask_curve.csv");
  curve << "fraction,mse,mae\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    const auto& r = report.rows()[i];
    curve << format_double(o.fractions[i]) << ',' << format_double(r.mse) << ',' << format_double(r.mae) << '\n';
  }
  print_report(report, out);
  return kOk;
}

int cmd_ablate(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  const MultivariateSeries series = load_series(rc, err);
  std::vector<Variant> variants;
  for (const auto& v : o.variants) variants.push_back(parse_variant(v));
  const fs::path dir = prepare_out(rc);
  const auto horizons = horizons_or_default(o, rc);
  const ExperimentReport report = ablation_suite(suite_setup(rc, series, out), variants, horizons);
  report.save(dir / "ablation");
  print_report(report, out);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  const MultivariateSeries series = load_series(rc, err);
  const fs::path dir = prepare_out(rc);
  const auto horizons = horizons_or_default(o, rc);
  const ExperimentReport report = lookback_sweep(suite_setup(rc, series, out), o.lookbacks, horizons);
  report.save(dir / "lookback");
  print_report(report, out);
  return kOk;
}

int cmd_attn(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  const MultivariateSeries series = load_series(rc, err);
  std::vector<AttentionKind> kinds;
  for (const auto& k : o.kinds) kinds.push_back(parse_attention_kind(k));
  const fs::path dir = prepare_out(rc);
  const auto horizons = horizons_or_default(o, rc);
  const ExperimentReport report = attention_replacement_suite(suite_setup(rc, series, out), kinds, horizons);
  report.save(dir / "attention");
  print_report(report, out);
  return kOk;
}

int cmd_correlate(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  const MultivariateSeries series = load_series(rc, err);
  const fs::path dir = prepare_out(rc);
  CorrelationOptions co;
  co.mode = parse_correlation_mode(o.mode);
  co.samples = o.samples;
  co.sub_len = o.sub_len;
  co.threshold = o.threshold;
  co.seed = rc.seed;
  const CorrelationResult r = correlation_analysis(series.values, co);
  const std::string stem = "correlation_" + std::string(to_string(co.mode));
  write_matrix_csv(r.mean, dir / (stem + "_mean.csv"));
  write_matrix_csv(r.binary, dir / (stem + "_binary.csv"));
  out << to_string(co.mode) << " correlation above " << co.threshold << " (" << co.samples << " samples of "
      << co.sub_len << "):\n";
  for (std::size_t i = 0; i < r.binary.rows; ++i) {
    for (std::size_t j = 0; j < r.binary.cols; ++j) out << (r.binary.at(i, j) > 0.5 ? '#' : '.');
    out << "  " << series.names[i] << '\n';
  }
  return kOk;
}

int cmd_heatmap(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  Loaded l = load_for_eval(o, rc, err);
  const fs::path dir = prepare_out(rc);
  const ClientModel model = restore_model(l.checkpoint);
  if (o.index >= l.data.test.size()) {
    throw ContractError("--index " + std::to_string(o.index) + " out of range (" +
                        std::to_string(l.data.test.size()) + " test windows)");
  }
  const fs::path path = dir / ("heatmap_l" + std::to_string(o.layer) + "_h" + std::to_string(o.head) + ".csv");
  const Matrix m = attention_heatmap_export(model, l.data.test.input(o.index), o.layer, o.head, path);
  out << std::fixed << std::setprecision(3);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out << (j ? " " : "") << m.at(i, j);
    out << '\n';
  }
  out << std::defaultfloat << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc = resolve(o);
  if (!rc.data.path.empty()) load_series(rc, err);
  if (rc.model.task.variables == 0) rc.model.task.variables = 7;
  const fs::path dir = prepare_out(rc);
  const EfficiencyReport r = efficiency_report(rc.model, o.iterations, o.batch, rc.seed);
  nlohmann::ordered_json j;
  j["parameters"] = r.parameters;
  j["parameter_bytes"] = r.parameter_bytes;
  j["activation_elements"] = r.activation_elements;
  j["peak_bytes_estimate"] = r.peak_bytes_estimate;
  j["seconds_per_iteration"] = r.seconds_per_iteration;
  j["iterations"] = r.iterations;
  j["batch"] = r.batch;
  std::ofstream(dir / "efficiency.json") << j.dump(2) << '\n';
  out << "parameters            " << r.parameters << " (" << std::setprecision(3)
      << static_cast<double>(r.parameters) / 1e6 << " M)\n"
      << "parameter bytes       " << r.parameter_bytes << '\n'
      << "peak bytes estimate   " << r.peak_bytes_estimate << '\n'
      << "seconds / iteration   " << r.seconds_per_iteration << " (median of " << r.iterations << ", batch "
      << r.batch << ")\n";
  return kOk;
}

int cmd_fixture(const Options& o, std::ostream& out, std::ostream&) {
  RunConfig rc = resolve(o);
  const fs::path dir = prepare_out(rc);
  const fs::path path = dir / "fixture.csv";
  write_csv(make_fixture(o.rows, o.variables, rc.seed), path);
  out << "wrote " << path.string() << " (" << o.rows << " rows, " << o.variables << " variables)\n";
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-variable Transformer forecasting: training, evaluation and experiment runners", "client"};
  app.require_subcommand(1);
  Options o;

  auto* train = app.add_subcommand("train", "train on a dataset and evaluate on its test split");
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on a dataset's test split");
  auto* mask = app.add_subcommand("mask", "evaluate with a fraction of each input zeroed");
  auto* ablate = app.add_subcommand("ablate", "train and evaluate component ablations");
  auto* sweep = app.add_subcommand("sweep-lookback", "train and evaluate over look-back sizes");
  auto* attn = app.add_subcommand("attn-variant", "train and evaluate with replaced variable mixing");
  auto* corr = app.add_subcommand("correlate", "sampled cross-variable correlation matrices");
  auto* heat = app.add_subcommand("heatmap", "export one attention matrix as CSV");
  auto* bench = app.add_subcommand("bench", "parameter count, memory estimate and time per iteration");
  auto* fixture = app.add_subcommand("fixture", "write the synthetic fixture dataset");
  for (auto* cmd : {train, eval, mask, ablate, sweep, attn, corr, heat, bench, fixture}) add_common(cmd, o);

  mask->add_option("--fractions", o.fractions, "ascending mask fractions starting at 0")->delimiter(',');
  ablate->add_option("--variants", o.variants, "client,no-linear,no-revin,embed,decoder")->delimiter(',');
  sweep->add_option("--lookbacks", o.lookbacks, "look-back sizes")->delimiter(',');
  attn->add_option("--kinds", o.kinds, "full,linear,mlp,none")->delimiter(',');
  for (auto* cmd : {ablate, sweep, attn}) add_horizons(cmd, o);
  corr->add_option("--mode", o.mode, "simultaneous or lagged");
  corr->add_option("--samples", o.samples, "number of sampled sub-series");
  corr->add_option("--sub-len", o.sub_len, "sub-series length");
  corr->add_option("--threshold", o.threshold, "binarisation threshold");
  heat->add_option("--layer", o.layer, "encoder layer");
  heat->add_option("--head", o.head, "attention head");
  heat->add_option("--index", o.index, "test window index");
  bench->add_option("--iterations", o.iterations, "timed iterations (at least 20)");
  bench->add_option("--batch", o.batch, "batch size");
  fixture->add_option("--rows", o.rows, "rows");
  fixture->add_option("--variables", o.variables, "variables (the last duplicates the first)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (train->parsed()) return cmd_train(o, out, err);
  if (eval->parsed()) return cmd_eval(o, out, err);
  if (mask->parsed()) return cmd_mask(o, out, err);
  if (ablate->parsed()) return cmd_ablate(o, out, err);
  if (sweep->parsed()) return cmd_sweep(o, out, err);
  if (attn->parsed()) return cmd_attn(o, out, err);
  if (corr->parsed()) return cmd_correlate(o, out, err);
  if (heat->parsed()) return cmd_heatmap(o, out, err);
  if (bench->parsed()) return cmd_bench(o, out, err);
  return cmd_fixture(o, out, err);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const DimensionError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return dispatch(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace client::cli
