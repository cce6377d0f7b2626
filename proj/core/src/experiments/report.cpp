#include "client/experiments/report.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "client/errors.hpp"

namespace client {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool ReportRow::same_result(const ReportRow& o) const {
  return experiment == o.experiment && dataset == o.dataset && variant == o.variant && lookback == o.lookback &&
         horizon == o.horizon && seed == o.seed && params == o.params && error == o.error &&
         (failed() || (mse == o.mse && mae == o.mae));
}

void ExperimentReport::append(const ExperimentReport& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

const char* ExperimentReport::csv_header() { return "experiment,dataset,variant,L,T,seed,mse,mae,seconds,params"; }

void ExperimentReport::write_csv(std::ostream& out) const {
  out << csv_header() << '\n';
  for (const auto& r : rows_) {
    out << r.experiment << ',' << r.dataset << ',' << r.variant << ',' << r.lookback << ',' << r.horizon << ','
        << r.seed << ',';
    if (r.failed()) {
      out << "ERROR,ERROR,";
    } else {
      out << format_double(r.mse) << ',' << format_double(r.mae) << ',';
    }
    out << format_double(r.seconds) << ',' << r.params << '\n';
  }
}

void ExperimentReport::write_jsonl(std::ostream& out) const {
  for (const auto& r : rows_) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["dataset"] = r.dataset;
    j["variant"] = r.variant;
    j["L"] = r.lookback;
    j["T"] = r.horizon;
    j["seed"] = r.seed;
    if (r.failed()) {
      j["mse"] = nullptr;
      j["mae"] = nullptr;
    } else {
      j["mse"] = r.mse;
      j["mae"] = r.mae;
    }
    j["seconds"] = r.seconds;
    j["params"] = r.params;
    if (r.failed()) j["error"] = r.error;
    out << j.dump() << '\n';
  }
}

void ExperimentReport::save(const std::filesystem::path& stem) const {
  auto csv_path = stem;
  csv_path += ".csv";
  auto json_path = stem;
  json_path += ".jsonl";
  std::ofstream csv(csv_path), json(json_path);
  if (!csv || !json) throw DataError("cannot write report " + stem.string());
  write_csv(csv);
  write_jsonl(json);
}

}  // namespace client
