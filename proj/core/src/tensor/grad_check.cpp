#include "client/tensor/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "client/errors.hpp"
#include "client/random.hpp"

namespace client {

double gradient_relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

double GradReport::max_rel_error() const {
  double m = 0.0;
  for (const auto& p : params) m = std::max(m, p.max_rel_error);
  return m;
}

std::string GradReport::summary() const {
  std::ostringstream os;
  os << (passed ? "PASS" : "FAIL") << " max rel err " << max_rel_error() << " (tol " << tolerance << ")";
  if (!diagnostic.empty()) os << ": " << diagnostic;
  for (const auto& p : params) {
    if (p.max_rel_error > tolerance) {
      os << "\n  " << p.name << "[" << p.worst_index << "] analytic " << p.analytic << " numeric " << p.numeric
         << " rel " << p.max_rel_error;
    }
  }
  return os.str();
}

GradReport grad_check(const std::function<Tensor()>& objective, const std::vector<NamedTensor>& params,
                      const GradCheckOptions& options) {
  if (!(options.step >= 1e-7 && options.step <= 1e-3)) {
    throw ContractError("grad_check: step must lie in [1e-7, 1e-3]");
  }
  GradReport report;
  report.tolerance = options.tolerance;

  for (const auto& p : params) {
    Tensor t = p.tensor;
    t.zero_grad();
  }
  const Tensor loss = objective();
  if (!std::isfinite(loss.item())) {
    report.diagnostic = "objective is not finite at the base point";
    return report;
  }
  backward(loss);

  Rng rng(options.seed);
  bool finite = true;
  NoGradGuard no_grad;
  for (const auto& p : params) {
    Tensor t = p.tensor;
    const std::vector<double> analytic = t.grad();
    std::vector<std::size_t> coords(t.numel());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (coords.size() > options.max_coords_per_param) {
      rng.shuffle(std::span<std::size_t>(coords));
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }

    ParamGradError entry;
    entry.name = p.name;
    auto values = t.mutable_data();
    for (const std::size_t i : coords) {
      const double original = values[i];
      values[i] = original + options.step;
      const double up = objective().item();
      values[i] = original - options.step;
      const double down = objective().item();
      values[i] = original;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        finite = false;
        report.diagnostic = "objective not finite while perturbing " + p.name;
        continue;
      }
      const double numeric = (up - down) / (2.0 * options.step);
      const double err = gradient_relative_error(analytic[i], numeric);
      ++entry.checked;
      if (err >= entry.max_rel_error) {
        entry.max_rel_error = err;
        entry.worst_index = i;
        entry.analytic = analytic[i];
        entry.numeric = numeric;
      }
    }
    report.params.push_back(std::move(entry));
  }
  report.passed = finite && report.max_rel_error() < options.tolerance;
  return report;
}

}  // namespace client
