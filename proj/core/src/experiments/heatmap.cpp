#include "client/experiments/heatmap.hpp"

#include <fstream>
#include <ostream>

#include "client/errors.hpp"
#include "client/experiments/report.hpp"

namespace client {

Matrix attention_matrix(const ClientModel& model, const Tensor& sample, std::size_t layer, std::size_t head) {
  const auto& cfg = model.config();
  if (cfg.attention != AttentionKind::full) {
    throw ContractError("model uses '" + std::string(to_string(cfg.attention)) + "' mixing and has no attention map");
  }
  if (layer >= cfg.layers) {
    throw ContractError("layer " + std::to_string(layer) + " out of range (model has " + std::to_string(cfg.layers) + ")");
  }
  if (head >= cfg.resolved_heads()) {
    throw ContractError("head " + std::to_string(head) + " out of range (model has " +
                        std::to_string(cfg.resolved_heads()) + ")");
  }
  if (sample.rank() != 2) throw DimensionError("heatmap sample must be a single [L, C] window");
  NoGradGuard no_grad;
  ForwardTrace trace;
  model.forward(sample, &trace);
  const Tensor& p = trace.attention.at(layer).at(head);
  const std::size_t c = p.dim(-1);
  Matrix m{c, c, std::vector<double>(p.data().begin(), p.data().end())};
  return m;
}

void write_matrix_csv(const Matrix& m, std::ostream& out) {
  for (std::size_t j = 0; j < m.cols; ++j) out << (j ? "," : "") << 'v' << j;
  out << '\n';
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out << (j ? "," : "") << format_double(m.at(i, j));
    out << '\n';
  }
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_matrix_csv(m, out);
}

Matrix attention_heatmap_export(const ClientModel& model, const Tensor& sample, std::size_t layer, std::size_t head,
                                const std::filesystem::path& path) {
  Matrix m = attention_matrix(model, sample, layer, head);
  write_matrix_csv(m, path);
  return m;
}

}  // namespace client
