#pragma once

#include <filesystem>
#include <iosfwd>

#include "client/data/series.hpp"
#include "client/model/client_model.hpp"

namespace client {

// Post-softmax C x C cross-variable attention of one encoder layer and head
// for a single [L, C] input. Throws ContractError for out-of-range indices or
// a model without attention.
Matrix attention_matrix(const ClientModel& model, const Tensor& sample, std::size_t layer, std::size_t head);

// CSV with header v0..v{C-1}, one row per query variable.
void write_matrix_csv(const Matrix& m, std::ostream& out);
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);

Matrix attention_heatmap_export(const ClientModel& model, const Tensor& sample, std::size_t layer, std::size_t head,
                                const std::filesystem::path& path);

}  // namespace client
