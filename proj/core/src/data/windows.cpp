#include "client/data/windows.hpp"

#include <algorithm>

#include "client/errors.hpp"

namespace client {

std::size_t window_count(std::size_t n, std::size_t lookback, std::size_t horizon) {
  return n + 1 > lookback + horizon ? n + 1 - lookback - horizon : 0;
}

WindowedDataset::WindowedDataset(std::shared_ptr<const Matrix> source, std::size_t begin, std::size_t end,
                                 std::size_t lookback, std::size_t horizon)
    : source_(std::move(source)), begin_(begin), end_(end), lookback_(lookback), horizon_(horizon) {
  if (!source_ || end_ > source_->rows || begin_ > end_) throw DataError("window range outside the source series");
  if (lookback_ == 0 || horizon_ == 0) throw DataError("look-back and horizon must be positive");
  count_ = window_count(end_ - begin_, lookback_, horizon_);
}

Tensor WindowedDataset::input(std::size_t index) const {
  if (index >= count_) throw ContractError("window index out of range");
  const std::size_t c = source_->cols;
  const auto first = source_->values.begin() + static_cast<std::ptrdiff_t>((begin_ + index) * c);
  return Tensor::from({lookback_, c}, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(lookback_ * c)));
}

Tensor WindowedDataset::target(std::size_t index) const {
  if (index >= count_) throw ContractError("window index out of range");
  const std::size_t c = source_->cols;
  const auto first = source_->values.begin() + static_cast<std::ptrdiff_t>((begin_ + index + lookback_) * c);
  return Tensor::from({horizon_, c}, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(horizon_ * c)));
}

std::pair<Tensor, Tensor> WindowedDataset::batch(std::span<const std::size_t> indices) const {
  if (indices.empty()) throw ContractError("empty batch");
  const std::size_t c = source_->cols;
  const std::size_t in_len = lookback_ * c, out_len = horizon_ * c;
  std::vector<double> x, y;
  x.reserve(indices.size() * in_len);
  y.reserve(indices.size() * out_len);
  for (const std::size_t i : indices) {
    if (i >= count_) throw ContractError("window index out of range");
    const double* base = source_->values.data() + (begin_ + i) * c;
    x.insert(x.end(), base, base + in_len);
    y.insert(y.end(), base + in_len, base + in_len + out_len);
  }
  return {Tensor::from({indices.size(), lookback_, c}, std::move(x)),
          Tensor::from({indices.size(), horizon_, c}, std::move(y))};
}

WindowedDataset make_windows(std::shared_ptr<const Matrix> split, std::size_t lookback, std::size_t horizon) {
  if (!split) throw DataError("make_windows: no split");
  if (split->rows < lookback + horizon) {
    throw DataError("split of " + std::to_string(split->rows) + " rows is shorter than L+T = " +
                    std::to_string(lookback + horizon));
  }
  const std::size_t rows = split->rows;
  return WindowedDataset(std::move(split), 0, rows, lookback, horizon);
}

}  // namespace client
