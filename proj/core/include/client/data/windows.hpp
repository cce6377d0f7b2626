#pragma once

#include <memory>
#include <span>
#include <utility>

#include "client/data/series.hpp"
#include "client/tensor/tensor.hpp"

namespace client {

// Sliding (L x C input, T x C target) pairs over rows [begin, end) of a
// shared matrix. Window s covers input rows [s, s+L) and target rows
// [s+L, s+L+T), relative to begin, in ascending s.
class WindowedDataset {
 public:
  WindowedDataset() = default;
  WindowedDataset(std::shared_ptr<const Matrix> source, std::size_t begin, std::size_t end, std::size_t lookback,
                  std::size_t horizon);

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t lookback() const { return lookback_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t variables() const { return source_ ? source_->cols : 0; }
  std::size_t split_length() const { return end_ - begin_; }

  Tensor input(std::size_t index) const;   // [L, C]
  Tensor target(std::size_t index) const;  // [T, C]
  // Stacked [B, L, C] inputs and [B, T, C] targets.
  std::pair<Tensor, Tensor> batch(std::span<const std::size_t> indices) const;

 private:
  std::shared_ptr<const Matrix> source_;
  std::size_t begin_ = 0;
  std::size_t end_ = 0;
  std::size_t lookback_ = 0;
  std::size_t horizon_ = 0;
  std::size_t count_ = 0;
};

// max(0, n - L - T + 1)
std::size_t window_count(std::size_t split_length, std::size_t lookback, std::size_t horizon);

// Windows over a whole split; throws DataError when it has fewer than L + T rows.
WindowedDataset make_windows(std::shared_ptr<const Matrix> split, std::size_t lookback, std::size_t horizon);

}  // namespace client
