#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace client {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_to_string(const Shape& shape);

class Tensor;

namespace detail {

struct TensorImpl;

// Autodiff linkage of a computed tensor. The backward closure reads the
// output gradient and accumulates into the parents that require gradient.
struct Node {
  const char* op = "";
  std::vector<std::shared_ptr<TensorImpl>> parents;
  std::function<void(TensorImpl& out)> backward;
};

struct TensorImpl {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty until first accumulation
  bool requires_grad = false;
  std::unique_ptr<Node> node;

  std::vector<double>& grad_buffer() {
    if (grad.empty()) grad.assign(data.size(), 0.0);
    return grad;
  }
};

}  // namespace detail

// Dense row-major float64 array of rank 1-3 that records the operations
// producing it. Tensor is a shared handle: copies alias the same storage and
// graph node, which is what lets parameters be referenced from many places.
//
// A tensor with requires_grad() == false is a constant and never accumulates
// gradient. Leaves with requires_grad() == true are parameters.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor filled(Shape shape, double value, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> values,
                     bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);
  // Row-major nested initialiser for tests and small fixtures.
  static Tensor matrix(std::initializer_list<std::initializer_list<double>> rows,
                       bool requires_grad = false);

  bool defined() const { return impl_ != nullptr; }
  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::ptrdiff_t axis) const;
  std::size_t numel() const;

  std::span<const double> data() const;
  // Direct write access; used by optimisers, initialisers and checkpoint
  // loading. Mutating a tensor that is part of a live graph invalidates it.
  std::span<double> mutable_data();
  double item() const;
  double at(std::size_t i) const;
  double at(std::size_t i, std::size_t j) const;
  double at(std::size_t b, std::size_t i, std::size_t j) const;

  bool requires_grad() const;
  void set_requires_grad(bool value);
  bool has_grad() const;
  // Gradient buffer; zeros of the right size when nothing has accumulated.
  std::vector<double> grad() const;
  std::span<double> mutable_grad();
  void zero_grad();

  bool is_leaf() const;
  const char* op_name() const;

  // Deep copy of the values, detached from any graph.
  Tensor detach() const;
  Tensor reshape(Shape shape) const;  // copy with new shape; gradient flows

  detail::TensorImpl* impl() const { return impl_.get(); }
  const std::shared_ptr<detail::TensorImpl>& impl_ptr() const { return impl_; }
  explicit Tensor(std::shared_ptr<detail::TensorImpl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<detail::TensorImpl> impl_;
};

// Runs reverse-mode differentiation from a scalar loss. Leaf gradients
// accumulate across calls until zero_grad(); intermediate gradients are
// recomputed on every call. Unless retain_graph is set, the graph hanging off
// the loss is released afterwards and a second call only reaches the loss.
void backward(const Tensor& loss, bool retain_graph = false);

// Total elements held by the computed (non-leaf) tensors of the live graph
// below root, root included.
std::size_t graph_element_count(const Tensor& root);

// Suppresses graph recording in the current thread while alive.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_enabled();

}  // namespace client
