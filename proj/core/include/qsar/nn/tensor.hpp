#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace qsar::nn {

namespace detail {
struct Node {
  std::vector<int> shape;
  std::vector<double> values;
  std::vector<double> grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Accumulates this node's grad into its parents. Captures raw Node
  // pointers; the parents vector keeps them alive for the graph's lifetime.
  std::function<void()> backward_fn;

  std::size_t size() const { return values.size(); }
  void ensure_grad() {
    if (grad.size() != values.size()) grad.assign(values.size(), 0.0);
  }
};
}  // namespace detail

/// Dense real tensor with a reverse-mode tape. Copies share the underlying
/// node (value semantics on the handle, not the buffer).
class Tensor {
 public:
  Tensor() = default;

  static Tensor leaf(std::vector<int> shape, std::vector<double> values,
                     bool requires_grad = false);
  static Tensor zeros(std::vector<int> shape, bool requires_grad = false);
  static Tensor full(std::vector<int> shape, double value);
  static Tensor scalar(double value);

  bool defined() const { return node_ != nullptr; }
  const std::vector<int>& shape() const { return node_->shape; }
  int dim(int i) const { return node_->shape[i]; }
  std::size_t size() const { return node_->values.size(); }
  bool requires_grad() const { return node_->requires_grad; }

  std::vector<double>& values() { return node_->values; }
  const std::vector<double>& values() const { return node_->values; }
  // Tensor is a shared handle; gradient storage is mutable through const
  // handles (shared_ptr semantics), which backward closures rely on.
  std::vector<double>& grad() const;

  double item() const;

  /// Reverse sweep from a scalar output; accumulates into .grad() of every
  /// reachable node that requires grad.
  void backward();

  void zero_grad();

  std::shared_ptr<detail::Node> node() const { return node_; }
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<detail::Node> node_;
};

namespace detail {
/// Create a non-leaf node; requires_grad is inferred from parents and the
/// backward_fn is attached only when some parent needs gradients.
Tensor make_op(std::vector<int> shape, std::vector<double> values,
               std::vector<Tensor> parents,
               std::function<void(Node&)> make_backward);
}  // namespace detail

}  // namespace qsar::nn
