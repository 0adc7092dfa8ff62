#include "qsar/nn/tensor.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace qsar::nn {

namespace {
std::size_t shape_size(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d <= 0) throw std::invalid_argument("Tensor: non-positive dimension");
    n *= static_cast<std::size_t>(d);
  }
  return n;
}
}  // namespace

Tensor Tensor::leaf(std::vector<int> shape, std::vector<double> values,
                    bool requires_grad) {
  if (shape_size(shape) != values.size()) {
    throw std::invalid_argument("Tensor: values length does not match shape");
  }
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  node->requires_grad = requires_grad;
  if (requires_grad) node->ensure_grad();
  return Tensor(std::move(node));
}

Tensor Tensor::zeros(std::vector<int> shape, bool requires_grad) {
  std::vector<double> v(shape_size(shape), 0.0);
  return leaf(std::move(shape), std::move(v), requires_grad);
}

Tensor Tensor::full(std::vector<int> shape, double value) {
  std::vector<double> v(shape_size(shape), value);
  return leaf(std::move(shape), std::move(v), false);
}

Tensor Tensor::scalar(double value) { return leaf({1}, {value}, false); }

std::vector<double>& Tensor::grad() const {
  node_->ensure_grad();
  return node_->grad;
}

double Tensor::item() const {
  if (size() != 1) throw std::logic_error("Tensor::item: not a scalar");
  return node_->values[0];
}

void Tensor::zero_grad() {
  node_->ensure_grad();
  std::fill(node_->grad.begin(), node_->grad.end(), 0.0);
}

void Tensor::backward() {
  if (size() != 1) throw std::logic_error("Tensor::backward: not a scalar");

  // Post-order DFS for a topological order, then run backward in reverse.
  std::vector<detail::Node*> order;
  std::unordered_set<detail::Node*> visited;
  struct Frame {
    detail::Node* node;
    std::size_t next_parent;
  };
  std::vector<Frame> stack;
  stack.push_back({node_.get(), 0});
  visited.insert(node_.get());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_parent < f.node->parents.size()) {
      detail::Node* p = f.node->parents[f.next_parent++].get();
      if (visited.insert(p).second) stack.push_back({p, 0});
    } else {
      order.push_back(f.node);
      stack.pop_back();
    }
  }

  for (detail::Node* n : order) n->ensure_grad();
  node_->grad[0] = 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if ((*it)->backward_fn) (*it)->backward_fn();
  }
}

namespace detail {

Tensor make_op(std::vector<int> shape, std::vector<double> values,
               std::vector<Tensor> parents,
               std::function<void(Node&)> make_backward) {
  if (shape_size(shape) != values.size()) {
    throw std::invalid_argument("make_op: values length does not match shape");
  }
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  bool needs = false;
  for (const auto& p : parents) needs = needs || p.requires_grad();
  node->requires_grad = needs;
  if (needs) {
    node->parents.reserve(parents.size());
    for (auto& p : parents) node->parents.push_back(p.node());
    Node* self = node.get();
    node->backward_fn = [self, fn = std::move(make_backward)]() { fn(*self); };
  }
  return Tensor(std::move(node));
}

}  // namespace detail

}  // namespace qsar::nn
