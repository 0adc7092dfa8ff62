#include "qsar/nn/registry.hpp"

#include <stdexcept>

namespace qsar::nn {

Tensor ParamRegistry::add(const std::string& name, Tensor tensor,
                          Partition partition) {
  if (find(name) != nullptr) {
    throw std::invalid_argument("ParamRegistry: duplicate name " + name);
  }
  if (!tensor.requires_grad()) {
    throw std::invalid_argument("ParamRegistry: parameter must require grad");
  }
  entries_.push_back({name, tensor, partition});
  return tensor;
}

const ParamEntry* ParamRegistry::find(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

ParamCounts ParamRegistry::counts() const {
  ParamCounts c;
  for (const auto& e : entries_) {
    if (e.partition == Partition::Quantum) {
      c.quantum += static_cast<long>(e.tensor.size());
    } else {
      c.classical += static_cast<long>(e.tensor.size());
    }
  }
  return c;
}

void ParamRegistry::zero_grads() {
  for (auto& e : entries_) e.tensor.zero_grad();
}

}  // namespace qsar::nn
