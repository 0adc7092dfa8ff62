#pragma once

#include <string>
#include <vector>

#include "qsar/nn/tensor.hpp"

namespace qsar::nn {

enum class Partition { Quantum, Classical };

struct ParamEntry {
  std::string name;  // "component/param" path; first segment names the component
  Tensor tensor;
  Partition partition;
};

struct ParamCounts {
  long quantum = 0;
  long classical = 0;
};

/// Ordered set of named trainable tensors split into quantum and classical
/// partitions. Names are unique; insertion order is the checkpoint order.
class ParamRegistry {
 public:
  Tensor add(const std::string& name, Tensor tensor, Partition partition);

  const std::vector<ParamEntry>& entries() const { return entries_; }
  std::vector<ParamEntry>& entries() { return entries_; }
  const ParamEntry* find(const std::string& name) const;

  ParamCounts counts() const;
  void zero_grads();

 private:
  std::vector<ParamEntry> entries_;
};

}  // namespace qsar::nn
