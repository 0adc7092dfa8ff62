#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsar/nn/registry.hpp"

namespace qsar::nn {

struct CheckpointEntry {
  std::string name;
  std::vector<int> shape;
  Partition partition;
  std::vector<double> values;
};

struct Checkpoint {
  std::map<std::string, std::string> meta;  // model kind, strategy, ...
  std::vector<CheckpointEntry> entries;

  const CheckpointEntry* find(const std::string& name) const;
};

/// Single-file format: magic, JSON manifest (name, shape, partition, byte
/// offset), then raw little-endian IEEE-754 doubles. Round trips byte-exact.
void save_checkpoint(const std::string& path, const ParamRegistry& registry,
                     const std::map<std::string, std::string>& meta);

Checkpoint load_checkpoint(const std::string& path);

/// Copy checkpoint values into a registry built with the same topology;
/// throws on any name/shape/partition mismatch.
void restore_into(const Checkpoint& ckpt, ParamRegistry& registry);

}  // namespace qsar::nn
