#include "qsar/nn/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qsar::nn {

namespace {

constexpr char kMagic[8] = {'Q', 'C', 'K', 'P', 'T', '1', '\0', '\0'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

std::string partition_name(Partition p) {
  return p == Partition::Quantum ? "quantum" : "classical";
}

Partition partition_from(const std::string& s) {
  if (s == "quantum") return Partition::Quantum;
  if (s == "classical") return Partition::Classical;
  throw std::runtime_error("checkpoint: unknown partition " + s);
}

}  // namespace

const CheckpointEntry* Checkpoint::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void save_checkpoint(const std::string& path, const ParamRegistry& registry,
                     const std::map<std::string, std::string>& meta) {
  nlohmann::json manifest;
  manifest["meta"] = meta;
  manifest["entries"] = nlohmann::json::array();
  std::uint64_t offset = 0;
  for (const auto& e : registry.entries()) {
    manifest["entries"].push_back({{"name", e.name},
                                   {"shape", e.tensor.shape()},
                                   {"partition", partition_name(e.partition)},
                                   {"offset", offset}});
    offset += e.tensor.size() * sizeof(double);
  }
  const std::string header = manifest.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t hlen = header.size();
  out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (const auto& e : registry.entries()) {
    out.write(reinterpret_cast<const char*>(e.tensor.values().data()),
              static_cast<std::streamsize>(e.tensor.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("checkpoint: bad magic in " + path);
  }
  std::uint64_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  std::string header(hlen, '\0');
  in.read(header.data(), static_cast<std::streamsize>(hlen));
  if (!in) throw std::runtime_error("checkpoint: truncated header in " + path);
  const auto manifest = nlohmann::json::parse(header);

  Checkpoint ckpt;
  for (auto it = manifest["meta"].begin(); it != manifest["meta"].end(); ++it) {
    ckpt.meta[it.key()] = it.value().get<std::string>();
  }
  const std::streampos payload_start = in.tellg();
  for (const auto& j : manifest["entries"]) {
    CheckpointEntry e;
    e.name = j["name"].get<std::string>();
    e.shape = j["shape"].get<std::vector<int>>();
    e.partition = partition_from(j["partition"].get<std::string>());
    std::size_t n = 1;
    for (int d : e.shape) n *= static_cast<std::size_t>(d);
    e.values.resize(n);
    in.seekg(payload_start + static_cast<std::streamoff>(j["offset"].get<std::uint64_t>()));
    in.read(reinterpret_cast<char*>(e.values.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint: truncated payload in " + path);
    ckpt.entries.push_back(std::move(e));
  }
  return ckpt;
}

void restore_into(const Checkpoint& ckpt, ParamRegistry& registry) {
  if (ckpt.entries.size() != registry.entries().size()) {
    throw std::runtime_error("checkpoint: entry count mismatch");
  }
  for (auto& e : registry.entries()) {
    const CheckpointEntry* c = ckpt.find(e.name);
    if (c == nullptr) throw std::runtime_error("checkpoint: missing " + e.name);
    if (c->shape != e.tensor.shape() || c->partition != e.partition) {
      throw std::runtime_error("checkpoint: shape/partition mismatch for " + e.name);
    }
    e.tensor.values() = c->values;
  }
}

}  // namespace qsar::nn
