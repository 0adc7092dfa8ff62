#pragma once

#include <string>
#include <vector>

#include "qsar/data/chip.hpp"

namespace qsar::data {

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  int label = 0;
  Split split = Split::Train;
};

/// Dataset listing stored as UTF-8 CSV `path,label,split` with a header row.
struct Manifest {
  std::vector<ManifestEntry> entries;
  int n_classes = 0;

  /// Throws unless labels < n_classes and every class has at least one
  /// Train and one Test entry.
  void validate() const;
};

void save_manifest(const std::string& path, const Manifest& manifest);
Manifest load_manifest(const std::string& path);

/// Load every chip referenced by the manifest; entry paths resolve relative
/// to base_dir. Labels/splits come from the manifest.
std::vector<ComplexChip> load_chips(const Manifest& manifest,
                                    const std::string& base_dir);

}  // namespace qsar::data
