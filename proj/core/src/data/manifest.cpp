#include "qsar/data/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qsar/data/sarc.hpp"

namespace qsar::data {

void Manifest::validate() const {
  if (n_classes < 2) throw std::invalid_argument("Manifest: n_classes < 2");
  std::vector<bool> has_train(n_classes, false), has_test(n_classes, false);
  for (const auto& e : entries) {
    if (e.label < 0 || e.label >= n_classes) {
      throw std::invalid_argument("Manifest: label out of range");
    }
    (e.split == Split::Train ? has_train : has_test)[e.label] = true;
  }
  for (int c = 0; c < n_classes; ++c) {
    if (!has_train[c] || !has_test[c]) {
      throw std::invalid_argument(
          "Manifest: every class needs at least one Train and one Test entry");
    }
  }
}

void save_manifest(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("save_manifest: cannot open " + path);
  out << "path,label,split\n";
  for (const auto& e : manifest.entries) {
    out << e.path << ',' << e.label << ','
        << (e.split == Split::Train ? "train" : "test") << '\n';
  }
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_manifest: cannot open " + path);
  Manifest m;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_manifest: empty file " + path);
  }
  int max_label = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    ManifestEntry e;
    std::string label_str, split_str;
    if (!std::getline(ss, e.path, ',') || !std::getline(ss, label_str, ',') ||
        !std::getline(ss, split_str)) {
      throw std::runtime_error("load_manifest: malformed row: " + line);
    }
    e.label = std::stoi(label_str);
    if (split_str == "train") {
      e.split = Split::Train;
    } else if (split_str == "test") {
      e.split = Split::Test;
    } else {
      throw std::runtime_error("load_manifest: bad split: " + split_str);
    }
    max_label = std::max(max_label, e.label);
    m.entries.push_back(std::move(e));
  }
  m.n_classes = max_label + 1;
  m.validate();
  return m;
}

std::vector<ComplexChip> load_chips(const Manifest& manifest,
                                    const std::string& base_dir) {
  std::vector<ComplexChip> chips;
  chips.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    const auto full = std::filesystem::path(base_dir) / e.path;
    ComplexChip chip = load_sarc(full.string());
    chip.label = e.label;
    chip.split = e.split;
    chips.push_back(std::move(chip));
  }
  return chips;
}

}  // namespace qsar::data
