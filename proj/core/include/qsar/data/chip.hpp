#pragma once

#include <string>
#include <vector>

namespace qsar::data {

enum class Split { Train, Test };

/// Complex-valued image chip in polar form: a magnitude plane (linear
/// amplitude, >= 0) and a phase plane wrapped to [-pi, pi), both row-major.
struct ComplexChip {
  int width = 128;
  int height = 128;
  std::vector<float> magnitude;
  std::vector<float> phase;
  int label = 0;
  Split split = Split::Train;
};

/// 64x64 region of interest extracted from a chip, promoted to double for
/// the numeric pipeline.
struct Roi {
  static constexpr int kSize = 64;
  std::vector<double> magnitude;  // 64*64
  std::vector<double> phase;
};

}  // namespace qsar::data
