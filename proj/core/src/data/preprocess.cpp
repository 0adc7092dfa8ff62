#include "qsar/data/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qsar::data {

namespace {
constexpr double pi = std::numbers::pi;
}

Roi center_crop(const ComplexChip& chip) {
  if (chip.width != 128 || chip.height != 128) {
    throw std::invalid_argument("center_crop: expects a 128x128 chip");
  }
  Roi roi;
  roi.magnitude.reserve(Roi::kSize * Roi::kSize);
  roi.phase.reserve(Roi::kSize * Roi::kSize);
  for (int r = 32; r < 96; ++r) {
    for (int c = 32; c < 96; ++c) {
      roi.magnitude.push_back(chip.magnitude[r * 128 + c]);
      roi.phase.push_back(chip.phase[r * 128 + c]);
    }
  }
  return roi;
}

std::vector<double> normalize_magnitude(std::span<const double> magnitude) {
  double mx = 0.0;
  for (double v : magnitude) mx = std::max(mx, v);
  std::vector<double> angles(magnitude.size(), 0.0);
  if (mx > 0.0) {
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
      angles[i] = pi * magnitude[i] / mx;
    }
  }
  return angles;
}

std::vector<double> normalize_phase(std::span<const double> phase) {
  std::vector<double> angles(phase.size());
  for (std::size_t i = 0; i < phase.size(); ++i) {
    angles[i] = (phase[i] + pi) / 2.0;
  }
  return angles;
}

IqAngles to_iq(std::span<const double> magnitude, std::span<const double> phase) {
  if (magnitude.size() != phase.size()) {
    throw std::invalid_argument("to_iq: plane size mismatch");
  }
  double mx = 0.0;
  for (double v : magnitude) mx = std::max(mx, v);
  IqAngles out;
  out.i_angles.assign(magnitude.size(), 0.0);
  out.q_angles.assign(magnitude.size(), 0.0);
  if (mx > 0.0) {
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
      out.i_angles[i] = pi * magnitude[i] * std::cos(phase[i]) / mx;
      out.q_angles[i] = pi * magnitude[i] * std::sin(phase[i]) / mx;
    }
  }
  return out;
}

std::vector<int> topk_indices(std::span<const double> values, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > values.size()) {
    throw std::invalid_argument("topk_indices: k out of range");
  }
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&values](int a, int b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  idx.resize(k);
  return idx;
}

std::vector<double> extract_patch(std::span<const double> plane64, int patch) {
  if (plane64.size() != 64 * 64 || patch < 0 || patch >= 16) {
    throw std::invalid_argument("extract_patch: bad arguments");
  }
  const int pr = patch / 4, pc = patch % 4;
  std::vector<double> out;
  out.reserve(256);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      out.push_back(plane64[(pr * 16 + r) * 64 + pc * 16 + c]);
    }
  }
  return out;
}

std::vector<double> avg_pool(std::span<const double> plane, int in_h, int in_w,
                             int out_h, int out_w) {
  if (static_cast<int>(plane.size()) != in_h * in_w || out_h <= 0 ||
      out_w <= 0 || in_h % out_h != 0 || in_w % out_w != 0) {
    throw std::invalid_argument("avg_pool: bad arguments");
  }
  const int bh = in_h / out_h, bw = in_w / out_w;
  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w, 0.0);
  for (int r = 0; r < in_h; ++r) {
    for (int c = 0; c < in_w; ++c) {
      out[(r / bh) * out_w + (c / bw)] += plane[r * in_w + c];
    }
  }
  const double inv = 1.0 / (bh * bw);
  for (auto& v : out) v *= inv;
  return out;
}

}  // namespace qsar::data
