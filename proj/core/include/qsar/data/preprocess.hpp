#pragma once

#include <span>
#include <vector>

#include "qsar/data/chip.hpp"

namespace qsar::data {

/// Rows/cols 32..96 of the 128x128 planes.
Roi center_crop(const ComplexChip& chip);

/// Per-chip max normalization to [0,1], then scaled by pi. An all-zero ROI
/// maps to all-zero angles.
std::vector<double> normalize_magnitude(std::span<const double> magnitude);

/// Affine map (phi + pi) / 2 from [-pi, pi) onto [0, pi).
std::vector<double> normalize_phase(std::span<const double> phase);

/// I/Q encoding angles: (pi*I', pi*Q') with I' = |x|cos(phi)/max|x| and
/// Q' = |x|sin(phi)/max|x|, so I'^2 + Q'^2 <= 1 per pixel.
struct IqAngles {
  std::vector<double> i_angles;
  std::vector<double> q_angles;
};
IqAngles to_iq(std::span<const double> magnitude, std::span<const double> phase);

/// Indices of the k largest values, ordered by value descending with ties
/// broken by ascending index. Always returns k entries (values may be zero).
std::vector<int> topk_indices(std::span<const double> values, int k);

/// Patch p (row-major over the 4x4 grid) of a 64x64 plane as a 16x16 block.
std::vector<double> extract_patch(std::span<const double> plane64, int patch);

/// Non-overlapping block means; in_h/in_w must be multiples of out_h/out_w.
std::vector<double> avg_pool(std::span<const double> plane, int in_h, int in_w,
                             int out_h, int out_w);

}  // namespace qsar::data
