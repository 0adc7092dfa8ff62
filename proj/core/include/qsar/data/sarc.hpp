#pragma once

#include <string>

#include "qsar/data/chip.hpp"

namespace qsar::data {

/// SARC container: magic "SARC1", u32 width, u32 height, u8 plane tag
/// (0 = magnitude+phase, 1 = I+Q), then two row-major planes of
/// little-endian 32-bit floats. Label/split are carried by the manifest,
/// not the file.
void save_sarc(const std::string& path, const ComplexChip& chip);

/// Loads either plane encoding; tag 1 (I+Q) is converted to polar form.
ComplexChip load_sarc(const std::string& path);

}  // namespace qsar::data
