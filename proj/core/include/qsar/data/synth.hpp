#pragma once

#include <cstdint>
#include <vector>

#include "qsar/data/chip.hpp"

namespace qsar::data {

/// Which cue separates the classes in generated data.
/// MagDiscriminative: per-class magnitude templates (offset blobs), phase is
///   class-independent uniform noise.
/// PhaseOnlyDiscriminative: identical magnitude template for all classes,
///   phase is a class-dependent planar gradient plus wrapped Gaussian noise.
/// Both: both cues present.
enum class SynthMode { MagDiscriminative, PhaseOnlyDiscriminative, Both };

struct SynthSpec {
  SynthMode mode = SynthMode::MagDiscriminative;
  int n_classes = 3;
  int n_train = 90;  // total across classes
  int n_test = 60;
  std::uint64_t seed = 0;
};

/// Deterministic per seed; chips carry labels and splits, classes are
/// round-robin balanced within each split.
std::vector<ComplexChip> synth_generate(const SynthSpec& spec);

}  // namespace qsar::data
