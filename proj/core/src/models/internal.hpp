#pragma once

#include "qsar/models/bundle.hpp"

namespace qsar::models::detail {

/// Magnitude path shared by the hybrid model and the dual-path model:
/// patch circuits -> projection -> transformer -> CLS vector (64).
nn::Tensor magnitude_cls(const ModelBundle& bundle,
                         const data::ComplexChip& chip,
                         const ForwardOptions& opts);

nn::Tensor init_quantum_angles(int n, std::mt19937_64& rng);

}  // namespace qsar::models::detail
