#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "qsar/circuits/templates.hpp"
#include "qsar/qsim/simulator.hpp"
#include "qsar/util/rng.hpp"

using namespace qsar;
using circuits::EncodingStrategy;
using qsim::CircuitProgram;
using qsim::GateKind;
using qsim::SlotKind;

namespace {

constexpr double pi = std::numbers::pi;

std::map<int, int> encoding_slot_counts(const CircuitProgram& prog) {
  std::map<int, int> counts;
  for (const auto& g : prog.gates) {
    if (g.kind != GateKind::CNOT && g.angle.kind == SlotKind::Encoding) {
      ++counts[g.angle.index];
    }
  }
  return counts;
}

void check_all_zero_identity(const CircuitProgram& prog) {
  std::vector<double> inputs(prog.n_inputs, 0.0), params(prog.n_params, 0.0);
  auto out = qsim::run(prog, inputs, params);
  REQUIRE(out.size() == prog.observables.size());
  for (double z : out) CHECK(z == doctest::Approx(1.0).epsilon(1e-14));
}

}  // namespace

TEST_CASE("patch encoder S1: counts and structure") {
  auto prog = circuits::build_patch_encoder(EncodingStrategy::S1_MagnitudeOnly);
  prog.validate();
  CHECK(prog.n_qubits == 6);
  CHECK(prog.n_inputs == 6);
  CHECK(prog.n_params == 12);
  CHECK(prog.gates.size() == 34);  // 2 layers x (6 enc + 5 CNOT + 6 train)
  CHECK(prog.observables.size() == 6);
  for (const auto& g : prog.gates) CHECK(g.kind != GateKind::RZ);
  // Reuploading: each encoding slot appears once per layer.
  for (const auto& [slot, count] : encoding_slot_counts(prog)) {
    CHECK(count == 2);
    CHECK(slot < 6);
  }
}

TEST_CASE("patch encoder S2/S3: one RZ encoding per qubit per layer") {
  for (auto strat : {EncodingStrategy::S2_JointComplex, EncodingStrategy::S3_IQ}) {
    auto prog = circuits::build_patch_encoder(strat);
    prog.validate();
    CHECK(prog.n_inputs == 12);
    CHECK(prog.n_params == 12);
    int rz_encoding = 0;
    for (const auto& g : prog.gates) {
      if (g.kind == GateKind::RZ) {
        CHECK(g.angle.kind == SlotKind::Encoding);
        ++rz_encoding;
      }
    }
    CHECK(rz_encoding == 12);  // 6 qubits x 2 layers
  }
}

TEST_CASE("patch encoder rejects non-hybrid strategies") {
  CHECK_THROWS(circuits::build_patch_encoder(EncodingStrategy::S4_DualPath));
  CHECK_THROWS(circuits::build_patch_encoder(EncodingStrategy::S5_PureQuantum));
}

TEST_CASE("all-zero inputs and params reduce every template to identity") {
  check_all_zero_identity(circuits::build_patch_encoder(EncodingStrategy::S1_MagnitudeOnly));
  check_all_zero_identity(circuits::build_patch_encoder(EncodingStrategy::S2_JointComplex));
  check_all_zero_identity(circuits::build_patch_encoder(EncodingStrategy::S3_IQ));
  check_all_zero_identity(circuits::build_phase_vqc());
  check_all_zero_identity(circuits::build_patch_vqc4());
  check_all_zero_identity(circuits::build_reuploading_vqc8());
  check_all_zero_identity(circuits::build_fusion_vqc(3));
  check_all_zero_identity(circuits::build_fusion_vqc(8));
}

TEST_CASE("S3 with Q = 0 matches S1 with the same magnitude inputs") {
  auto s1 = circuits::build_patch_encoder(EncodingStrategy::S1_MagnitudeOnly);
  auto s3 = circuits::build_patch_encoder(EncodingStrategy::S3_IQ);
  auto rng = util::make_rng(9, "test.circuits.s3");
  std::uniform_real_distribution<double> dist(-pi, pi);
  std::vector<double> mag(6), params(12);
  for (auto& x : mag) x = dist(rng);
  for (auto& x : params) x = dist(rng);
  std::vector<double> iq(12, 0.0);
  std::copy(mag.begin(), mag.end(), iq.begin());  // slots 6..11 (Q) stay zero
  auto a = qsim::run(s1, mag, params);
  auto b = qsim::run(s3, iq, params);
  for (std::size_t q = 0; q < a.size(); ++q) {
    CHECK(a[q] == doctest::Approx(b[q]).epsilon(1e-12));
  }
}

TEST_CASE("phase VQC: 8 qubits, disjoint per-layer slots covering 0..63") {
  auto prog = circuits::build_phase_vqc();
  prog.validate();
  CHECK(prog.n_qubits == 8);
  CHECK(prog.n_inputs == 64);
  CHECK(prog.n_params == 128);  // 8 qubits x 8 layers x (RY + RZ)
  auto counts = encoding_slot_counts(prog);
  CHECK(counts.size() == 64);
  for (const auto& [slot, count] : counts) CHECK(count == 1);
}

TEST_CASE("patch VQC4: full reuploading, shared-slot gradient sums per layer") {
  auto prog = circuits::build_patch_vqc4();
  prog.validate();
  CHECK(prog.n_qubits == 4);
  CHECK(prog.n_inputs == 4);
  CHECK(prog.n_params == 32);  // 4 x 4 x 2
  for (const auto& [slot, count] : encoding_slot_counts(prog)) CHECK(count == 4);

  // Oracle: rewrite the program so each encoding occurrence gets its own
  // slot, feed the duplicated inputs, and sum the per-occurrence shift
  // gradients. The shared-slot gradient must equal that sum.
  CircuitProgram split = prog;
  std::vector<int> owner;  // split slot -> original slot
  for (auto& g : split.gates) {
    if (g.kind != GateKind::CNOT && g.angle.kind == SlotKind::Encoding) {
      owner.push_back(g.angle.index);
      g.angle.index = static_cast<int>(owner.size()) - 1;
    }
  }
  split.n_inputs = static_cast<int>(owner.size());

  auto rng = util::make_rng(21, "test.circuits.vqc4");
  std::uniform_real_distribution<double> dist(0.0, pi);
  std::vector<double> inputs(4), params(32);
  for (auto& x : inputs) x = dist(rng);
  for (auto& x : params) x = dist(rng);
  std::vector<double> split_inputs(owner.size());
  for (std::size_t i = 0; i < owner.size(); ++i) split_inputs[i] = inputs[owner[i]];

  for (int slot = 0; slot < 4; ++slot) {
    auto shared = qsim::parameter_shift_gradient(prog, inputs, params,
                                                 SlotKind::Encoding, slot);
    std::vector<double> summed(shared.size(), 0.0);
    for (std::size_t i = 0; i < owner.size(); ++i) {
      if (owner[i] != slot) continue;
      auto g = qsim::parameter_shift_gradient(split, split_inputs, params,
                                              SlotKind::Encoding,
                                              static_cast<int>(i));
      for (std::size_t q = 0; q < g.size(); ++q) summed[q] += g[q];
    }
    for (std::size_t q = 0; q < shared.size(); ++q) {
      CHECK(shared[q] == doctest::Approx(summed[q]).epsilon(1e-10));
    }
  }
}

TEST_CASE("reuploading VQC8: each slot consumed once per layer (4 total)") {
  auto prog = circuits::build_reuploading_vqc8();
  prog.validate();
  CHECK(prog.n_qubits == 8);
  CHECK(prog.n_inputs == 64);
  CHECK(prog.n_params == 64);  // 8 x 4 x 2
  auto counts = encoding_slot_counts(prog);
  CHECK(counts.size() == 64);
  for (const auto& [slot, count] : counts) CHECK(count == 4);
}

TEST_CASE("fusion VQC: class-count scaling and inert zero padding") {
  auto f3 = circuits::build_fusion_vqc(3);
  f3.validate();
  CHECK(f3.n_qubits == 3);
  CHECK(f3.n_inputs == 16);
  CHECK(f3.n_params == 24);  // 3 x 4 x 2
  CHECK(f3.observables.size() == 3);

  auto f8 = circuits::build_fusion_vqc(8);
  f8.validate();
  CHECK(f8.n_inputs == 16);
  CHECK(f8.n_params == 64);

  // Pure-stack totals: 32 + 64 + 64 + {24, 64}.
  CHECK(32 + 64 + 64 + f3.n_params == 184);
  CHECK(32 + 64 + 64 + f8.n_params == 224);

  // n_class=3: ceil(16/3) = 6 sub-layers of width 3 leave 2 padded gates per
  // layer; padding is Fixed(0), so it contributes no gradient column at all.
  int fixed_zero = 0;
  for (const auto& g : f3.gates) {
    if (g.kind != GateKind::CNOT && g.angle.kind == SlotKind::Fixed) {
      CHECK(g.angle.fixed_value == 0.0);
      ++fixed_zero;
    }
  }
  CHECK(fixed_zero == 8);  // 2 per layer x 4 layers
  // n_class=8: 16 features fill exactly 2 sub-layers, no padding.
  for (const auto& g : f8.gates) {
    if (g.kind != GateKind::CNOT) CHECK(g.angle.kind != SlotKind::Fixed);
  }
}

TEST_CASE("template parameter counts match the published accounting") {
  CHECK(circuits::build_patch_encoder(EncodingStrategy::S1_MagnitudeOnly).n_params == 12);
  CHECK(circuits::build_phase_vqc().n_params == 128);
  CHECK(circuits::build_patch_vqc4().n_params == 32);
  CHECK(circuits::build_reuploading_vqc8().n_params == 64);
  CHECK(circuits::build_fusion_vqc(3).n_params == 24);
  CHECK(circuits::build_fusion_vqc(8).n_params == 64);
}
