// Microbenchmarks for the hot paths: gate kernels, adjoint gradients, and
// full model forward passes.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "qsar/circuits/templates.hpp"
#include "qsar/data/synth.hpp"
#include "qsar/models/bundle.hpp"
#include "qsar/nn/ops.hpp"
#include "qsar/qsim/simulator.hpp"
#include "qsar/qsim/state_vector.hpp"
#include "qsar/util/rng.hpp"

using namespace qsar;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
  auto rng = util::make_rng(seed, "bench.angles");
  std::uniform_real_distribution<double> dist(-pi, pi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

void BM_GateApplication(benchmark::State& state) {
  const int n_qubits = static_cast<int>(state.range(0));
  qsim::StateVector sv(n_qubits);
  double angle = 0.3;
  for (auto _ : state) {
    for (int q = 0; q < n_qubits; ++q) {
      sv.apply_ry(q, angle);
      sv.apply_rz(q, -angle);
      sv.apply_cnot(q, (q + 1) % n_qubits);
    }
    angle += 1e-6;
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * n_qubits * 3);
}
BENCHMARK(BM_GateApplication)->Arg(4)->Arg(8)->Arg(10);

void BM_RunPhaseVqc(benchmark::State& state) {
  const auto prog = circuits::build_phase_vqc();
  const auto inputs = random_angles(prog.n_inputs, 1);
  const auto params = random_angles(prog.n_params, 2);
  for (auto _ : state) {
    auto out = qsim::run(prog, inputs, params);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_RunPhaseVqc);

void BM_AdjointGradient(benchmark::State& state) {
  const auto prog = (state.range(0) == 0)
                        ? circuits::build_patch_encoder(
                              circuits::EncodingStrategy::S1_MagnitudeOnly)
                        : circuits::build_reuploading_vqc8();
  const auto inputs = random_angles(prog.n_inputs, 3);
  const auto params = random_angles(prog.n_params, 4);
  for (auto _ : state) {
    auto res = qsim::adjoint_gradient(prog, inputs, params);
    benchmark::DoNotOptimize(res.jacobian.data());
  }
}
BENCHMARK(BM_AdjointGradient)->Arg(0)->Arg(1);

void BM_ModelForward(benchmark::State& state) {
  data::SynthSpec spec{data::SynthMode::Both, 3, 3, 3, 1};
  const auto chips = data::synth_generate(spec);
  models::ModelBundle bundle;
  switch (state.range(0)) {
    case 0:
      bundle = models::build_hybrid(models::EncodingStrategy::S1_MagnitudeOnly, 3, 1);
      break;
    case 1:
      bundle = models::build_dualpath(3, 1);
      break;
    default:
      bundle = models::build_pure(3, 1);
      break;
  }
  for (auto _ : state) {
    auto out = models::forward(bundle, chips[0], {});
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(BM_ModelForward)->Arg(0)->Arg(1)->Arg(2);

void BM_ForwardBackward(benchmark::State& state) {
  data::SynthSpec spec{data::SynthMode::Both, 3, 3, 3, 1};
  const auto chips = data::synth_generate(spec);
  auto bundle = models::build_hybrid(models::EncodingStrategy::S1_MagnitudeOnly, 3, 1);
  for (auto _ : state) {
    bundle.registry.zero_grads();
    auto logits = models::forward(bundle, chips[0], {});
    auto loss = nn::softmax_cross_entropy(logits, chips[0].label);
    loss.backward();
    benchmark::DoNotOptimize(loss.item());
  }
}
BENCHMARK(BM_ForwardBackward);

}  // namespace

BENCHMARK_MAIN();
