#include "qsar/data/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qsar/util/rng.hpp"

namespace qsar::data {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kDim = 128;

double wrap_phase(double phi) {
  phi = std::fmod(phi + pi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  return phi - pi;
}

double blob(double r, double c, double cr, double cc, double sigma) {
  const double d2 = (r - cr) * (r - cr) + (c - cc) * (c - cc);
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

ComplexChip make_chip(const SynthSpec& spec, int label, Split split,
                      std::mt19937_64& rng) {
  ComplexChip chip;
  chip.label = label;
  chip.split = split;
  chip.magnitude.resize(kDim * kDim);
  chip.phase.resize(kDim * kDim);

  const bool mag_cue = spec.mode != SynthMode::PhaseOnlyDiscriminative;
  const bool phase_cue = spec.mode != SynthMode::MagDiscriminative;

  std::uniform_real_distribution<double> jitter(-2.0, 2.0);
  std::uniform_real_distribution<double> uniform_phase(-pi, pi);
  std::normal_distribution<double> phase_noise(0.0, 0.15);
  // Rayleigh speckle factor normalized to mean 1, blended so the
  // multiplicative noise sits near 10 dB SNR.
  std::normal_distribution<double> gauss;
  const double rayleigh_mean = std::sqrt(pi / 2.0);
  const double blend = 0.605;

  // Magnitude template: a blob pattern over the 4x4 ROI cell grid. Each
  // class lights the cells of a fixed 16-bit codeword at mid amplitude;
  // codewords differ both spatially and in lit-cell count (2,4,6,...), so
  // classes separate even under summary statistics that average over the
  // grid. Cell 2 always holds a full-brightness reference blob that anchors
  // the per-chip max normalization. Blobs sit at cell centers so position
  // jitter never moves a peak across a cell boundary. Phase-only mode uses
  // one fixed template for every class.
  constexpr int kReferenceCell = 2;
  constexpr unsigned kClassMask[8] = {0x9000, 0x10FB, 0xFDFB, 0x0069,
                                      0x6F00, 0x3FF0, 0xDFF2, 0xFFDA};
  const unsigned mask = mag_cue ? kClassMask[label % 8] : 0x0069u;
  const double jr = jitter(rng), jc = jitter(rng);
  double cell_r[16], cell_c[16];
  for (int k = 0; k < 16; ++k) {
    cell_r[k] = 40.0 + 16.0 * (k / 4) + jr;
    cell_c[k] = 40.0 + 16.0 * (k % 4) + jc;
  }

  // Phase template: gentle planar gradient, class-distinct orientation, no
  // wrap inside the 64x64 ROI.
  const double grad_angle = pi * label / spec.n_classes;
  const double grad_slope = 0.05;

  for (int r = 0; r < kDim; ++r) {
    for (int c = 0; c < kDim; ++c) {
      double mag = 0.02 + blob(r, c, cell_r[kReferenceCell],
                               cell_c[kReferenceCell], 5.0);
      for (int k = 0; k < 16; ++k) {
        if (k == kReferenceCell || ((mask >> k) & 1u) == 0) continue;
        mag += 0.55 * blob(r, c, cell_r[k], cell_c[k], 4.0);
      }
      const double u = gauss(rng), v = gauss(rng);
      const double rayleigh = std::sqrt(u * u + v * v) / rayleigh_mean;
      mag *= std::max(0.0, 1.0 + blend * (rayleigh - 1.0));
      chip.magnitude[r * kDim + c] = static_cast<float>(mag);

      double phi;
      if (phase_cue) {
        phi = grad_slope * ((r - 64.0) * std::cos(grad_angle) +
                            (c - 64.0) * std::sin(grad_angle)) +
              phase_noise(rng);
      } else {
        phi = uniform_phase(rng);
      }
      chip.phase[r * kDim + c] = static_cast<float>(wrap_phase(phi));
    }
  }
  return chip;
}

}  // namespace

std::vector<ComplexChip> synth_generate(const SynthSpec& spec) {
  if (spec.n_classes < 2) {
    throw std::invalid_argument("synth_generate: n_classes must be >= 2");
  }
  if (spec.n_train < spec.n_classes || spec.n_test < spec.n_classes) {
    throw std::invalid_argument("synth_generate: need at least one chip per class per split");
  }
  std::vector<ComplexChip> chips;
  chips.reserve(spec.n_train + spec.n_test);
  for (int i = 0; i < spec.n_train; ++i) {
    auto rng = util::make_rng(spec.seed, "data.train", i);
    chips.push_back(make_chip(spec, i % spec.n_classes, Split::Train, rng));
  }
  for (int i = 0; i < spec.n_test; ++i) {
    auto rng = util::make_rng(spec.seed, "data.test", i);
    chips.push_back(make_chip(spec, i % spec.n_classes, Split::Test, rng));
  }
  return chips;
}

}  // namespace qsar::data
