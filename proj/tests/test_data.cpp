#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "qsar/data/manifest.hpp"
#include "qsar/data/preprocess.hpp"
#include "qsar/data/sarc.hpp"
#include "qsar/data/synth.hpp"
#include "qsar/util/rng.hpp"

using namespace qsar;
using data::ComplexChip;

namespace {

constexpr double pi = std::numbers::pi;

ComplexChip blank_chip() {
  ComplexChip chip;
  chip.magnitude.assign(128 * 128, 0.0f);
  chip.phase.assign(128 * 128, 0.0f);
  return chip;
}

// Magnitude-only nearest-centroid classifier on pooled 8x8 features; the
// independent oracle for generator separability.
double nearest_centroid_accuracy(const std::vector<ComplexChip>& chips,
                                 int n_classes) {
  std::vector<std::vector<double>> centroids(n_classes, std::vector<double>(64, 0.0));
  std::vector<int> counts(n_classes, 0);
  auto features = [](const ComplexChip& chip) {
    auto roi = data::center_crop(chip);
    return data::avg_pool(roi.magnitude, 64, 64, 8, 8);
  };
  for (const auto& chip : chips) {
    if (chip.split != data::Split::Train) continue;
    auto f = features(chip);
    for (int i = 0; i < 64; ++i) centroids[chip.label][i] += f[i];
    ++counts[chip.label];
  }
  for (int c = 0; c < n_classes; ++c) {
    for (auto& v : centroids[c]) v /= counts[c];
  }
  int correct = 0, total = 0;
  for (const auto& chip : chips) {
    if (chip.split != data::Split::Test) continue;
    auto f = features(chip);
    int best = 0;
    double best_d = 1e300;
    for (int c = 0; c < n_classes; ++c) {
      double d = 0.0;
      for (int i = 0; i < 64; ++i) {
        d += (f[i] - centroids[c][i]) * (f[i] - centroids[c][i]);
      }
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    correct += (best == chip.label);
    ++total;
  }
  return static_cast<double>(correct) / total;
}

}  // namespace

TEST_CASE("center_crop: constant plane, impulse index arithmetic, round trip") {
  auto chip = blank_chip();
  std::fill(chip.magnitude.begin(), chip.magnitude.end(), 2.5f);
  auto roi = data::center_crop(chip);
  REQUIRE(roi.magnitude.size() == 64u * 64u);
  for (double v : roi.magnitude) CHECK(v == 2.5);

  auto chip2 = blank_chip();
  chip2.magnitude[64 * 128 + 64] = 1.0f;
  auto roi2 = data::center_crop(chip2);
  CHECK(roi2.magnitude[32 * 64 + 32] == 1.0);
  CHECK(std::accumulate(roi2.magnitude.begin(), roi2.magnitude.end(), 0.0) == 1.0);

  // crop(embed(roi)) == roi: place a known ROI in the chip center.
  auto chip3 = blank_chip();
  auto rng = util::make_rng(1, "test.data.crop");
  std::vector<double> want(64 * 64);
  for (auto& v : want) v = static_cast<float>((rng() % 1000) / 997.0);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      chip3.magnitude[(r + 32) * 128 + (c + 32)] =
          static_cast<float>(want[r * 64 + c]);
    }
  }
  auto roi3 = data::center_crop(chip3);
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(roi3.magnitude[i] == static_cast<float>(want[i]));
  }
}

TEST_CASE("normalize_magnitude: max maps to pi, zeros stay zero, scale invariant") {
  std::vector<double> roi{0.0, 1.0, 2.0, 4.0};
  auto angles = data::normalize_magnitude(roi);
  CHECK(angles[3] == doctest::Approx(pi).epsilon(1e-15));
  CHECK(angles[0] == 0.0);
  CHECK(angles[1] == doctest::Approx(pi / 4).epsilon(1e-12));

  std::vector<double> zeros(16, 0.0);
  for (double a : data::normalize_magnitude(zeros)) CHECK(a == 0.0);

  std::vector<double> doubled{0.0, 2.0, 4.0, 8.0};
  auto angles2 = data::normalize_magnitude(doubled);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    CHECK(angles2[i] == doctest::Approx(angles[i]).epsilon(1e-14));
  }
}

TEST_CASE("normalize_phase: affine endpoints") {
  std::vector<double> phases{-pi, 0.0, std::nextafter(pi, 0.0)};
  auto a = data::normalize_phase(phases);
  CHECK(a[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(a[2] == doctest::Approx(pi).epsilon(1e-12));
  for (double v : a) {
    CHECK(v >= 0.0);
    CHECK(v <= pi);
  }
}

TEST_CASE("to_iq: trig identities and magnitude reconstruction") {
  std::vector<double> mag{1.0, 2.0, 0.5};
  std::vector<double> phase{0.0, pi / 2, -2.1};
  auto iq = data::to_iq(mag, phase);
  // phi = 0: Q angle 0, I angle = pi * |x| / max|x|.
  CHECK(iq.q_angles[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(iq.i_angles[0] == doctest::Approx(pi * 0.5).epsilon(1e-12));
  // phi = pi/2: I = 0, Q = |x| (max element -> angle pi).
  CHECK(iq.i_angles[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(iq.q_angles[1] == doctest::Approx(pi).epsilon(1e-12));
  for (std::size_t k = 0; k < mag.size(); ++k) {
    const double ip = iq.i_angles[k] / pi, qp = iq.q_angles[k] / pi;
    CHECK(ip * ip + qp * qp <= 1.0 + 1e-12);
    // sqrt(I^2 + Q^2) recovers |x| after undoing the max normalization.
    CHECK(std::hypot(ip, qp) * 2.0 == doctest::Approx(mag[k]).epsilon(1e-12));
  }
}

TEST_CASE("topk_indices: sort oracle, tie rule, totality") {
  std::vector<double> descending(256);
  for (int i = 0; i < 256; ++i) descending[i] = 256.0 - i;
  auto idx = data::topk_indices(descending, 6);
  CHECK(idx == std::vector<int>{0, 1, 2, 3, 4, 5});

  std::vector<double> equal(256, 3.0);
  CHECK(data::topk_indices(equal, 6) == std::vector<int>{0, 1, 2, 3, 4, 5});

  std::vector<double> sparse(256, 0.0);
  sparse[9] = 5.0;
  auto idx2 = data::topk_indices(sparse, 6);
  REQUIRE(idx2.size() == 6);
  CHECK(idx2[0] == 9);
  CHECK(idx2[1] == 0);  // zero ties break by ascending index

  // Brute-force full-sort oracle on random values.
  auto rng = util::make_rng(2, "test.data.topk");
  std::vector<double> values(256);
  for (auto& v : values) v = static_cast<double>(rng() % 64);  // force ties
  std::vector<int> order(256);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  auto got = data::topk_indices(values, 6);
  CHECK(got == std::vector<int>(order.begin(), order.begin() + 6));
}

TEST_CASE("extract_patch: reassembling all 16 patches reproduces the ROI") {
  auto rng = util::make_rng(3, "test.data.patch");
  std::vector<double> roi(64 * 64);
  for (auto& v : roi) v = static_cast<double>(rng() % 4096);
  std::vector<double> rebuilt(64 * 64, -1.0);
  for (int p = 0; p < 16; ++p) {
    auto patch = data::extract_patch(roi, p);
    REQUIRE(patch.size() == 256u);
    const int pr = (p / 4) * 16, pc = (p % 4) * 16;
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 16; ++c) {
        rebuilt[(pr + r) * 64 + (pc + c)] = patch[r * 16 + c];
      }
    }
  }
  CHECK(rebuilt == roi);
}

TEST_CASE("avg_pool: constants, checkerboard, impulse, global mean") {
  std::vector<double> constant(64 * 64, 1.5);
  for (double v : data::avg_pool(constant, 64, 64, 8, 8)) CHECK(v == 1.5);

  std::vector<double> checker(64 * 64);
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) checker[r * 64 + c] = (r + c) % 2;
  }
  for (double v : data::avg_pool(checker, 64, 64, 8, 8)) CHECK(v == 0.5);

  std::vector<double> impulse(64 * 64, 0.0);
  impulse[0] = 64.0;
  auto pooled = data::avg_pool(impulse, 64, 64, 8, 8);
  CHECK(pooled[0] == 1.0);
  CHECK(std::accumulate(pooled.begin(), pooled.end(), 0.0) == 1.0);

  // Global mean preservation on random data.
  auto rng = util::make_rng(4, "test.data.pool");
  std::vector<double> plane(16 * 16);
  for (auto& v : plane) v = static_cast<double>(rng() % 1024) / 7.0;
  auto small = data::avg_pool(plane, 16, 16, 2, 2);
  const double mean_in =
      std::accumulate(plane.begin(), plane.end(), 0.0) / plane.size();
  const double mean_out =
      std::accumulate(small.begin(), small.end(), 0.0) / small.size();
  CHECK(mean_in == doctest::Approx(mean_out).epsilon(1e-12));
}

TEST_CASE("synth: magnitude cue separable, phase-only magnitude near chance") {
  data::SynthSpec mag_spec{data::SynthMode::MagDiscriminative, 3, 90, 60, 7};
  auto mag_chips = data::synth_generate(mag_spec);
  REQUIRE(mag_chips.size() == 150u);
  CHECK(nearest_centroid_accuracy(mag_chips, 3) >= 0.95);

  data::SynthSpec ph_spec{data::SynthMode::PhaseOnlyDiscriminative, 3, 90, 60, 7};
  auto ph_chips = data::synth_generate(ph_spec);
  const double chance = 1.0 / 3.0;
  CHECK(nearest_centroid_accuracy(ph_chips, 3) <= chance + 0.05);

  // Phase stays wrapped and magnitudes stay non-negative.
  for (const auto& chip : mag_chips) {
    for (float m : chip.magnitude) CHECK(m >= 0.0f);
    for (float p : chip.phase) {
      CHECK(p >= -static_cast<float>(pi));
      CHECK(p < static_cast<float>(pi) + 1e-6f);
    }
  }
}

TEST_CASE("synth: determinism and degenerate class count") {
  data::SynthSpec spec{data::SynthMode::Both, 3, 9, 6, 42};
  auto a = data::synth_generate(spec);
  auto b = data::synth_generate(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(std::memcmp(a[i].magnitude.data(), b[i].magnitude.data(),
                      a[i].magnitude.size() * sizeof(float)) == 0);
    CHECK(std::memcmp(a[i].phase.data(), b[i].phase.data(),
                      a[i].phase.size() * sizeof(float)) == 0);
  }
  // Balanced round-robin labels within each split.
  int train_counts[3] = {0, 0, 0};
  for (const auto& chip : a) {
    if (chip.split == data::Split::Train) ++train_counts[chip.label];
  }
  CHECK(train_counts[0] == 3);
  CHECK(train_counts[1] == 3);
  CHECK(train_counts[2] == 3);

  data::SynthSpec bad = spec;
  bad.n_classes = 1;
  CHECK_THROWS(data::synth_generate(bad));
}

TEST_CASE("sarc: byte-exact round trip and I/Q plane conversion") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "qsar_test_sarc";
  fs::create_directories(dir);
  const std::string p1 = (dir / "a.sarc").string();
  const std::string p2 = (dir / "b.sarc").string();

  data::SynthSpec spec{data::SynthMode::Both, 2, 2, 2, 5};
  auto chips = data::synth_generate(spec);
  data::save_sarc(p1, chips[0]);
  auto loaded = data::load_sarc(p1);
  CHECK(loaded.width == chips[0].width);
  CHECK(std::memcmp(loaded.magnitude.data(), chips[0].magnitude.data(),
                    loaded.magnitude.size() * sizeof(float)) == 0);
  CHECK(std::memcmp(loaded.phase.data(), chips[0].phase.data(),
                    loaded.phase.size() * sizeof(float)) == 0);
  data::save_sarc(p2, loaded);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());

  // Hand-written tag-1 (I+Q) file: 1x2 plane, checked against atan2/hypot.
  const std::string p3 = (dir / "iq.sarc").string();
  {
    std::ofstream out(p3, std::ios::binary);
    out.write("SARC1", 5);
    const std::uint32_t w = 2, h = 1;
    const std::uint8_t tag = 1;
    out.write(reinterpret_cast<const char*>(&w), 4);
    out.write(reinterpret_cast<const char*>(&h), 4);
    out.write(reinterpret_cast<const char*>(&tag), 1);
    const float iplane[2] = {3.0f, 0.0f};
    const float qplane[2] = {4.0f, -1.0f};
    out.write(reinterpret_cast<const char*>(iplane), 8);
    out.write(reinterpret_cast<const char*>(qplane), 8);
  }
  auto iq = data::load_sarc(p3);
  CHECK(iq.magnitude[0] == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(iq.phase[0] == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-6));
  CHECK(iq.magnitude[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(iq.phase[1] == doctest::Approx(-pi / 2).epsilon(1e-6));

  std::ofstream bad(dir / "bad.sarc", std::ios::binary);
  bad << "NOTSARC";
  bad.close();
  CHECK_THROWS(data::load_sarc((dir / "bad.sarc").string()));
}

TEST_CASE("manifest: round trip, validation, chip loading") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "qsar_test_manifest";
  fs::create_directories(dir);

  data::SynthSpec spec{data::SynthMode::Both, 2, 2, 2, 6};
  auto chips = data::synth_generate(spec);
  data::Manifest manifest;
  manifest.n_classes = 2;
  for (std::size_t i = 0; i < chips.size(); ++i) {
    const std::string name = "chip_" + std::to_string(i) + ".sarc";
    data::save_sarc((dir / name).string(), chips[i]);
    manifest.entries.push_back({name, chips[i].label, chips[i].split});
  }
  manifest.validate();
  const std::string mpath = (dir / "manifest.csv").string();
  data::save_manifest(mpath, manifest);
  auto loaded = data::load_manifest(mpath);
  REQUIRE(loaded.entries.size() == manifest.entries.size());
  for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
    CHECK(loaded.entries[i].path == manifest.entries[i].path);
    CHECK(loaded.entries[i].label == manifest.entries[i].label);
    CHECK((loaded.entries[i].split == manifest.entries[i].split));
  }
  auto reloaded = data::load_chips(loaded, dir.string());
  REQUIRE(reloaded.size() == chips.size());
  for (std::size_t i = 0; i < chips.size(); ++i) {
    CHECK(reloaded[i].label == chips[i].label);
    CHECK(std::memcmp(reloaded[i].magnitude.data(), chips[i].magnitude.data(),
                      chips[i].magnitude.size() * sizeof(float)) == 0);
  }

  // Missing Test coverage for a class must fail validation.
  data::Manifest invalid = manifest;
  std::erase_if(invalid.entries, [](const data::ManifestEntry& e) {
    return e.label == 1 && e.split == data::Split::Test;
  });
  CHECK_THROWS(invalid.validate());
}
