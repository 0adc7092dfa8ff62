#include "qsar/data/sarc.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qsar::data {

namespace {
constexpr char kMagic[5] = {'S', 'A', 'R', 'C', '1'};

static_assert(std::endian::native == std::endian::little,
              "SARC writer assumes a little-endian host");
static_assert(sizeof(float) == 4);
}  // namespace

void save_sarc(const std::string& path, const ComplexChip& chip) {
  const std::size_t n = static_cast<std::size_t>(chip.width) * chip.height;
  if (chip.magnitude.size() != n || chip.phase.size() != n) {
    throw std::invalid_argument("save_sarc: plane size mismatch");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_sarc: cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t w = chip.width, h = chip.height;
  const std::uint8_t tag = 0;
  out.write(reinterpret_cast<const char*>(&w), 4);
  out.write(reinterpret_cast<const char*>(&h), 4);
  out.write(reinterpret_cast<const char*>(&tag), 1);
  out.write(reinterpret_cast<const char*>(chip.magnitude.data()),
            static_cast<std::streamsize>(n * 4));
  out.write(reinterpret_cast<const char*>(chip.phase.data()),
            static_cast<std::streamsize>(n * 4));
  if (!out) throw std::runtime_error("save_sarc: write failed for " + path);
}

ComplexChip load_sarc(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_sarc: cannot open " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, kMagic, 5) != 0) {
    throw std::runtime_error("load_sarc: bad magic in " + path);
  }
  std::uint32_t w = 0, h = 0;
  std::uint8_t tag = 2;
  in.read(reinterpret_cast<char*>(&w), 4);
  in.read(reinterpret_cast<char*>(&h), 4);
  in.read(reinterpret_cast<char*>(&tag), 1);
  if (!in || tag > 1) throw std::runtime_error("load_sarc: bad header in " + path);

  ComplexChip chip;
  chip.width = static_cast<int>(w);
  chip.height = static_cast<int>(h);
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<float> a(n), b(n);
  in.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(n * 4));
  in.read(reinterpret_cast<char*>(b.data()), static_cast<std::streamsize>(n * 4));
  if (!in) throw std::runtime_error("load_sarc: truncated planes in " + path);

  if (tag == 0) {
    chip.magnitude = std::move(a);
    chip.phase = std::move(b);
  } else {
    chip.magnitude.resize(n);
    chip.phase.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      chip.magnitude[i] = std::hypot(a[i], b[i]);
      chip.phase[i] = std::atan2(b[i], a[i]);
    }
  }
  return chip;
}

}  // namespace qsar::data
