#pragma once

#include <cstdint>

namespace dlab {

/// Counter-based uniform source: the value for (seed, draw, coordinate) is a
/// pure function of the triple, so draws can be produced in any order or in
/// parallel and still reproduce exactly. Built from the SplitMix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x243f6a8885a308d3ULL)) {}

  std::uint64_t bits(std::uint64_t draw, std::uint64_t coord) const {
    std::uint64_t x = mix(key_ + draw * 0x9e3779b97f4a7c15ULL);
    return mix(x ^ (coord * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
  }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform(std::uint64_t draw, std::uint64_t coord) const {
    return static_cast<double>((bits(draw, coord) >> 11) + 1) * 0x1.0p-53;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

}  // namespace dlab
