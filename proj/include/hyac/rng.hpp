#pragma once

#include <cstdint>
#include <random>

namespace hyac {

/// Seeded stream of doubles in [0, 1).
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The 53-bit mantissa conversion is done here rather than through
/// std::uniform_real_distribution, whose algorithm is implementation-defined,
/// so draws are identical across platforms and languages.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform draw in [lo, hi).
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hyac
