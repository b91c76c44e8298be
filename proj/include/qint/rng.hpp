#pragma once

#include <cstdint>

namespace qint {

/// Counter-based generator. Every draw is a pure function of (key, counter),
/// so derived streams are reproducible across platforms and runs; all
/// randomized suites derive from a single --seed through split().
class SplitRng {
public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 1))), ctr_(0) {}

  /// Child generator with an independent stream; the parent is unaffected.
  SplitRng split(std::uint64_t stream) const { return SplitRng(key_, stream + 2); }

  std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * kGolden); }

  /// Uniform in [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n >= 1.
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace qint
