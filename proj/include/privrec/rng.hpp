#pragma once

#include <cstdint>

namespace privrec {

// splitmix64; used to key independent substreams off one user seed so that
// results do not depend on scheduling or evaluation order.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// xoshiro-style generator is overkill here; splitmix64 itself is a fine
// stream generator and keeps every draw reproducible byte-for-byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return mix64(state_++); }

  // Uniform on (0, 1), never exactly 0 or 1.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0. 128-bit multiply avoids modulo bias.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Independent stream for a (seed, a, b) triple, e.g. (run seed, target, trial).
inline Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return Rng(mix64(seed ^ mix64(a ^ mix64(b))));
}

}  // namespace privrec
