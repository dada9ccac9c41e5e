#pragma once

#include <cmath>
#include <cstdint>

namespace actkrr::rng {

// splitmix64 finalizer (Steele/Lea/Flood). All randomness in this project is
// counter-based on top of this mixer, so any stream can be replayed from its
// 64-bit seed alone.
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Child-stream seed: seed -> seed of substream `label`. Used to key
// (global seed, trial index, draw index) hierarchies.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t label) {
  return mix64(seed ^ mix64(label + kGamma));
}

// Counter-based splitmix64 generator: output i is mix64(seed + (i+1)*kGamma).
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix64(state_);
  }

  // uniform on [0,1), 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform on (0,1), safe under log()
  double uniform_pos() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller with cached spare
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double a = 2.0 * 3.14159265358979323846 * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace actkrr::rng
