#pragma once

#include <cstdint>
#include <utility>

namespace stc {

// Counter-based generator: each (seed, stream) pair names an independent
// substream, and every draw is a pure function of (seed, stream, counter).
// The mixer is the SplitMix64 finalizer applied to the three words, so
// results are identical across platforms and across any partitioning of
// work into threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), counter_(0) {}

  std::uint64_t next_u64() {
    std::uint64_t x = mix(seed_ ^ mix(stream_ ^ mix(counter_++)));
    return x;
  }

  // uniform in [0, 1), 53-bit resolution
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; draws are consumed in pairs and the
  // spare is cached so the counter advances deterministically
  double next_gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stc
