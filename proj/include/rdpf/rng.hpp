#pragma once

#include <cstdint>

namespace rdpf {

// Counter-based generator: draw i is a stateless mix (splitmix64) of the seed
// and the counter, so a stream is fully determined by its seed and replays
// identically. Gaussians use the Marsaglia polar method, which needs only
// sqrt and log.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ull * ++counter_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 significand bits.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_gaussian();

    // Independent stream for a derived purpose (dimension index, worker id, ...).
    CounterRng derive(std::uint64_t stream) const {
        CounterRng child(seed_ ^ (0xD2B74407B1CE6E93ull * (stream + 1)));
        return child;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace rdpf
