#pragma once

#include <cstdint>

namespace povline {

// splitmix64 stream. Replication r of a run seeded with s uses
// rng_stream(s, r), so replications are independent of scheduling order
// and identical under any worker count.
class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed) : state_(seed) {}

    rng_stream(std::uint64_t seed, std::uint64_t index)
        : state_(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ull))) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform on (0,1), 53-bit mantissa, never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace povline
