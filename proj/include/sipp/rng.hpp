#pragma once

#include <cstdint>
#include <random>

namespace sipp {

// Seedable 64-bit generator with independent substreams. The engine is
// mt19937_64 seeded through seed_seq from (seed, stream); every derived
// variate is computed here from raw 64-bit words so results do not depend on
// the standard library's distribution implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  // Independent child stream, deterministic in (seed, stream, index).
  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Exponential with the given rate.
  double exponential(double rate = 1.0);
  bool bernoulli(double p);
  // Uniform integer on [0, bound), bound > 0.
  std::uint64_t uniform_int(std::uint64_t bound);
  // Poisson by counting exponential arrivals (small means) or by splitting
  // into unit-mean blocks.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace sipp
