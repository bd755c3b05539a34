#include "sipp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace sipp {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(seed_, mix(stream_ ^ mix(index + 1)));
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  for (;;) {
    double u = uniform();
    if (u > 0.0) return u;
  }
}

double RngStream::exponential(double rate) {
  return -std::log(uniform_open()) / rate;
}

bool RngStream::bernoulli(double p) { return uniform() < p; }

std::uint64_t RngStream::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int bound must be positive");
  // Lemire's nearly divisionless method.
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be finite and nonnegative");
  }
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    double block = remaining > 16.0 ? 16.0 : remaining;
    remaining -= block;
    // Product-of-uniforms form of arrivals in a window of length `block`.
    double limit = std::exp(-block);
    double prod = uniform_open();
    while (prod > limit) {
      ++total;
      prod *= uniform_open();
    }
  }
  return total;
}

}  // namespace sipp
