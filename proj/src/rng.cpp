#include "qagent/rng.hpp"

namespace qagent {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
  return splitmix64(state ^ splitmix64(word));
}

}  // namespace

CounterStream::CounterStream(const RngStreamKey& key) {
  std::uint64_t h = splitmix64(key.seed);
  h = absorb(h, static_cast<std::uint64_t>(key.context));
  h = absorb(h, key.iteration);
  h = absorb(h, key.probe);
  key_ = h;
}

}  // namespace qagent
