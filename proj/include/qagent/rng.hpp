#pragma once

#include <cstdint>

namespace qagent {

/// What a substream is used for; mixed into the stream key.
enum class StreamContext : std::uint64_t {
  kErrorRate = 1,
  kGradientProbe = 2,
  kJarzynski = 3,
  kTest = 99,
};

/// Derivation key for a deterministic substream.
struct RngStreamKey {
  std::uint64_t seed = 0;
  StreamContext context = StreamContext::kTest;
  std::uint64_t iteration = 0;
  std::uint64_t probe = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based stream: draw k is a pure function of (key, k), so any subset of
/// draws can be generated in any order or on any thread with identical results.
class CounterStream {
 public:
  explicit CounterStream(const RngStreamKey& key);
  static CounterStream from_raw(std::uint64_t key) { return CounterStream(key); }

  std::uint64_t bits(std::uint64_t counter) const {
    return splitmix64(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }
  std::uint64_t key() const { return key_; }

 private:
  explicit CounterStream(std::uint64_t raw) : key_(raw) {}
  std::uint64_t key_;
};

}  // namespace qagent
