#pragma once

#include <cstdint>

namespace qca {

// Counter-based generator: every value is a pure function of (key, counter),
// so ensemble members and angle slots can be generated in any order.
//
// Stream-splitting rule used by the map builder:
//   map key      = derive_stream(master_seed, map_index)
//   triple key   = derive_stream(derive_stream(map key, layer), slot)
//   angle value  = CounterRng(triple key).uniform(angle index 0..2)
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  /// Raw 64-bit output for position `counter`.
  std::uint64_t bits(std::uint64_t counter) const;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t key_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Child stream key for `index` under `parent`.
std::uint64_t derive_stream(std::uint64_t parent, std::uint64_t index);

}  // namespace qca
