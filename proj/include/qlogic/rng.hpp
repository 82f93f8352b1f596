#pragma once

#include <cstdint>

namespace qlogic {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream for one (seed, round, party) triple.
///
///   key     = splitmix64(splitmix64(splitmix64(seed) ^ round) ^ party)
///   next()  = splitmix64(key + counter++)        (counter starts at 0)
///   uniform = (next() >> 11) · 2^-53             in [0, 1)
///
/// Streams never share state, so rounds can be drawn in any order.
class CounterRng {
 public:
  enum Party : std::uint64_t { Alice = 0, Eve = 1, Bob = 2, Outcomes = 3, Sampling = 4 };

  constexpr CounterRng(std::uint64_t seed, std::uint64_t round, std::uint64_t party)
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ round) ^ party)) {}

  constexpr std::uint64_t next() { return splitmix64(key_ + counter_++); }
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Index in [0, n) by floor(uniform · n).
  constexpr std::uint64_t below(std::uint64_t n) {
    const auto k = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qlogic
