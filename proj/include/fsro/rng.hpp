#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace fsro {

/// Deterministic random stream: xoshiro256** seeded through splitmix64.
///
/// The draw sequence depends only on the seed and is identical on every
/// platform. One stream belongs to exactly one run.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) noexcept;

  /// Builds a stream from a raw xoshiro state (used for reference vectors).
  static Rng from_state(const std::array<std::uint64_t, 4>& state) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;

  /// Uniform integer in [0, n). Throws std::invalid_argument when n == 0.
  std::size_t index(std::size_t n);

  /// Fair coin.
  bool bit() noexcept { return (next_u64() >> 63) != 0; }

  std::uint64_t seed() const noexcept { return seed_; }
  const std::array<std::uint64_t, 4>& state() const noexcept { return state_; }

  friend bool operator==(const Rng&, const Rng&) = default;

private:
  std::uint64_t seed_ = 0;
  std::array<std::uint64_t, 4> state_{};
};

} // namespace fsro
