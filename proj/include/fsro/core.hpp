#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fsro/rng.hpp"

namespace fsro {

/// Invalid parameters or an inconsistent configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unusable input data.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Fixed-length binary feature mask. Every element is 0 or 1.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::size_t length, bool value = false);
  BitString(std::initializer_list<int> bits);

  /// Parses "01101". Throws std::invalid_argument on any other character.
  static BitString parse(std::string_view text);

  /// Each bit i.i.d. fair.
  static BitString random(std::size_t length, Rng& rng);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) noexcept { bits_[i] ^= 1; }

  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }
  std::vector<std::size_t> selected() const;

  /// Raw 0/1 bytes, one per position.
  std::span<const std::uint8_t> bytes() const noexcept { return bits_; }

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

private:
  std::vector<std::uint8_t> bits_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const noexcept;
};

/// Sets one uniformly random bit when the mask is all zero. Returns true if
/// a repair happened (consumes one draw only in that case).
bool repair_zero_mask(BitString& mask, Rng& rng);

enum class Group : std::uint8_t { Frog, Snake };

std::string_view to_string(Group g) noexcept;

struct Agent {
  std::size_t id = 0;
  BitString solution;
  std::optional<double> fitness;
  std::optional<double> prev_fitness;
  Group group = Group::Frog;

  friend bool operator==(const Agent&, const Agent&) = default;
};

/// Fitness function over masks; lower is better, values in [0, 1].
using EvaluateFn = std::function<double(const BitString&)>;

} // namespace fsro

template <>
struct std::hash<fsro::BitString> : fsro::BitStringHash {};
