#include "fsro/core.hpp"

#include <algorithm>

namespace fsro {

BitString::BitString(std::size_t length, bool value) : bits_(length, value ? 1 : 0) {}

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("BitString: elements must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString BitString::parse(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      out.bits_[i] = 1;
    } else if (text[i] != '0') {
      throw std::invalid_argument("BitString::parse: unexpected character '" +
                                  std::string(1, text[i]) + "'");
    }
  }
  return out;
}

BitString BitString::random(std::size_t length, Rng& rng) {
  BitString out(length);
  for (auto& b : out.bits_) b = rng.bit() ? 1 : 0;
  return out;
}

std::size_t BitString::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> BitString::selected() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) idx.push_back(i);
  return idx;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

// FNV-1a over the bytes, salted with the length.
std::size_t BitStringHash::operator()(const BitString& b) const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ b.size();
  for (std::uint8_t v : b.bytes()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

bool repair_zero_mask(BitString& mask, Rng& rng) {
  if (mask.empty() || !mask.none()) return false;
  mask.set(rng.index(mask.size()), true);
  return true;
}

std::string_view to_string(Group g) noexcept {
  return g == Group::Frog ? "frog" : "snake";
}

} // namespace fsro
