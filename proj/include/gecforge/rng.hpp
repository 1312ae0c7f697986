#pragma once

#include <cstdint>
#include <string_view>

namespace gecforge {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the value depends only on (key, stream, counter),
/// so any draw can be reproduced without replaying earlier ones.
constexpr std::uint64_t counter_draw(std::uint64_t key, std::uint64_t stream, std::uint64_t counter) noexcept {
  return mix64(mix64(key ^ mix64(stream + 0x632BE59BD9B4E019ULL)) + counter);
}

/// Maps a 64-bit draw onto [0, n).
constexpr std::uint64_t bounded(std::uint64_t draw, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(draw) * n) >> 64);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xCBF29CE484222325ULL) noexcept {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace gecforge
