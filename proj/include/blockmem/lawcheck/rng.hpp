#pragma once

#include <cstdint>
#include <string_view>

namespace blockmem::lawcheck {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed so that reports replay
/// identically on every platform; std::uniform_int_distribution is not.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift reduction; bias is negligible for small n.
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class Seq> const auto &pick(const Seq &s) { return s[below(s.size())]; }

private:
  std::uint64_t state_;
};

/// Stable 64-bit FNV-1a, used to derive per-law seeds from law names.
constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace blockmem::lawcheck
