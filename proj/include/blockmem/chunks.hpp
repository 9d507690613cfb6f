#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace blockmem {

/// Byte offset inside a block. Blocks are addressed by signed offsets.
using Offset = std::int64_t;

/// Identifier of a memory block. Valid ids start at 1.
struct BlockId {
  std::int64_t id = 0;

  constexpr BlockId() = default;
  constexpr explicit BlockId(std::int64_t v) : id(v) {}

  constexpr BlockId next() const { return BlockId{id + 1}; }
  constexpr auto operator<=>(const BlockId &) const = default;
};

/// Memory access type: fixes the footprint, the alignment and the
/// normalization applied at load time.
enum class Chunk : std::uint8_t {
  Int8Signed,
  Int8Unsigned,
  Int16Signed,
  Int16Unsigned,
  Int32,
  Float32,
  Float64,
};

inline constexpr std::array<Chunk, 7> kAllChunks = {
    Chunk::Int8Signed, Chunk::Int8Unsigned, Chunk::Int16Signed,
    Chunk::Int16Unsigned, Chunk::Int32, Chunk::Float32, Chunk::Float64};

/// Largest alignment of any chunk. Every chunk alignment divides it.
inline constexpr Offset kMaxAlign = 8;

constexpr Offset size_chunk(Chunk c) {
  switch (c) {
  case Chunk::Int8Signed:
  case Chunk::Int8Unsigned:
    return 1;
  case Chunk::Int16Signed:
  case Chunk::Int16Unsigned:
    return 2;
  case Chunk::Int32:
  case Chunk::Float32:
    return 4;
  case Chunk::Float64:
    return 8;
  }
  return 1;
}

// Natural alignment.
constexpr Offset align_chunk(Chunk c) { return size_chunk(c); }

constexpr bool is_float_chunk(Chunk c) {
  return c == Chunk::Float32 || c == Chunk::Float64;
}

/// Two chunks are compatible when they have the same footprint. A kind
/// mismatch (Int32 vs Float32) is absorbed by convert() yielding Vundef.
constexpr bool compat(Chunk t, Chunk t2) { return size_chunk(t) == size_chunk(t2); }

std::string_view chunk_name(Chunk c);
std::optional<Chunk> parse_chunk(std::string_view token);

// ---------------------------------------------------------------------------
// Values

struct Vundef {
  constexpr bool operator==(const Vundef &) const = default;
};

struct Vint {
  std::int64_t n = 0;
  constexpr bool operator==(const Vint &) const = default;
};

/// IEEE-754 double stored by bit pattern so equality is total and NaN-stable.
struct Vfloat {
  std::uint64_t bits = 0;

  static Vfloat of(double d);
  double value() const;
  constexpr bool operator==(const Vfloat &) const = default;
};

struct Vptr {
  BlockId block;
  Offset ofs = 0;
  constexpr bool operator==(const Vptr &) const = default;
};

using Value = std::variant<Vundef, Vint, Vfloat, Vptr>;

inline bool is_undef(const Value &v) { return std::holds_alternative<Vundef>(v); }

/// Load-time normalization of a stored value read back at chunk `t`.
Value convert(const Value &v, Chunk t);

/// `undef`, `(int N)`, `(float 0xHEXBITS)`, `(ptr B I)`.
std::string to_string(const Value &v);
std::string to_string(BlockId b);

/// Parses the textual value form produced by to_string(Value). Pointer
/// blocks must be numeric here; traces use symbolic blocks instead.
std::optional<Value> parse_value(std::string_view text);

} // namespace blockmem
