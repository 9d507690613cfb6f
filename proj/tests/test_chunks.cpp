#include "blockmem/chunks.hpp"

#include "doctest.h"

#include <cmath>
#include <cstring>

using namespace blockmem;

TEST_CASE("chunk sizes and compatibility") {
  const Offset sizes[] = {1, 1, 2, 2, 4, 4, 8};
  for (std::size_t k = 0; k < kAllChunks.size(); ++k) {
    CHECK(size_chunk(kAllChunks[k]) == sizes[k]);
    CHECK(kMaxAlign % align_chunk(kAllChunks[k]) == 0);
  }
  CHECK(compat(Chunk::Int32, Chunk::Float32));
  CHECK(compat(Chunk::Int8Signed, Chunk::Int8Unsigned));
  CHECK_FALSE(compat(Chunk::Int16Signed, Chunk::Int32));
  CHECK_FALSE(compat(Chunk::Float32, Chunk::Float64));
}

TEST_CASE("chunk names round-trip") {
  for (Chunk c : kAllChunks)
    CHECK(parse_chunk(chunk_name(c)) == c);
  CHECK_FALSE(parse_chunk("int64").has_value());
  CHECK_FALSE(parse_chunk("").has_value());
}

// Expected values are worked out by hand from two's complement arithmetic.
TEST_CASE("integer conversion truncates and extends") {
  CHECK(convert(Vint{255}, Chunk::Int8Signed) == Value{Vint{-1}});
  CHECK(convert(Vint{255}, Chunk::Int8Unsigned) == Value{Vint{255}});
  CHECK(convert(Vint{-1}, Chunk::Int8Unsigned) == Value{Vint{255}});
  CHECK(convert(Vint{0x180}, Chunk::Int8Signed) == Value{Vint{-128}});
  CHECK(convert(Vint{0x17f}, Chunk::Int8Signed) == Value{Vint{127}});
  CHECK(convert(Vint{65535}, Chunk::Int16Signed) == Value{Vint{-1}});
  CHECK(convert(Vint{-2}, Chunk::Int16Unsigned) == Value{Vint{65534}});
  CHECK(convert(Vint{0x1'0000'0005}, Chunk::Int32) == Value{Vint{5}});
  CHECK(convert(Vint{0x8000'0000}, Chunk::Int32) == Value{Vint{-2147483648LL}});
}

TEST_CASE("kind mismatches convert to undef") {
  CHECK(is_undef(convert(Vint{1}, Chunk::Float32)));
  CHECK(is_undef(convert(Vint{1}, Chunk::Float64)));
  CHECK(is_undef(convert(Vfloat::of(1.0), Chunk::Int32)));
  CHECK(is_undef(convert(Vundef{}, Chunk::Int32)));
  const Value p = Vptr{BlockId{3}, 4};
  CHECK(convert(p, Chunk::Int32) == p);
  CHECK(is_undef(convert(p, Chunk::Int16Signed)));
  CHECK(is_undef(convert(p, Chunk::Float32)));
}

TEST_CASE("float conversion") {
  CHECK(convert(Vfloat::of(1.5), Chunk::Float64) == Value{Vfloat::of(1.5)});
  const double narrowed = std::get<Vfloat>(convert(Vfloat::of(0.1), Chunk::Float32)).value();
  CHECK(narrowed == static_cast<double>(0.1f));
  CHECK(narrowed != 0.1);
  // NaN keeps its bit pattern, so equality stays reflexive.
  const Vfloat nan = Vfloat::of(std::nan(""));
  CHECK(Value{nan} == Value{nan});
}

TEST_CASE("value text round-trips") {
  const Value samples[] = {Vundef{}, Vint{0}, Vint{-7}, Vfloat::of(-2.25),
                           Vfloat::of(std::nan("")), Vptr{BlockId{2}, -4}};
  for (const Value &v : samples) {
    CAPTURE(to_string(v));
    CHECK(parse_value(to_string(v)) == v);
  }
  CHECK(to_string(Value{Vint{42}}) == "(int 42)");
  CHECK(to_string(Value{Vfloat::of(1.0)}) == "(float 0x3ff0000000000000)");
  CHECK_FALSE(parse_value("(int)").has_value());
  CHECK_FALSE(parse_value("(ptr $x 0)").has_value());
  CHECK_FALSE(parse_value("int 3").has_value());
}
