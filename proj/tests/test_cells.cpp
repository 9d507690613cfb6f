#include "blockmem/cells.hpp"

#include "doctest.h"

using namespace blockmem;

namespace {

Datum d(Chunk t, std::int64_t n) { return Datum{t, Vint{n}}; }

} // namespace

TEST_CASE("update replaces exactly one cell") {
  BlockContents f = update(3, d(Chunk::Int8Signed, 1), {});
  CHECK(f.at(3) == Content{d(Chunk::Int8Signed, 1)});
  CHECK_FALSE(f.at(2).has_value());
  f = update(3, std::nullopt, f);
  CHECK(f.empty());
}

TEST_CASE("check_cont and set_cont on a small map") {
  BlockContents f;
  f = update(0, d(Chunk::Int8Signed, 1), f);
  f = update(5, d(Chunk::Int8Signed, 2), f);
  CHECK(check_cont(f, 1, 4));
  CHECK_FALSE(check_cont(f, 1, 5));
  CHECK(check_cont(f, 0, 0));
  CHECK(check_cont(f, -10, 10));

  const BlockContents g = set_cont(f, 4, 2);
  CHECK(g.at(0).has_value());
  CHECK_FALSE(g.at(5).has_value());
  CHECK(set_cont(f, 0, 0) == f);
}

TEST_CASE("store_contents clears the footprint tail") {
  BlockContents f;
  for (Offset o = 0; o < 8; ++o)
    f = update(o, d(Chunk::Int8Unsigned, o), f);
  const BlockContents g = store_contents(f, Chunk::Int32, 2, Vint{9});
  CHECK(g.at(2) == Content{Datum{Chunk::Int32, Vint{9}}});
  for (Offset o : {3, 4, 5})
    CHECK_FALSE(g.at(o).has_value());
  for (Offset o : {0, 1, 6, 7})
    CHECK(g.at(o) == f.at(o));
}

TEST_CASE("load_contents classifies the four cases") {
  const BlockContents f = store_contents({}, Chunk::Int16Unsigned, 0, Vint{65535});
  // same chunk
  CHECK(load_contents(Chunk::Int16Unsigned, f, 0) == Value{Vint{65535}});
  // compatible chunk: converted
  CHECK(load_contents(Chunk::Int16Signed, f, 0) == Value{Vint{-1}});
  // incompatible chunk
  CHECK(is_undef(load_contents(Chunk::Int8Unsigned, f, 0)));
  CHECK(is_undef(load_contents(Chunk::Int32, f, 0)));
  // continuation byte, or nothing stored
  CHECK(is_undef(load_contents(Chunk::Int8Unsigned, f, 1)));
  CHECK(is_undef(load_contents(Chunk::Int8Unsigned, f, 2)));
}

TEST_CASE("a datum with a clobbered tail reads as undef") {
  BlockContents f = store_contents({}, Chunk::Int32, 0, Vint{7});
  f = update(2, d(Chunk::Int8Signed, 3), f);
  CHECK(is_undef(load_contents(Chunk::Int32, f, 0)));
  CHECK(load_contents(Chunk::Int8Signed, f, 2) == Value{Vint{3}});
}
