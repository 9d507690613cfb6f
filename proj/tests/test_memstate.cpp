#include "blockmem/memstate.hpp"

#include "doctest.h"

#include <vector>

using namespace blockmem;

TEST_CASE("store 42, load it back, free") {
  auto a = alloc(empty(), 0, 8);
  REQUIRE(a);
  CHECK(a->block == BlockId{1});
  auto m = store(Chunk::Int32, a->mem, a->block, 0, Vint{42});
  REQUIRE(m);
  CHECK(load(Chunk::Int32, *m, a->block, 0) == Value{Vint{42}});
  auto m2 = free(*m, a->block);
  REQUIRE(m2);
  CHECK_FALSE(load(Chunk::Int32, *m2, a->block, 0).has_value());
  CHECK_FALSE(valid_block(*m2, a->block));
  CHECK_FALSE(free(*m2, a->block).has_value());
}

TEST_CASE("fresh blocks read as undef inside bounds") {
  auto a = alloc(empty(), -8, 8);
  REQUIRE(a);
  for (Chunk t : kAllChunks)
    for (Offset i = -8; i + size_chunk(t) <= 8; i += align_chunk(t))
      CHECK(load(t, a->mem, a->block, i) == std::optional<Value>{Vundef{}});
  CHECK_FALSE(load(Chunk::Int8Signed, a->mem, a->block, 8).has_value());
  CHECK_FALSE(load(Chunk::Int8Signed, a->mem, a->block, -9).has_value());
  CHECK(bounds(a->mem, a->block) == Bounds{-8, 8});
}

TEST_CASE("alignment is enforced unless disabled") {
  auto a = alloc(empty(), 0, 16);
  REQUIRE(a);
  CHECK_FALSE(valid_access(a->mem, Chunk::Int32, a->block, 2));
  CHECK(valid_access(a->mem, Chunk::Int16Signed, a->block, 2));
  CHECK_FALSE(valid_access(a->mem, Chunk::Float64, a->block, 4));
  CHECK(aligned(Chunk::Float64, -8));

  MemConfig loose;
  loose.check_alignment = false;
  auto b = alloc(empty(loose), 0, 16);
  REQUIRE(b);
  CHECK(valid_access(b->mem, Chunk::Int32, b->block, 2));
}

TEST_CASE("block ids are never reused") {
  MemState m;
  std::vector<BlockId> seen;
  for (int k = 0; k < 5; ++k) {
    auto a = alloc(m, 0, 4);
    REQUIRE(a);
    for (BlockId b : seen)
      CHECK(b != a->block);
    seen.push_back(a->block);
    m = k % 2 ? *free(a->mem, a->block) : a->mem;
  }
  CHECK(m.nextblock() == BlockId{6});
  CHECK(fresh_block(m, BlockId{6}));
  CHECK_FALSE(fresh_block(m, BlockId{2}));
}

TEST_CASE("free keeps bounds and contents") {
  auto a = alloc(empty(), 0, 8);
  auto m = store(Chunk::Int8Signed, a->mem, a->block, 1, Vint{5});
  auto m2 = free(*m, a->block);
  REQUIRE(m2);
  CHECK(bounds(*m2, a->block) == Bounds{0, 8});
  CHECK(m2->contents(a->block) == m->contents(a->block));
  CHECK(m2->freed().count(a->block) == 1);
}

TEST_CASE("capacity policy") {
  MemConfig cfg;
  cfg.capacity = CapacityPolicy::bytes(12);
  auto a = alloc(empty(cfg), 0, 8);
  REQUIRE(a);
  CHECK(a->mem.allocated_bytes() == 8);
  CHECK_FALSE(alloc(a->mem, 0, 8).has_value());
  auto b = alloc(a->mem, 0, 4);
  REQUIRE(b);
  // freeing returns the bytes to the budget
  auto m = free(b->mem, a->block);
  REQUIRE(m);
  CHECK(m->allocated_bytes() == 4);
  CHECK(alloc(*m, -4, 4).has_value());
  // empty and inverted ranges cost nothing
  CHECK(alloc(b->mem, 5, 2).has_value());
}

TEST_CASE("same_domain ignores contents only") {
  auto a = alloc(empty(), 0, 8);
  auto m = store(Chunk::Int32, a->mem, a->block, 0, Vint{1});
  CHECK(same_domain(a->mem, *m));
  CHECK_FALSE(same_domain(a->mem, *free(a->mem, a->block)));
  CHECK_FALSE(same_domain(empty(), a->mem));
}

TEST_CASE("free_list and alloc_list") {
  const AllocRequest reqs[] = {{0, 4}, {-4, 4}, {0, 0}};
  auto r = alloc_list(empty(), reqs);
  REQUIRE(r);
  REQUIRE(r->blocks.size() == 3);
  CHECK(r->blocks[0] == BlockId{1});
  CHECK(bounds(r->mem, r->blocks[1]) == Bounds{-4, 4});

  const BlockId first_two[] = {r->blocks[0], r->blocks[1]};
  auto m = free_list(r->mem, first_two);
  REQUIRE(m);
  CHECK(m->valid_blocks() == std::vector<BlockId>{r->blocks[2]});
  const BlockId twice[] = {r->blocks[2], r->blocks[2]};
  CHECK_FALSE(free_list(r->mem, twice).has_value());
}

TEST_CASE("loadv and storev need pointers") {
  auto a = alloc(empty(), 0, 8);
  const Value p = Vptr{a->block, 4};
  auto m = storev(Chunk::Int32, a->mem, p, Vint{3});
  REQUIRE(m);
  CHECK(loadv(Chunk::Int32, *m, p) == Value{Vint{3}});
  CHECK_FALSE(loadv(Chunk::Int32, *m, Vint{4}).has_value());
  CHECK_FALSE(storev(Chunk::Int32, *m, Vundef{}, Vint{1}).has_value());
}

TEST_CASE("state equality ignores the config") {
  MemConfig cfg;
  cfg.check_alignment = false;
  CHECK(empty(cfg) == empty());
  auto a = alloc(empty(), 0, 4);
  CHECK_FALSE(a->mem == empty());
}
