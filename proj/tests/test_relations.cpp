#include "blockmem/relations.hpp"

#include "doctest.h"

using namespace blockmem;

namespace {

MemState with_block(MemState m, Offset lo, Offset hi) { return alloc(m, lo, hi)->mem; }

MemState put(const MemState &m, Chunk t, std::int64_t b, Offset i, Value v) {
  auto r = store(t, m, BlockId{b}, i, v);
  REQUIRE(r);
  return *r;
}

Embedding emb(std::initializer_list<std::tuple<int, int, Offset>> rows) {
  Embedding::Map m;
  for (auto [s, t, d] : rows)
    m.emplace(BlockId{s}, Mapping{BlockId{t}, d});
  return Embedding(m);
}

} // namespace

TEST_CASE("val_lessdef") {
  CHECK(val_lessdef(Vundef{}, Vint{3}));
  CHECK(val_lessdef(Vint{3}, Vint{3}));
  CHECK_FALSE(val_lessdef(Vint{3}, Vundef{}));
  CHECK_FALSE(val_lessdef(Vint{3}, Vint{4}));
}

TEST_CASE("val_emb shifts pointers") {
  const Embedding e = emb({{1, 2, 8}});
  CHECK(val_emb(e, Vptr{BlockId{1}, 4}, Vptr{BlockId{2}, 12}));
  CHECK_FALSE(val_emb(e, Vptr{BlockId{1}, 4}, Vptr{BlockId{2}, 4}));
  CHECK_FALSE(val_emb(e, Vptr{BlockId{3}, 0}, Vptr{BlockId{3}, 0}));
  CHECK(val_emb(e, Vint{5}, Vint{5}));
  CHECK(val_emb(e, Vundef{}, Vptr{BlockId{9}, 0}));
}

TEST_CASE("emb_no_overlap") {
  MemState m = with_block(with_block(empty(), 0, 4), 0, 8);
  CHECK(emb_no_overlap(emb({{1, 5, 0}, {2, 5, 8}}), m));
  CHECK(emb_no_overlap(emb({{1, 5, 0}, {2, 5, 4}}), m));
  CHECK_FALSE(emb_no_overlap(emb({{1, 5, 0}, {2, 5, 2}}), m));
  CHECK(emb_no_overlap(emb({{1, 5, 0}, {2, 6, 0}}), m));
  // freed blocks no longer count
  CHECK(emb_no_overlap(emb({{1, 5, 0}, {2, 5, 2}}), *free(m, BlockId{1})));
}

TEST_CASE("mem_lessdef and mem_extends") {
  MemState m1 = with_block(empty(), 0, 8);
  MemState m2 = put(m1, Chunk::Int32, 1, 0, Vint{7});
  CHECK(mem_lessdef(m1, m2));
  CHECK_FALSE(mem_lessdef(m2, m1));
  CHECK(mem_extends(m1, m2));
  // lessdef needs the same domain, extends only larger bounds
  MemState wide = put(with_block(empty(), -8, 16), Chunk::Int32, 1, 0, Vint{7});
  CHECK_FALSE(mem_lessdef(m2, wide));
  CHECK(mem_extends(m2, wide));
  CHECK_FALSE(mem_extends(wide, m2));
}

TEST_CASE("mem_inject packs two blocks into a frame") {
  MemState m1 = with_block(with_block(empty(), 0, 4), 0, 8);
  m1 = put(m1, Chunk::Int32, 1, 0, Vint{1});
  m1 = put(m1, Chunk::Int32, 2, 4, Vptr{BlockId{1}, 0});
  MemState m2 = with_block(empty(), 0, 16);
  m2 = put(m2, Chunk::Int32, 1, 0, Vint{1});
  m2 = put(m2, Chunk::Int32, 1, 12, Vptr{BlockId{1}, 0});

  const Embedding e = emb({{1, 1, 0}, {2, 1, 8}});
  CHECK(mem_inject(e, m1, m2));
  CHECK(deltas_aligned(e));
  // wrong pointer image
  CHECK_FALSE(mem_inject(emb({{1, 1, 8}, {2, 1, 0}}), m1, m2));
  // unaligned delta
  CHECK_FALSE(deltas_aligned(emb({{1, 1, 4}})));
  // unmapped blocks are unconstrained
  CHECK(mem_inject(emb({{1, 1, 0}}), m1, m2));
}

TEST_CASE("emb_incr") {
  const Embedding a = emb({{1, 1, 0}});
  CHECK(emb_incr(a, emb({{1, 1, 0}, {2, 1, 8}})));
  CHECK_FALSE(emb_incr(a, emb({{1, 1, 8}})));
  CHECK(emb_incr(Embedding{}, a));
}

TEST_CASE("store_lessdef witness") {
  MemState m1 = with_block(empty(), 0, 8);
  MemState m2 = put(m1, Chunk::Int32, 1, 4, Vint{2});
  REQUIRE(mem_lessdef(m1, m2));
  auto m1s = store(Chunk::Int32, m1, BlockId{1}, 0, Vundef{});
  REQUIRE(m1s);
  const MemState w = store_lessdef_witness(m2, Chunk::Int32, BlockId{1}, 0, Vint{9});
  CHECK(store(Chunk::Int32, m2, BlockId{1}, 0, Vint{9}) == w);
  CHECK(mem_lessdef(*m1s, w));
}

TEST_CASE("alloc_parallel witness") {
  MemState m1 = with_block(empty(), 0, 4);
  MemState m2 = with_block(with_block(empty(), 0, 4), 0, 4);
  const Embedding e = emb({{1, 2, 0}});
  REQUIRE(mem_inject(e, m1, m2));
  auto a1 = alloc(m1, -4, 4);
  auto w = alloc_parallel_witness(e, m2, a1->block, -4, 4);
  REQUIRE(w);
  CHECK(w->target == BlockId{3});
  CHECK(w->emb(a1->block) == std::optional<Mapping>{Mapping{BlockId{3}, 0}});
  CHECK(emb_incr(e, w->emb));
  CHECK(mem_inject(w->emb, a1->mem, w->mem));
}

TEST_CASE("frame layout keeps deltas aligned and disjoint") {
  const AllocRequest reqs[] = {{0, 3}, {-4, 4}, {2, 2}, {0, 9}};
  const FrameLayout f = frame_layout(reqs, 0);
  REQUIRE(f.deltas.size() == 4);
  Offset prev_end = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(f.deltas[k] % kDeltaAlign == 0);
    if (reqs[k].high <= reqs[k].low)
      continue; // empty ranges occupy nothing
    CHECK(reqs[k].low + f.deltas[k] >= prev_end);
    prev_end = std::max(prev_end, reqs[k].high + f.deltas[k]);
  }
  CHECK(f.end >= prev_end);
}

TEST_CASE("alloc_list_alloc witness") {
  MemState m1 = with_block(empty(), 0, 8);
  MemState m2 = with_block(empty(), 0, 8);
  const Embedding e = Embedding::identity(m1);
  REQUIRE(mem_inject(e, m1, m2));
  const AllocRequest reqs[] = {{0, 4}, {-8, 8}};
  auto w = alloc_list_alloc_witness(e, m1, m2, reqs);
  REQUIRE(w);
  CHECK(w->blocks.size() == 2);
  CHECK(emb_incr(e, w->emb));
  CHECK(mem_inject(w->emb, w->left, w->right));
  for (BlockId b : w->blocks)
    CHECK(w->emb(b)->target == w->frame);
}
