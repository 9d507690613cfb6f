// Simulation laws: embeddings, extension, lessdef and injection.

#include "law_support.hpp"

#include <algorithm>

namespace blockmem::lawcheck::support {

namespace {

using namespace param;
constexpr std::string_view kRel = "Rel_Mem";
constexpr std::string_view kExt = "Mem_Extends";
constexpr std::string_view kLess = "Mem_Lessdef";
constexpr std::string_view kInj = "Mem_Inject";

bool contains(const std::vector<BlockId> &bs, BlockId b) {
  return std::find(bs.begin(), bs.end(), b) != bs.end();
}

// Valid blocks of m1 other than `except` whose image lands in `target`.
std::vector<BlockId> sources_of(const Embedding &e, const MemState &m1, BlockId target,
                                std::optional<BlockId> except = std::nullopt) {
  std::vector<BlockId> out;
  for (BlockId b : m1.valid_blocks()) {
    auto m = e(b);
    if (m && m->target == target && b != except)
      out.push_back(b);
  }
  return out;
}

// [lo, hi) in the target misses every shifted range of a valid source block
// mapped to `target` (empty source ranges never collide).
bool range_free_in_target(const Embedding &e, const MemState &m1, BlockId target, Offset lo,
                          Offset hi) {
  if (hi <= lo)
    return true;
  for (BlockId b : sources_of(e, m1, target)) {
    const Bounds bd = bounds(m1, b);
    const Offset d = e(b)->delta;
    if (bd.span() > 0 && lo < bd.high + d && bd.low + d < hi)
      return false;
  }
  return true;
}

bool fits(const MemState &m, BlockId b, Offset lo, Offset hi) {
  const Bounds bd = bounds(m, b);
  return hi <= lo || (bd.low <= lo && hi <= bd.high);
}

bool delta_ok(Offset d) { return d % kDeltaAlign == 0; }

// Hypothesis shared by every left-mapped allocation: the new block can sit
// at (b2, delta) without breaking the injection's side conditions.
bool mapped_slot_ok(const Instance &x, Offset lo, Offset hi) {
  return valid_block(x.m2(), x.b2) && delta_ok(x.delta) && fits(x.m2(), x.b2, lo + x.delta, hi + x.delta) &&
         range_free_in_target(x.emb, x.m1(), x.b2, lo + x.delta, hi + x.delta);
}

Verdict check_inject(const Embedding &e, const MemState &m1, const MemState &m2, const char *what) {
  return expect(mem_inject(e, m1, m2), what);
}

} // namespace

std::vector<Law> relation_laws() {
  return {
      // ---- generic embeddings -------------------------------------------
      {"valid_pointer_emb", kRel, "", Shape::Inject, T | B | I,
       [](const Instance &x) {
         auto m = x.emb(x.b);
         if (!m || !emb_rel(x.emb, x.m1(), x.m2()) || !valid_access(x.m1(), x.t, x.b, x.i))
           return vacuous();
         return expect(valid_access(x.m2(), x.t, m->target, x.i + m->delta),
                       "image access not valid");
       }},
      {"alignment_shift", kRel, "", Shape::Cells, T | I | Delta,
       [](const Instance &x) {
         if (!aligned(x.t, x.i) || x.delta % align_chunk(x.t) != 0)
           return vacuous();
         return expect(aligned(x.t, x.i + x.delta), "shifted offset misaligned");
       }},
      {"store_unmapped_emb", kRel, "", Shape::Inject, T | B | I | V,
       [](const Instance &x) {
         auto m1 = store(x.t, x.m1(), x.b, x.i, x.v);
         if (x.emb(x.b) || !m1 || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, *m1, x.m2()), "relation lost");
       }},
      {"store_outside_emb", kRel, "", Shape::Inject, T | B2 | I2 | V,
       [](const Instance &x) {
         auto m2 = store(x.t, x.m2(), x.b2, x.i2, x.v);
         if (!m2 || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         for (const auto &[b, m] : x.emb.entries()) {
           const Bounds bd = bounds(x.m1(), b);
           if (m.target == x.b2 && bd.span() > 0 && x.i2 < bd.high + m.delta &&
               bd.low + m.delta < x.i2 + size_chunk(x.t))
             return vacuous();
         }
         return expect(emb_rel(x.emb, x.m1(), *m2), "relation lost");
       }},
      {"store_mapped_emb", kRel, "", Shape::Inject, T | B | I | V | V2,
       [](const Instance &x) {
         auto m = x.emb(x.b);
         auto m1 = store(x.t, x.m1(), x.b, x.i, x.v);
         if (!m || !m1 || !val_emb(x.emb, x.v, x.v2) || !emb_no_overlap(x.emb, x.m1()) ||
             !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         auto m2 = store(x.t, x.m2(), m->target, x.i + m->delta, x.v2);
         if (!m2)
           return Verdict::fail("image store refused");
         return expect(emb_rel(x.emb, *m1, *m2), "relation lost");
       }},
      {"alloc_parallel_emb", kRel, "", Shape::Inject, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc(x.m1(), x.lo, x.hi);
         if (!a || x.emb(a->block) || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         auto w = alloc_parallel_witness(x.emb, x.m2(), a->block, x.lo, x.hi);
         if (!w)
           return vacuous(); // the target ran out of room
         if (!emb_incr(x.emb, w->emb))
           return Verdict::fail("witness embedding not an extension");
         if (!(w->emb(a->block) == std::optional<Mapping>{Mapping{w->target, 0}}))
           return Verdict::fail("new block not mapped onto the new target");
         return expect(emb_rel(w->emb, a->mem, w->mem), "relation lost");
       }},
      {"alloc_right_emb", kRel, "", Shape::Inject, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc(x.m2(), x.lo, x.hi);
         if (!a || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, x.m1(), a->mem), "relation lost");
       }},
      {"alloc_left_unmapped_emb", kRel, "", Shape::Inject, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc(x.m1(), x.lo, x.hi);
         if (!a || x.emb(a->block) || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, a->mem, x.m2()), "relation lost");
       }},
      {"alloc_left_mapped_emb", kRel, "", Shape::Inject, Cfg | Range | B2 | Delta,
       [](const Instance &x) {
         auto a = alloc(x.m1(), x.lo, x.hi);
         if (!a || !valid_block(x.m2(), x.b2) || !delta_ok(x.delta) ||
             !fits(x.m2(), x.b2, x.lo + x.delta, x.hi + x.delta))
           return vacuous();
         const Embedding e = x.emb.with(a->block, Mapping{x.b2, x.delta});
         if (!emb_rel(e, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(e, a->mem, x.m2()), "relation lost");
       }},
      {"free_left_emb", kRel, "", Shape::Inject, B,
       [](const Instance &x) {
         auto m1 = free(x.m1(), x.b);
         if (!m1 || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, *m1, x.m2()), "relation lost");
       }},
      {"free_right_emb", kRel, "", Shape::Inject, B2,
       [](const Instance &x) {
         auto m2 = free(x.m2(), x.b2);
         if (!m2 || !sources_of(x.emb, x.m1(), x.b2).empty() || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, x.m1(), *m2), "relation lost");
       }},
      {"free_list_left_emb", kRel, "", Shape::Inject, Blocks,
       [](const Instance &x) {
         auto m1 = free_list(x.m1(), x.bs);
         if (!m1 || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, *m1, x.m2()), "relation lost");
       }},
      {"free_list_not_valid_block", kRel, "", Shape::Single, Blocks,
       [](const Instance &x) {
         auto m = free_list(x.m1(), x.bs);
         if (!m)
           return vacuous();
         for (BlockId b : x.bs)
           if (valid_block(*m, b))
             return Verdict::fail("block " + to_string(b) + " still valid");
         return pass();
       }},
      {"free_parallel_emb", kRel, "", Shape::Inject, B | B2,
       [](const Instance &x) {
         auto m1 = free(x.m1(), x.b);
         auto m2 = free(x.m2(), x.b2);
         if (!m1 || !m2 || !sources_of(x.emb, x.m1(), x.b2, x.b).empty() ||
             !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         return expect(emb_rel(x.emb, *m1, *m2), "relation lost");
       }},
      {"free_list_free_parallel_emb", kRel, "", Shape::Inject, Blocks | B2,
       [](const Instance &x) {
         auto m1 = free_list(x.m1(), x.bs);
         auto m2 = free(x.m2(), x.b2);
         if (!m1 || !m2 || !emb_rel(x.emb, x.m1(), x.m2()))
           return vacuous();
         for (BlockId b : sources_of(x.emb, x.m1(), x.b2))
           if (!contains(x.bs, b))
             return vacuous();
         return expect(emb_rel(x.emb, *m1, *m2), "relation lost");
       }},

      // ---- extension ----------------------------------------------------
      {"mem_extends_refl", kExt, "", Shape::Single, Cfg,
       [](const Instance &x) { return expect(mem_extends(x.m1(), x.m1()), "not reflexive"); }},
      {"mem_extends_trans", kExt, "", Shape::ExtendsChain, 0,
       [](const Instance &x) {
         if (!mem_extends(x.m1(), x.m2()) || !mem_extends(x.m2(), x.m3()))
           return vacuous();
         return expect(mem_extends(x.m1(), x.m3()), "not transitive");
       }},
      {"alloc_extends", kExt, "", Shape::Extends, Cfg | Range | Range2,
       [](const Instance &x) {
         if (!mem_extends(x.m1(), x.m2()) || x.lo2 > x.lo || x.hi > x.hi2)
           return vacuous();
         auto a1 = alloc(x.m1(), x.lo, x.hi);
         auto a2 = alloc(x.m2(), x.lo2, x.hi2);
         if (!a1 || !a2)
           return vacuous();
         if (a1->block != a2->block)
           return Verdict::fail("allocs returned different blocks");
         return expect(mem_extends(a1->mem, a2->mem), "extension lost");
       }},
      {"load_extends", kExt, "", Shape::Extends, T | B | I,
       [](const Instance &x) {
         auto v1 = load(x.t, x.m1(), x.b, x.i);
         if (!v1 || !mem_extends(x.m1(), x.m2()))
           return vacuous();
         auto v2 = load(x.t, x.m2(), x.b, x.i);
         if (!v2)
           return Verdict::fail("load refused on the larger state");
         if (!val_lessdef(*v1, *v2))
           return Verdict::fail("loaded " + show(*v1) + " above " + show(*v2));
         return pass();
       }},
      {"store_within_extends", kExt, "", Shape::Extends, T | B | I | V | V2,
       [](const Instance &x) {
         auto m1 = store(x.t, x.m1(), x.b, x.i, x.v);
         if (!m1 || !val_lessdef(x.v, x.v2) || !mem_extends(x.m1(), x.m2()))
           return vacuous();
         auto m2 = store(x.t, x.m2(), x.b, x.i, x.v2);
         if (!m2)
           return Verdict::fail("store refused on the larger state");
         return expect(mem_extends(*m1, *m2), "extension lost");
       }},
      {"store_outside_extends", kExt, "", Shape::Extends, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store(x.t, x.m2(), x.b, x.i, x.v);
         if (!m2 || !mem_extends(x.m1(), x.m2()))
           return vacuous();
         const Bounds bd = bounds(x.m1(), x.b);
         if (valid_block(x.m1(), x.b) && bd.span() > 0 && x.i < bd.high &&
             bd.low < x.i + size_chunk(x.t))
           return vacuous();
         return expect(mem_extends(x.m1(), *m2), "extension lost");
       }},
      {"free_extends", kExt, "", Shape::Extends, B,
       [](const Instance &x) {
         auto m1 = free(x.m1(), x.b);
         auto m2 = free(x.m2(), x.b);
         if (!m1 || !m2 || !mem_extends(x.m1(), x.m2()))
           return vacuous();
         return expect(mem_extends(*m1, *m2), "extension lost");
       }},

      // ---- lessdef ------------------------------------------------------
      {"mem_lessdef_refl", kLess, "", Shape::Single, Cfg,
       [](const Instance &x) { return expect(mem_lessdef(x.m1(), x.m1()), "not reflexive"); }},
      {"mem_lessdef_trans", kLess, "", Shape::LessdefChain, 0,
       [](const Instance &x) {
         if (!mem_lessdef(x.m1(), x.m2()) || !mem_lessdef(x.m2(), x.m3()))
           return vacuous();
         return expect(mem_lessdef(x.m1(), x.m3()), "not transitive");
       }},
      {"alloc_lessdef", kLess, "", Shape::Lessdef, Cfg | Range,
       [](const Instance &x) {
         auto a1 = alloc(x.m1(), x.lo, x.hi);
         if (!a1 || !mem_lessdef(x.m1(), x.m2()))
           return vacuous();
         auto a2 = alloc(x.m2(), x.lo, x.hi);
         if (!a2)
           return Verdict::fail("alloc refused on the second state");
         if (a1->block != a2->block)
           return Verdict::fail("allocs returned different blocks");
         return expect(mem_lessdef(a1->mem, a2->mem), "lessdef lost");
       }},
      {"load_lessdef", kLess, "", Shape::Lessdef, T | B | I,
       [](const Instance &x) {
         auto v1 = load(x.t, x.m1(), x.b, x.i);
         if (!v1 || !mem_lessdef(x.m1(), x.m2()))
           return vacuous();
         auto v2 = load(x.t, x.m2(), x.b, x.i);
         if (!v2)
           return Verdict::fail("load refused on the second state");
         if (!val_lessdef(*v1, *v2))
           return Verdict::fail("loaded " + show(*v1) + " above " + show(*v2));
         return pass();
       }},
      {"store_lessdef", kLess, "", Shape::Lessdef, T | B | I | V | V2,
       [](const Instance &x) {
         auto m1 = store(x.t, x.m1(), x.b, x.i, x.v);
         if (!m1 || !val_lessdef(x.v, x.v2) || !mem_lessdef(x.m1(), x.m2()))
           return vacuous();
         const MemState witness = store_lessdef_witness(x.m2(), x.t, x.b, x.i, x.v2);
         auto m2 = store(x.t, x.m2(), x.b, x.i, x.v2);
         if (!m2 || !(*m2 == witness))
           return Verdict::fail("store on the second state differs from the witness");
         return expect(mem_lessdef(*m1, witness), "lessdef lost");
       }},
      {"free_lessdef", kLess, "", Shape::Lessdef, B,
       [](const Instance &x) {
         auto m1 = free(x.m1(), x.b);
         if (!m1 || !mem_lessdef(x.m1(), x.m2()))
           return vacuous();
         auto m2 = free(x.m2(), x.b);
         if (!m2)
           return Verdict::fail("free refused on the second state");
         return expect(mem_lessdef(*m1, *m2), "lessdef lost");
       }},

      // ---- injection ----------------------------------------------------
      {"load_inject", kInj, "", Shape::Inject, T | B | I,
       [](const Instance &x) {
         auto m = x.emb(x.b);
         auto v1 = load(x.t, x.m1(), x.b, x.i);
         if (!m || !v1 || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         auto v2 = load(x.t, x.m2(), m->target, x.i + m->delta);
         if (!v2)
           return Verdict::fail("image load refused");
         if (!val_emb(x.emb, *v1, *v2))
           return Verdict::fail("loaded " + show(*v1) + " not related to " + show(*v2));
         return pass();
       }},
      {"store_mapped_inject", kInj, "", Shape::Inject, T | B | I | V | V2,
       [](const Instance &x) {
         auto m = x.emb(x.b);
         auto m1 = store(x.t, x.m1(), x.b, x.i, x.v);
         if (!m || !m1 || !val_emb(x.emb, x.v, x.v2) || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         auto m2 = store(x.t, x.m2(), m->target, x.i + m->delta, x.v2);
         if (!m2)
           return Verdict::fail("image store refused");
         return check_inject(x.emb, *m1, *m2, "injection lost");
       }},
      {"store_unmapped_inject", kInj, "", Shape::Inject, T | B | I | V,
       [](const Instance &x) {
         auto m1 = store(x.t, x.m1(), x.b, x.i, x.v);
         if (x.emb(x.b) || !m1 || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         return check_inject(x.emb, *m1, x.m2(), "injection lost");
       }},
      {"loadv_inject", kInj, "", Shape::Inject, T | V | V2,
       [](const Instance &x) {
         // v is the source address, v2 its candidate image.
         auto v1 = loadv(x.t, x.m1(), x.v);
         if (!v1 || !val_emb(x.emb, x.v, x.v2) || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         auto v2 = loadv(x.t, x.m2(), x.v2);
         if (!v2)
           return Verdict::fail("image load refused");
         if (!val_emb(x.emb, *v1, *v2))
           return Verdict::fail("loaded " + show(*v1) + " not related to " + show(*v2));
         return pass();
       }},
      {"storev_inject", kInj, "", Shape::Inject, T | B | I | V | V2,
       [](const Instance &x) {
         // Address (ptr b i); its image is forced by val_emb.
         auto m = x.emb(x.b);
         if (!m)
           return vacuous();
         const Value a1 = Vptr{x.b, x.i};
         const Value a2 = Vptr{m->target, x.i + m->delta};
         auto m1 = storev(x.t, x.m1(), a1, x.v);
         if (!m1 || !val_emb(x.emb, x.v, x.v2) || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         auto m2 = storev(x.t, x.m2(), a2, x.v2);
         if (!m2)
           return Verdict::fail("image store refused");
         return check_inject(x.emb, *m1, *m2, "injection lost");
       }},
      {"embedding_no_overlap_free", kInj, "", Shape::Inject, B,
       [](const Instance &x) {
         auto m1 = free(x.m1(), x.b);
         if (!m1 || !emb_no_overlap(x.emb, x.m1()))
           return vacuous();
         return expect(emb_no_overlap(x.emb, *m1), "overlap after free");
       }},
      {"embedding_no_overlap_free_list", kInj, "", Shape::Inject, Blocks,
       [](const Instance &x) {
         auto m1 = free_list(x.m1(), x.bs);
         if (!m1 || !emb_no_overlap(x.emb, x.m1()))
           return vacuous();
         return expect(emb_no_overlap(x.emb, *m1), "overlap after free_list");
       }},
      {"free_list_fresh_block", kInj, "P30-P34", Shape::Single, Blocks,
       [](const Instance &x) {
         auto m = free_list(x.m1(), x.bs);
         if (!m)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (fresh_block(*m, b) != fresh_block(x.m1(), b))
             return Verdict::fail("freshness of block " + to_string(b) + " changed");
         return pass();
       }},
      {"free_inject", kInj, "", Shape::Inject, Blocks | B2,
       [](const Instance &x) {
         auto m1 = free_list(x.m1(), x.bs);
         auto m2 = free(x.m2(), x.b2);
         if (!m1 || !m2 || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         for (BlockId b : sources_of(x.emb, x.m1(), x.b2))
           if (!contains(x.bs, b))
             return vacuous();
         return check_inject(x.emb, *m1, *m2, "injection lost");
       }},
      {"extend_embedding_incr", kInj, "", Shape::Inject, B | B2 | Delta,
       [](const Instance &x) {
         if (x.emb(x.b))
           return vacuous();
         const Embedding e = x.emb.with(x.b, Mapping{x.b2, x.delta});
         if (!emb_incr(x.emb, e))
           return Verdict::fail("extension drops a mapping");
         return expect(e(x.b) == std::optional<Mapping>{Mapping{x.b2, x.delta}}, "new mapping");
       }},
      {"alloc_right_inject", kInj, "", Shape::Inject, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc(x.m2(), x.lo, x.hi);
         if (!a || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         return check_inject(x.emb, x.m1(), a->mem, "injection lost");
       }},
      {"alloc_left_unmapped_inject", kInj, "", Shape::Inject, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc(x.m1(), x.lo, x.hi);
         if (!a || x.emb(a->block) || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         return check_inject(x.emb, a->mem, x.m2(), "injection lost");
       }},
      {"alloc_left_mapped_inject", kInj, "", Shape::Inject, Cfg | Range | B2 | Delta,
       [](const Instance &x) {
         auto a = alloc(x.m1(), x.lo, x.hi);
         if (!a || x.emb(a->block) || !mem_inject(x.emb, x.m1(), x.m2()) ||
             !mapped_slot_ok(x, x.lo, x.hi))
           return vacuous();
         const Embedding e = x.emb.with(a->block, Mapping{x.b2, x.delta});
         if (!emb_incr(x.emb, e))
           return Verdict::fail("extension drops a mapping");
         return check_inject(e, a->mem, x.m2(), "injection lost");
       }},
      {"alloc_list_unfold", kInj, "", Shape::Single, Cfg | Reqs,
       [](const Instance &x) {
         auto got = alloc_list(x.m1(), x.reqs);
         MemState m = x.m1();
         std::vector<BlockId> blocks;
         for (const AllocRequest &r : x.reqs) {
           auto a = alloc(m, r.low, r.high);
           if (!a)
             return expect(!got, "alloc_list succeeded where a step fails");
           blocks.push_back(a->block);
           m = std::move(a->mem);
         }
         if (!got)
           return Verdict::fail("alloc_list failed where every step succeeds");
         if (got->blocks != blocks)
           return Verdict::fail("alloc_list returned different blocks");
         return expect(got->mem == m, "alloc_list state differs from stepwise allocs");
       }},
      {"alloc_list_left_inject", kInj, "", Shape::Inject, Cfg | Reqs | B2 | Range2,
       [](const Instance &x) {
         // Frame for the new blocks starts at lo2 inside b2.
         auto got = alloc_list(x.m1(), x.reqs);
         if (!got || !mem_inject(x.emb, x.m1(), x.m2()) || !valid_block(x.m2(), x.b2))
           return vacuous();
         for (BlockId b : got->blocks)
           if (x.emb(b))
             return vacuous();
         const FrameLayout layout = frame_layout(x.reqs, x.lo2);
         if (!fits(x.m2(), x.b2, x.lo2, layout.end) ||
             !range_free_in_target(x.emb, x.m1(), x.b2, x.lo2, layout.end))
           return vacuous();
         Embedding e = x.emb;
         for (std::size_t k = 0; k < got->blocks.size(); ++k)
           e = e.with(got->blocks[k], Mapping{x.b2, layout.deltas[k]});
         if (!emb_incr(x.emb, e))
           return Verdict::fail("extension drops a mapping");
         return check_inject(e, got->mem, x.m2(), "injection lost");
       }},
      {"alloc_list_alloc_inject", kInj, "", Shape::Inject, Cfg | Reqs,
       [](const Instance &x) {
         auto left = alloc_list(x.m1(), x.reqs);
         if (!left || !mem_inject(x.emb, x.m1(), x.m2()))
           return vacuous();
         for (BlockId b : left->blocks)
           if (x.emb(b))
             return vacuous();
         auto w = alloc_list_alloc_witness(x.emb, x.m1(), x.m2(), x.reqs);
         if (!w)
           return vacuous(); // the target ran out of room
         if (!(w->left == left->mem) || w->blocks != left->blocks)
           return Verdict::fail("witness disagrees with alloc_list");
         if (!emb_incr(x.emb, w->emb))
           return Verdict::fail("witness embedding not an extension");
         return check_inject(w->emb, w->left, w->right, "injection lost");
       }},
  };
}

} // namespace blockmem::lawcheck::support
