#pragma once

#include "blockmem/memstate.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace blockmem {

/// Image of a source block: target block and offset shift.
struct Mapping {
  BlockId target;
  Offset delta = 0;
  bool operator==(const Mapping &) const = default;
};

/// Partial relocation map from source blocks to target blocks.
class Embedding {
public:
  using Map = std::map<BlockId, Mapping>;

  Embedding() = default;
  explicit Embedding(Map m) : map_(std::move(m)) {}

  /// b -> (b, 0) for every valid block of m.
  static Embedding identity(const MemState &m);

  std::optional<Mapping> operator()(BlockId b) const;
  Embedding with(BlockId b, Mapping target) const;
  Embedding without(BlockId b) const;

  const Map &entries() const { return map_; }
  bool empty() const { return map_.empty(); }
  bool operator==(const Embedding &) const = default;

private:
  Map map_;
};

/// Deltas must be multiples of this so that aligned accesses stay aligned.
inline constexpr Offset kDeltaAlign = kMaxAlign;

bool val_lessdef(const Value &v1, const Value &v2);
bool val_emb(const Embedding &emb, const Value &v1, const Value &v2);

/// Calls f(t, b, i) for every (t, b, i) with valid_access(m, t, b, i), in a
/// fixed order. Stops early when f returns false; returns false in that case.
template <class F> bool for_each_valid_access(const MemState &m, F &&f) {
  for (BlockId b : m.valid_blocks()) {
    const Bounds bd = bounds(m, b);
    for (Chunk t : kAllChunks)
      for (Offset i = bd.low; i + size_chunk(t) <= bd.high; ++i)
        if (valid_access(m, t, b, i) && !f(t, b, i))
          return false;
  }
  return true;
}

/// Generic embedding relation: every valid access of m1 through a mapped
/// block is a valid access of m2 at the shifted offset, and the two loaded
/// values satisfy `rel`.
///
/// `rel(Vundef, v)` must hold for every v. Only cells holding a datum can
/// load a defined value, so values are compared at those cells alone.
template <class Rel>
bool mem_emb(const Embedding &emb, const MemState &m1, const MemState &m2, Rel &&rel) {
  for (BlockId b1 : m1.valid_blocks()) {
    auto target = emb(b1);
    if (!target)
      continue;
    const BlockId b2 = target->target;
    const Offset delta = target->delta;
    const Bounds bd = bounds(m1, b1);
    for (Chunk t : kAllChunks)
      for (Offset i = bd.low; i + size_chunk(t) <= bd.high; ++i)
        if (valid_access(m1, t, b1, i) && !valid_access(m2, t, b2, i + delta))
          return false;

    const BlockContents &c1 = m1.contents(b1);
    const BlockContents &c2 = m2.contents(b2);
    for (const auto &[ofs, datum] : c1.cells())
      for (Chunk t : kAllChunks) {
        if (!valid_access(m1, t, b1, ofs))
          continue;
        Value v1 = load_contents(t, c1, ofs);
        if (is_undef(v1))
          continue;
        if (!rel(v1, load_contents(t, c2, ofs + delta)))
          return false;
      }
  }
  return true;
}

bool mem_lessdef(const MemState &m1, const MemState &m2);
bool mem_extends(const MemState &m1, const MemState &m2);

/// Distinct valid blocks of m1 sent to the same target occupy disjoint
/// shifted ranges.
bool emb_no_overlap(const Embedding &emb, const MemState &m1);
bool deltas_aligned(const Embedding &emb);
bool mem_inject(const Embedding &emb, const MemState &m1, const MemState &m2);

/// Every mapping of e1 is present, unchanged, in e2.
bool emb_incr(const Embedding &e1, const Embedding &e2);

// ---------------------------------------------------------------------------
// Witnesses for the existential simulation lemmas.

/// m2 with block b's contents replaced by a store of v2, rebuilt field by
/// field from m2's nextblock, bounds and freed set.
MemState store_lessdef_witness(const MemState &m2, Chunk t, BlockId b, Offset ofs,
                               const Value &v2);

struct ParallelAlloc {
  BlockId target;
  MemState mem;
  Embedding emb;
};

/// Allocates [lo, hi) in m2 and maps the source block b1 onto it at delta 0.
std::optional<ParallelAlloc> alloc_parallel_witness(const Embedding &emb,
                                                    const MemState &m2, BlockId b1,
                                                    Offset lo, Offset hi);

/// Packs requests one after another, starting at `base`, with every delta a
/// multiple of kDeltaAlign. Returns the deltas and the end of the last range.
struct FrameLayout {
  std::vector<Offset> deltas;
  Offset end = 0;
};
FrameLayout frame_layout(std::span<const AllocRequest> reqs, Offset base);

struct ListAllocInject {
  std::vector<BlockId> blocks;
  MemState left;
  BlockId frame;
  MemState right;
  Embedding emb;
};

/// Allocates every request in m1, one frame block in m2 that holds them all,
/// and extends emb with the frame layout.
std::optional<ListAllocInject> alloc_list_alloc_witness(const Embedding &emb,
                                                        const MemState &m1,
                                                        const MemState &m2,
                                                        std::span<const AllocRequest> reqs);

} // namespace blockmem
