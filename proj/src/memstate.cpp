#include "blockmem/memstate.hpp"

#include "blockmem/fault.hpp"

namespace blockmem {

bool CapacityPolicy::enough_free_memory(std::uint64_t allocated, Offset request) const {
  if (!max_total_bytes)
    return true;
  const auto need = static_cast<std::uint64_t>(request > 0 ? request : 0);
  return allocated <= *max_total_bytes && need <= *max_total_bytes - allocated;
}

MemState MemState::make(BlockId nextblock, BoundsMap bounds, FreedSet freed,
                        ContentsMap contents, MemConfig cfg) {
  MemState m(cfg);
  m.nextblock_ = nextblock;
  m.bounds_ = std::move(bounds);
  m.freed_ = std::move(freed);
  m.contents_ = std::move(contents);
  return m;
}

const BlockContents &MemState::contents(BlockId b) const {
  static const BlockContents kEmpty;
  auto it = contents_.find(b);
  return it == contents_.end() ? kEmpty : it->second;
}

std::uint64_t MemState::allocated_bytes() const {
  std::uint64_t total = 0;
  for (const auto &[b, bd] : bounds_)
    if (!freed_.contains(b))
      total += static_cast<std::uint64_t>(bd.span());
  return total;
}

std::vector<BlockId> MemState::valid_blocks() const {
  std::vector<BlockId> out;
  for (BlockId b{1}; b < nextblock_; b = b.next())
    if (!freed_.contains(b))
      out.push_back(b);
  return out;
}

MemState empty(MemConfig cfg) { return MemState(cfg); }

std::optional<Allocation> alloc(const MemState &m, Offset l, Offset h) {
  const auto &policy = m.config_.capacity;
  if (policy.max_total_bytes &&
      !policy.enough_free_memory(m.allocated_bytes(), h - l))
    return std::nullopt;

  MemState r = m;
  BlockId b = m.nextblock_;
  if (fault::active(fault::Fault::ReuseFreedIds) && !r.freed_.empty()) {
    b = *r.freed_.begin();
    r.freed_.erase(r.freed_.begin());
  } else {
    r.nextblock_ = b.next();
  }
  r.bounds_.insert_or_assign(b, Bounds{l, h});
  r.contents_.insert_or_assign(b, BlockContents{});
  return Allocation{b, std::move(r)};
}

std::optional<MemState> free(const MemState &m, BlockId b) {
  if (!valid_block(m, b) && !fault::active(fault::Fault::FreeIgnoresValidity))
    return std::nullopt;
  MemState r = m;
  r.freed_.insert(b);
  return r;
}

bool valid_block(const MemState &m, BlockId b) {
  return BlockId{1} <= b && b < m.nextblock() && !m.freed().contains(b);
}

bool fresh_block(const MemState &m, BlockId b) { return b >= m.nextblock(); }

Bounds bounds(const MemState &m, BlockId b) {
  auto it = m.bounds_map().find(b);
  return it == m.bounds_map().end() ? Bounds{} : it->second;
}

bool aligned(Chunk t, Offset i) {
  Offset a = align_chunk(t);
  return ((i % a) + a) % a == 0;
}

bool valid_access(const MemState &m, Chunk t, BlockId b, Offset i) {
  if (!valid_block(m, b))
    return false;
  Bounds bd = bounds(m, b);
  if (i < bd.low || i + size_chunk(t) > bd.high)
    return false;
  if (!m.config().check_alignment || fault::active(fault::Fault::DropAlignmentCheck))
    return true;
  return aligned(t, i);
}

std::optional<Value> load(Chunk t, const MemState &m, BlockId b, Offset i) {
  if (!valid_access(m, t, b, i))
    return std::nullopt;
  return load_contents(t, m.contents(b), i);
}

std::optional<MemState> store(Chunk t, const MemState &m, BlockId b, Offset i,
                              const Value &v) {
  if (!valid_access(m, t, b, i))
    return std::nullopt;
  MemState r = m;
  r.contents_.insert_or_assign(b, store_contents(m.contents(b), t, i, v));
  return r;
}

bool same_domain(const MemState &m1, const MemState &m2) {
  return m1.nextblock() == m2.nextblock() && m1.freed() == m2.freed() &&
         m1.bounds_map() == m2.bounds_map();
}

std::optional<MemState> free_list(const MemState &m, std::span<const BlockId> bs) {
  MemState cur = m;
  for (BlockId b : bs) {
    auto next = free(cur, b);
    if (!next)
      return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

std::optional<AllocListResult> alloc_list(const MemState &m,
                                          std::span<const AllocRequest> reqs) {
  AllocListResult out{{}, m};
  for (const auto &r : reqs) {
    auto a = alloc(out.mem, r.low, r.high);
    if (!a)
      return std::nullopt;
    out.blocks.push_back(a->block);
    out.mem = std::move(a->mem);
  }
  return out;
}

std::optional<Value> loadv(Chunk t, const MemState &m, const Value &addr) {
  if (const auto *p = std::get_if<Vptr>(&addr))
    return load(t, m, p->block, p->ofs);
  return std::nullopt;
}

std::optional<MemState> storev(Chunk t, const MemState &m, const Value &addr,
                               const Value &v) {
  if (const auto *p = std::get_if<Vptr>(&addr))
    return store(t, m, p->block, p->ofs, v);
  return std::nullopt;
}

} // namespace blockmem
