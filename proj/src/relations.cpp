#include "blockmem/relations.hpp"

#include "blockmem/fault.hpp"

namespace blockmem {

namespace {

Offset floor_div(Offset a, Offset b) {
  Offset q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

Offset round_up(Offset a, Offset m) { return -floor_div(-a, m) * m; }

} // namespace

Embedding Embedding::identity(const MemState &m) {
  Map map;
  for (BlockId b : m.valid_blocks())
    map.emplace(b, Mapping{b, 0});
  return Embedding(std::move(map));
}

std::optional<Mapping> Embedding::operator()(BlockId b) const {
  auto it = map_.find(b);
  if (it == map_.end())
    return std::nullopt;
  return it->second;
}

Embedding Embedding::with(BlockId b, Mapping target) const {
  Embedding e = *this;
  e.map_.insert_or_assign(b, target);
  return e;
}

Embedding Embedding::without(BlockId b) const {
  Embedding e = *this;
  e.map_.erase(b);
  return e;
}

bool val_lessdef(const Value &v1, const Value &v2) { return is_undef(v1) || v1 == v2; }

bool val_emb(const Embedding &emb, const Value &v1, const Value &v2) {
  if (is_undef(v1))
    return true;
  if (const auto *p1 = std::get_if<Vptr>(&v1)) {
    const auto *p2 = std::get_if<Vptr>(&v2);
    auto m = emb(p1->block);
    return p2 && m && p2->block == m->target && p2->ofs == p1->ofs + m->delta;
  }
  return v1 == v2;
}

bool mem_lessdef(const MemState &m1, const MemState &m2) {
  if (!same_domain(m1, m2))
    return false;
  return mem_emb(Embedding::identity(m1), m1, m2, val_lessdef);
}

bool mem_extends(const MemState &m1, const MemState &m2) {
  if (m1.nextblock() != m2.nextblock())
    return false;
  for (BlockId b : m1.valid_blocks()) {
    if (!valid_block(m2, b))
      return false;
    Bounds b1 = bounds(m1, b), b2 = bounds(m2, b);
    if (b2.low > b1.low || b1.high > b2.high)
      return false;
  }
  return mem_emb(Embedding::identity(m1), m1, m2, val_lessdef);
}

bool emb_no_overlap(const Embedding &emb, const MemState &m1) {
  struct Image {
    BlockId source;
    BlockId target;
    Offset low, high;
  };
  std::vector<Image> images;
  for (BlockId b : m1.valid_blocks()) {
    auto m = emb(b);
    Bounds bd = bounds(m1, b);
    if (m && bd.span() > 0)
      images.push_back({b, m->target, bd.low + m->delta, bd.high + m->delta});
  }
  for (std::size_t x = 0; x < images.size(); ++x)
    for (std::size_t y = x + 1; y < images.size(); ++y) {
      const Image &a = images[x], &c = images[y];
      if (a.target == c.target && a.low < c.high && c.low < a.high)
        return false;
    }
  return true;
}

bool deltas_aligned(const Embedding &emb) {
  for (const auto &[b, m] : emb.entries())
    if (m.delta % kDeltaAlign != 0)
      return false;
  return true;
}

bool mem_inject(const Embedding &emb, const MemState &m1, const MemState &m2) {
  if (!fault::active(fault::Fault::InjectSkipsNoOverlap) && !emb_no_overlap(emb, m1))
    return false;
  if (!deltas_aligned(emb))
    return false;
  return mem_emb(emb, m1, m2, [&](const Value &v1, const Value &v2) {
    return val_emb(emb, v1, v2);
  });
}

bool emb_incr(const Embedding &e1, const Embedding &e2) {
  for (const auto &[b, m] : e1.entries()) {
    auto other = e2(b);
    if (!other || !(*other == m))
      return false;
  }
  return true;
}

MemState store_lessdef_witness(const MemState &m2, Chunk t, BlockId b, Offset ofs,
                               const Value &v2) {
  MemState::ContentsMap contents = m2.contents_map();
  contents.insert_or_assign(b, store_contents(m2.contents(b), t, ofs + 0, v2));
  return MemState::make(m2.nextblock(), m2.bounds_map(), m2.freed(), std::move(contents),
                        m2.config());
}

std::optional<ParallelAlloc> alloc_parallel_witness(const Embedding &emb,
                                                    const MemState &m2, BlockId b1,
                                                    Offset lo, Offset hi) {
  auto a = alloc(m2, lo, hi);
  if (!a)
    return std::nullopt;
  return ParallelAlloc{a->block, std::move(a->mem), emb.with(b1, Mapping{a->block, 0})};
}

FrameLayout frame_layout(std::span<const AllocRequest> reqs, Offset base) {
  FrameLayout out;
  Offset cursor = base;
  for (const auto &r : reqs) {
    Offset delta = round_up(cursor - r.low, kDeltaAlign);
    out.deltas.push_back(delta);
    if (r.high > r.low)
      cursor = std::max(cursor, r.high + delta);
  }
  out.end = cursor;
  return out;
}

std::optional<ListAllocInject> alloc_list_alloc_witness(const Embedding &emb,
                                                        const MemState &m1,
                                                        const MemState &m2,
                                                        std::span<const AllocRequest> reqs) {
  auto left = alloc_list(m1, reqs);
  if (!left)
    return std::nullopt;
  FrameLayout layout = frame_layout(reqs, 0);
  auto frame = alloc(m2, 0, layout.end);
  if (!frame)
    return std::nullopt;
  Embedding extended = emb;
  for (std::size_t k = 0; k < left->blocks.size(); ++k)
    extended = extended.with(left->blocks[k], Mapping{frame->block, layout.deltas[k]});
  return ListAllocInject{std::move(left->blocks), std::move(left->mem), frame->block,
                         std::move(frame->mem), std::move(extended)};
}

} // namespace blockmem
