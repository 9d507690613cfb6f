#include "blockmem/cells.hpp"

#include "blockmem/fault.hpp"

#include <cassert>

namespace blockmem {

Content BlockContents::at(Offset ofs) const {
  auto it = cells_.find(ofs);
  if (it == cells_.end())
    return std::nullopt;
  return it->second;
}

BlockContents update(Offset ofs, const Content &c, BlockContents f) {
  if (c)
    f.cells_.insert_or_assign(ofs, *c);
  else
    f.cells_.erase(ofs);
  return f;
}

bool check_cont(const BlockContents &f, Offset ofs, Offset n) {
  assert(n >= 0);
  auto it = f.cells().lower_bound(ofs);
  return it == f.cells().end() || it->first >= ofs + n;
}

BlockContents set_cont(BlockContents f, Offset ofs, Offset n) {
  assert(n >= 0);
  auto first = f.cells_.lower_bound(ofs);
  auto last = f.cells_.lower_bound(ofs + n);
  f.cells_.erase(first, last);
  return f;
}

BlockContents store_contents(const BlockContents &f, Chunk t, Offset ofs, const Value &v) {
  BlockContents cleared = fault::active(fault::Fault::SkipContinuationClear)
                              ? f
                              : set_cont(f, ofs + 1, size_chunk(t) - 1);
  return update(ofs, Datum{t, v}, std::move(cleared));
}

Value load_contents(Chunk t, const BlockContents &f, Offset ofs) {
  Content c = f.at(ofs);
  if (c && compat(t, c->chunk) && check_cont(f, ofs + 1, size_chunk(t) - 1))
    return convert(c->value, t);
  return Vundef{};
}

} // namespace blockmem
