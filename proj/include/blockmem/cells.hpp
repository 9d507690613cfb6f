#pragma once

#include "blockmem/chunks.hpp"

#include <map>
#include <optional>

namespace blockmem {

/// A datum anchored at the first byte of its footprint.
struct Datum {
  Chunk chunk;
  Value value;
  bool operator==(const Datum &) const = default;
};

/// One byte-cell of a block. nullopt is the Empty cell: never written, or a
/// continuation byte of a datum anchored at a lower offset.
using Content = std::optional<Datum>;

/// Content function of one block: offset -> Content, Empty by default.
/// Only Datum cells are materialized.
class BlockContents {
public:
  using Cells = std::map<Offset, Datum>;

  BlockContents() = default;

  Content at(Offset ofs) const;
  const Cells &cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  bool operator==(const BlockContents &) const = default;

  friend BlockContents update(Offset ofs, const Content &c, BlockContents f);
  friend BlockContents set_cont(BlockContents f, Offset ofs, Offset n);

private:
  Cells cells_;
};

/// result(ofs) = c, result(i) = f(i) elsewhere.
BlockContents update(Offset ofs, const Content &c, BlockContents f);

/// True iff every cell in [ofs, ofs + n) is Empty. Requires n >= 0.
bool check_cont(const BlockContents &f, Offset ofs, Offset n);

/// Clears [ofs, ofs + n) to Empty. Requires n >= 0.
BlockContents set_cont(BlockContents f, Offset ofs, Offset n);

/// Datum at ofs, continuation cells over the rest of the footprint.
BlockContents store_contents(const BlockContents &f, Chunk t, Offset ofs, const Value &v);

/// convert(v, t) when a compatible datum sits at ofs with an intact
/// continuation tail; Vundef otherwise.
Value load_contents(Chunk t, const BlockContents &f, Offset ofs);

} // namespace blockmem
