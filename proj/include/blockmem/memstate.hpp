#pragma once

#include "blockmem/cells.hpp"
#include "blockmem/chunks.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace blockmem {

/// [low, high) byte range of a block.
struct Bounds {
  Offset low = 0;
  Offset high = 0;

  Offset span() const { return high > low ? high - low : 0; }
  bool operator==(const Bounds &) const = default;
};

/// Decides whether an allocation of a given span may proceed. Depends only
/// on the bytes currently allocated and the request, so two states with the
/// same domain always get the same answer.
struct CapacityPolicy {
  std::optional<std::uint64_t> max_total_bytes;

  static CapacityPolicy unlimited() { return {}; }
  static CapacityPolicy bytes(std::uint64_t n) { return CapacityPolicy{n}; }

  bool enough_free_memory(std::uint64_t allocated, Offset request) const;
  bool operator==(const CapacityPolicy &) const = default;
};

struct MemConfig {
  CapacityPolicy capacity;
  bool check_alignment = true;

  bool operator==(const MemConfig &) const = default;
};

struct Allocation;

/// The memory record: next block id, bounds, freed set and per-block
/// contents. Immutable in practice; every operation returns a new state.
/// The config rides along but is not part of state equality.
class MemState {
public:
  using BoundsMap = std::map<BlockId, Bounds>;
  using FreedSet = std::set<BlockId>;
  using ContentsMap = std::map<BlockId, BlockContents>;

  explicit MemState(MemConfig cfg = {}) : config_(cfg) {}

  /// Rebuilds a state from its four fields.
  static MemState make(BlockId nextblock, BoundsMap bounds, FreedSet freed,
                       ContentsMap contents, MemConfig cfg = {});

  BlockId nextblock() const { return nextblock_; }
  const BoundsMap &bounds_map() const { return bounds_; }
  const FreedSet &freed() const { return freed_; }
  const ContentsMap &contents_map() const { return contents_; }
  const MemConfig &config() const { return config_; }

  const BlockContents &contents(BlockId b) const;

  /// Bytes held by blocks that are currently valid.
  std::uint64_t allocated_bytes() const;

  /// Blocks in [1, nextblock) not freed, ascending.
  std::vector<BlockId> valid_blocks() const;

  bool operator==(const MemState &other) const {
    return nextblock_ == other.nextblock_ && bounds_ == other.bounds_ &&
           freed_ == other.freed_ && contents_ == other.contents_;
  }

private:
  friend std::optional<Allocation> alloc(const MemState &, Offset, Offset);
  friend std::optional<MemState> free(const MemState &, BlockId);
  friend std::optional<MemState> store(Chunk, const MemState &, BlockId, Offset,
                                       const Value &);

  BlockId nextblock_{1};
  BoundsMap bounds_;
  FreedSet freed_;
  ContentsMap contents_;
  MemConfig config_;
};

struct Allocation {
  BlockId block;
  MemState mem;
};

struct AllocRequest {
  Offset low = 0;
  Offset high = 0;
  bool operator==(const AllocRequest &) const = default;
};

struct AllocListResult {
  std::vector<BlockId> blocks;
  MemState mem;
};

MemState empty(MemConfig cfg = {});

/// Fresh block with bounds [l, h). Fails only when the capacity policy
/// refuses the request.
std::optional<Allocation> alloc(const MemState &m, Offset l, Offset h);

/// Fails unless b is valid. Bounds and contents are kept.
std::optional<MemState> free(const MemState &m, BlockId b);

std::optional<Value> load(Chunk t, const MemState &m, BlockId b, Offset i);
std::optional<MemState> store(Chunk t, const MemState &m, BlockId b, Offset i,
                              const Value &v);

bool valid_block(const MemState &m, BlockId b);
bool fresh_block(const MemState &m, BlockId b);

/// Bounds of b; (0,0) for blocks never allocated.
Bounds bounds(const MemState &m, BlockId b);

bool aligned(Chunk t, Offset i);
bool valid_access(const MemState &m, Chunk t, BlockId b, Offset i);

/// Same nextblock, freed set and bounds. Contents may differ.
bool same_domain(const MemState &m1, const MemState &m2);

std::optional<MemState> free_list(const MemState &m, std::span<const BlockId> bs);
std::optional<AllocListResult> alloc_list(const MemState &m,
                                          std::span<const AllocRequest> reqs);

std::optional<Value> loadv(Chunk t, const MemState &m, const Value &addr);
std::optional<MemState> storev(Chunk t, const MemState &m, const Value &addr,
                               const Value &v);

} // namespace blockmem
