#pragma once

#include "blockmem/lawcheck/rng.hpp"
#include "blockmem/memstate.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blockmem::lawcheck {

/// One operation of a generated scenario. Blocks are referenced by id; since
/// ids are issued in order, block N is the N-th successful alloc.
struct Step {
  enum class Kind { Alloc, Free, Store, Load, QueryValid, QueryBounds };

  Kind kind = Kind::Alloc;
  Offset lo = 0, hi = 0; // Alloc
  BlockId block{1};      // everything else
  Chunk chunk = Chunk::Int32;
  Offset ofs = 0;
  Value value;

  static Step alloc(Offset lo, Offset hi);
  static Step free(BlockId b);
  static Step store(Chunk t, BlockId b, Offset ofs, Value v);
  static Step load(Chunk t, BlockId b, Offset ofs);
  static Step query_valid(BlockId b);
  static Step query_bounds(BlockId b);

  bool mutates() const { return kind == Kind::Alloc || kind == Kind::Free || kind == Kind::Store; }
  bool operator==(const Step &) const = default;
};

/// Applies the mutating steps in order from empty(cfg), skipping any step
/// that fails. Every result is therefore a reachable state.
MemState replay(std::span<const Step> steps, MemConfig cfg = {});

/// Trace-like rendering: `alloc 0 8 -> $b1`, `store int32 $b1 0 (int 4)`.
std::string render(const Step &s);
std::string render(std::span<const Step> steps);

struct GenConfig {
  int max_blocks = 4;
  Offset lo_min = -8;
  Offset hi_max = 16;
  int max_steps = 10;
  bool with_queries = false;
};

Value random_value(SplitMix64 &rng, std::int64_t max_block);

/// Random mutating steps (plus queries if requested). Stores mostly target
/// valid, aligned, in-bounds locations so that most of them take effect.
std::vector<Step> gen_steps(SplitMix64 &rng, const GenConfig &cfg);

/// A reachable state drawn from (seed, cfg). Deterministic.
MemState gen_state(std::uint64_t seed, const GenConfig &cfg);

} // namespace blockmem::lawcheck
