#pragma once

#include "blockmem/lawcheck/laws.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace blockmem::lawcheck {

/// Histories of the tiny universe: at most two blocks with bounds from
/// {(0,0), (0,4), (-4,4), (0,8)}, at most one store from a fixed set, then
/// any subset of frees. Deduplicated by resulting state.
std::vector<std::vector<Step>> tiny_histories();

/// A dozen hand-picked histories used when a law has too many quantified
/// parameters for the full tiny universe.
std::vector<std::vector<Step>> core_histories();

/// Canonical text of a state's four fields; equal keys iff equal states.
std::string state_key(const MemState &m);

// History transforms used to build related pairs.

/// Every stored value becomes undef.
std::vector<Step> weaken(std::vector<Step> h);
/// Every stored undef becomes (int 7).
std::vector<Step> define(std::vector<Step> h);
/// Every alloc grows by `pad` bytes on both sides.
std::vector<Step> widen(std::vector<Step> h, Offset pad);

/// Where one source block goes in the image.
struct Placement {
  bool mapped = false;
  int target = 0; // index of the target block, 0-based
  Offset delta = 0;
};

struct ImagePair {
  std::vector<Step> h1, h2;
  Embedding emb;
};

/// Builds a target history holding the image of h1 under `plan` (one entry
/// per alloc in h1). Target blocks are allocated first, as the hull of their
/// images grown by `pad`. Each successful source store to a mapped block is
/// replayed at the shifted offset with pointers translated; pointers to
/// unmapped blocks are replaced by undef in both histories.
ImagePair image_of(std::vector<Step> h1, const std::vector<Placement> &plan, Offset pad);

/// Makes blocks `a` and `b` (1-based, equal bounds) aliases: stores to b are
/// dropped and every store to a is mirrored into b.
std::vector<Step> mirror_stores(const std::vector<Step> &h, BlockId a, BlockId b);

/// Feeds every instance of the law's exhaustive universe to `sink` until it
/// returns false. The universe is the full tiny one when that stays within
/// `cap` instances, otherwise a smaller tier. Returns the number fed.
std::uint64_t enumerate(const Law &law, std::uint64_t cap,
                        const std::function<bool(const Instance &)> &sink);

/// One random instance, biased towards satisfying the law's hypotheses.
Instance random_instance(const Law &law, SplitMix64 &rng);

} // namespace blockmem::lawcheck
