#pragma once

// A second, deliberately naive implementation of the memory model used as a
// differential reference. It shares only plain data types with the main
// implementation: its own size table, its own conversion, association lists
// instead of ordered maps, and the textbook recursions for the continuation
// helpers. Keep it that way.

#include "blockmem/cells.hpp"
#include "blockmem/lawcheck/scenario.hpp"
#include "blockmem/memstate.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blockmem::oracle {

struct Cell {
  Offset ofs;
  std::optional<Datum> content;
};

/// Newest binding last; lookups scan backwards.
using AssocCells = std::vector<Cell>;

Offset size_of(Chunk t);
Offset align_of(Chunk t);
Value convert(const Value &v, Chunk t);

std::optional<Datum> lookup(const AssocCells &f, Offset ofs);
AssocCells update(Offset ofs, std::optional<Datum> c, AssocCells f);

/// n = 0 -> true; otherwise f(ofs) empty and check_cont f (ofs+1) (n-1).
bool check_cont(const AssocCells &f, Offset ofs, Offset n);
/// n = 0 -> f; otherwise set_cont (update ofs None f) (ofs+1) (n-1).
AssocCells set_cont(AssocCells f, Offset ofs, Offset n);
AssocCells store_contents(AssocCells f, Chunk t, Offset ofs, const Value &v);
Value load_contents(Chunk t, const AssocCells &f, Offset ofs);

AssocCells from_contents(const BlockContents &f);

struct Observation {
  std::vector<std::string> events;
  std::string final_state;
};

/// Runs the steps on the naive model and records every observable outcome.
Observation oracle_exec(std::span<const lawcheck::Step> steps, const MemConfig &cfg = {});

/// The same observations taken from the main implementation.
Observation main_exec(std::span<const lawcheck::Step> steps, const MemConfig &cfg = {});

struct Divergence {
  std::size_t index; // event index, or events.size() for the final state
  std::string main;
  std::string oracle;
};

std::optional<Divergence> differential(std::span<const lawcheck::Step> steps,
                                       const MemConfig &cfg = {});

} // namespace blockmem::oracle
