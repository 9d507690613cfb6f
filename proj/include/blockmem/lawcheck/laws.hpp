#pragma once

#include "blockmem/lawcheck/scenario.hpp"
#include "blockmem/relations.hpp"

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace blockmem::lawcheck {

struct Verdict {
  enum class Kind { Pass, Vacuous, Fail };
  Kind kind = Kind::Pass;
  std::string detail;

  static Verdict pass() { return {}; }
  /// The hypotheses did not hold; the instance says nothing.
  static Verdict vacuous() { return {Kind::Vacuous, {}}; }
  static Verdict fail(std::string why) { return {Kind::Fail, std::move(why)}; }
};

/// One assignment of a law's quantified variables. Memory states are carried
/// as histories (replayed from empty) so counterexamples shrink and replay.
struct Instance {
  std::vector<Step> h1, h2, h3;
  MemConfig cfg;
  Embedding emb;
  BlockContents f, g;
  Content c;
  Chunk t = Chunk::Int32, t2 = Chunk::Int32;
  BlockId b{1}, b2{1};
  Offset i = 0, i2 = 0, n = 0, delta = 0;
  Offset lo = 0, hi = 0, lo2 = 0, hi2 = 0;
  Value v, v2;
  std::vector<BlockId> bs;
  std::vector<AllocRequest> reqs;

  const MemState &m1() const { return state(0); }
  const MemState &m2() const { return state(1); }
  const MemState &m3() const { return state(2); }

  /// Forget cached states; call after editing a history or cfg.
  void touch() { cache_ = {}; }

private:
  const MemState &state(int k) const;
  mutable std::array<std::shared_ptr<const MemState>, 3> cache_;
};

/// Which instance fields a law quantifies over. Drives enumeration,
/// rendering and shrinking.
namespace param {
inline constexpr unsigned T = 1u << 0;
inline constexpr unsigned T2 = 1u << 1;
inline constexpr unsigned B = 1u << 2;
inline constexpr unsigned B2 = 1u << 3;
inline constexpr unsigned I = 1u << 4;
inline constexpr unsigned I2 = 1u << 5;
inline constexpr unsigned N = 1u << 6;
inline constexpr unsigned V = 1u << 7;
inline constexpr unsigned V2 = 1u << 8;
inline constexpr unsigned Range = 1u << 9;  // lo, hi
inline constexpr unsigned Range2 = 1u << 10; // lo2, hi2
inline constexpr unsigned Blocks = 1u << 11; // bs
inline constexpr unsigned Reqs = 1u << 12;
inline constexpr unsigned C = 1u << 13;
inline constexpr unsigned Delta = 1u << 14;
inline constexpr unsigned G = 1u << 15;   // second content map
inline constexpr unsigned Cfg = 1u << 16; // capacity / alignment config
} // namespace param

/// How the states (or content maps) of an instance are related up front.
enum class Shape {
  Cells,        // f (and g): content maps, no memory state
  Single,       // h1
  SameDomain,   // h1, h2 with equal domains
  Lessdef,      // h1 below h2
  LessdefChain, // h1 below h2 below h3
  Extends,      // h2 extends h1
  ExtendsChain, // h3 extends h2 extends h1
  Inject,       // h2 holds an image of h1 under emb
};

std::string_view shape_name(Shape s);

struct Law {
  std::string_view name;
  std::string_view module;
  std::string_view group; // axiom group, or empty
  Shape shape;
  unsigned params;
  Verdict (*check)(const Instance &);
};

const std::vector<Law> &all_laws();
const Law *find_law(std::string_view name);

/// Table lemmas that are not laws of their own.
struct InventoryEntry {
  std::string_view name;
  std::string_view module;
  std::string_view status; // "subsumed by X" or "out of scope (proof-internal)"
};
const std::vector<InventoryEntry> &unimplemented_lemmas();

/// Human-readable dump of the fields the law uses.
std::string render(const Instance &x, const Law &law);

} // namespace blockmem::lawcheck
