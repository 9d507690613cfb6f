#pragma once

// Shared helpers for the law tables. Internal to the library.

#include "blockmem/lawcheck/laws.hpp"
#include "blockmem/lawcheck/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blockmem::lawcheck::support {

inline Verdict pass() { return Verdict::pass(); }
inline Verdict vacuous() { return Verdict::vacuous(); }
inline Verdict expect(bool ok, const char *what) {
  return ok ? Verdict::pass() : Verdict::fail(what);
}

inline std::string show(const std::optional<Value> &v) { return v ? to_string(*v) : "fail"; }
inline std::string show(const Value &v) { return to_string(v); }
inline std::string show(const Content &c) {
  return c ? "(" + std::string(chunk_name(c->chunk)) + " " + to_string(c->value) + ")" : "empty";
}

template <class A, class B>
Verdict expect_eq(const A &got, const B &want, const char *what) {
  if (got == want)
    return Verdict::pass();
  return Verdict::fail(std::string(what) + ": got " + show(got) + ", expected " + show(want));
}

inline bool overlap(Offset i, Chunk t, Offset j, Chunk u) {
  return i < j + size_chunk(u) && j < i + size_chunk(t);
}

/// mem_emb instantiated with val_emb, the relation of the embedding laws.
inline bool emb_rel(const Embedding &e, const MemState &m1, const MemState &m2) {
  return mem_emb(e, m1, m2, [&](const Value &a, const Value &b) { return val_emb(e, a, b); });
}

/// Blocks worth quantifying over: every issued id plus the next fresh one.
inline std::vector<BlockId> known_blocks(const MemState &m) {
  std::vector<BlockId> out;
  for (BlockId b{1}; b <= m.nextblock(); b = b.next())
    out.push_back(b);
  return out;
}

std::vector<Law> concrete_laws();
std::vector<Law> relation_laws();

} // namespace blockmem::lawcheck::support
