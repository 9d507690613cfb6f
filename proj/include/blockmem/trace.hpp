#pragma once

// Line-oriented memory traces with inline assertions.
//
//   alloc L H -> $x          free $x            free-list $x $y ...
//   store CHUNK $x OFS VALUE
//   load CHUNK $x OFS [=> undef | fail | VALUE]
//   assert-valid $x          assert-bounds $x L H
//   expect-fail <statement>
//   [emb]                    then lines  $x -> $y + DELTA
//
// Pointers name blocks by variable: (ptr $x 4). `#` starts a comment.

#include "blockmem/relations.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blockmem::trace {

/// A value as written in a trace: pointers refer to a variable.
struct TValue {
  Value value;     // block id unused when `var` is set
  std::string var; // non-empty for (ptr $x I)
  bool operator==(const TValue &) const = default;
};

struct Expect {
  enum class Kind { Undef, Fail, Value };
  Kind kind = Kind::Undef;
  TValue value;
  bool operator==(const Expect &) const = default;
};

struct Stmt {
  enum class Kind { Alloc, Free, FreeList, Store, Load, AssertValid, AssertBounds };
  Kind kind = Kind::Alloc;
  bool expect_fail = false;
  std::vector<std::string> vars; // bound var (alloc) or operands
  Chunk chunk = Chunk::Int32;
  Offset a = 0, b = 0; // alloc/assert-bounds: lo hi; store/load: ofs in a
  TValue value;
  std::optional<Expect> expect;
  bool operator==(const Stmt &) const = default;
};

struct EmbLine {
  std::string source, target; // variables of the first and second trace
  Offset delta = 0;
  bool operator==(const EmbLine &) const = default;
};

struct Trace {
  std::vector<Stmt> stmts;
  std::vector<int> lines; // source line of each statement; not part of equality
  std::vector<EmbLine> emb;
  bool operator==(const Trace &o) const { return stmts == o.stmts && emb == o.emb; }
};

struct ParseError {
  int line = 0, column = 0;
  std::string token;
  std::string message;
  std::string str() const;
};

/// Never throws: every input yields a trace or a positioned error.
std::variant<Trace, ParseError> parse(std::string_view text);
/// Parses a standalone embedding file (the `[emb]` header is optional).
std::variant<std::vector<EmbLine>, ParseError> parse_emb(std::string_view text);

/// Canonical text; parse(print(t)) == t.
std::string print(const Trace &t);
std::string print(const Stmt &s);

struct ExecReport {
  bool ok = true;
  std::vector<std::string> outcomes; // one line per executed statement
  std::optional<int> failed_line;
  std::string failure;
  MemState final_state;
  std::map<std::string, BlockId> env;
};

/// Executes one statement. Returns an error message on assertion or
/// operation failure; the state and env are updated otherwise.
std::optional<std::string> step(const Stmt &s, MemState &m, std::map<std::string, BlockId> &env,
                                std::string *outcome = nullptr);

ExecReport exec(const Trace &t, const MemConfig &cfg = {});

/// Summary of a state: one line per issued block.
std::string describe(const MemState &m, const std::map<std::string, BlockId> &env);

enum class Relation { Lessdef, Extends, Inject };
std::optional<Relation> parse_relation(std::string_view name);

struct RelateReport {
  bool ok = false;
  bool usage_error = false; // bad inputs rather than a relation failure
  std::string message;
};

/// Runs both traces and checks the relation on the final states, or after
/// every statement pair when `stepwise`. `emb` maps first-trace variables to
/// second-trace variables; required for inject.
RelateReport relate(const Trace &t1, const Trace &t2, Relation rel,
                    const std::optional<std::vector<EmbLine>> &emb, bool stepwise,
                    const MemConfig &cfg = {});

} // namespace blockmem::trace
