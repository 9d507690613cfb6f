#include "blockmem/trace.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace blockmem::trace {

std::string ParseError::str() const {
  std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!token.empty())
    s += " (at '" + token + "')";
  return s;
}

namespace {

struct Token {
  std::string text;
  int column; // 1-based
};

struct Fail {
  ParseError err;
};

[[noreturn]] void fail_at(int line, const Token &t, std::string msg) {
  throw Fail{{line, t.column, t.text, std::move(msg)}};
}

// Splits one line into tokens. A parenthesised group is a single token.
std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    const char c = line[k];
    if (c == '#')
      break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    if (c == '(') {
      const std::size_t close = line.find(')', k);
      if (close == std::string_view::npos)
        throw Fail{{lineno, static_cast<int>(start) + 1, std::string(line.substr(start)),
                    "unclosed parenthesis"}};
      k = close + 1;
    } else {
      while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k])) &&
             line[k] != '#')
        ++k;
    }
    out.push_back({std::string(line.substr(start, k - start)), static_cast<int>(start) + 1});
  }
  return out;
}

bool is_var(std::string_view s) {
  if (s.size() < 2 || s[0] != '$')
    return false;
  for (char c : s.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      return false;
  return true;
}

std::optional<Offset> to_int(std::string_view s) {
  Offset v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    return std::nullopt;
  return v;
}

class LineParser {
public:
  LineParser(std::vector<Token> toks, int line, std::set<std::string> &bound)
      : toks_(std::move(toks)), line_(line), bound_(bound) {}

  Stmt statement(bool inside_expect_fail = false) {
    const Token &head = next("statement");
    Stmt s;
    if (head.text == "expect-fail") {
      if (inside_expect_fail)
        fail_at(line_, head, "nested expect-fail");
      s = statement(true);
      s.expect_fail = true;
      return s;
    }
    if (head.text == "alloc") {
      s.kind = Stmt::Kind::Alloc;
      s.a = integer("low bound");
      s.b = integer("high bound");
      if (inside_expect_fail && done())
        return s;
      expect_word("->");
      const Token &v = next("variable");
      if (!is_var(v.text))
        fail_at(line_, v, "expected a variable like $x");
      s.vars.push_back(v.text);
      if (!inside_expect_fail)
        bound_.insert(v.text);
    } else if (head.text == "free") {
      s.kind = Stmt::Kind::Free;
      s.vars.push_back(use_var());
    } else if (head.text == "free-list") {
      s.kind = Stmt::Kind::FreeList;
      while (!done())
        s.vars.push_back(use_var());
    } else if (head.text == "store") {
      s.kind = Stmt::Kind::Store;
      s.chunk = chunk();
      s.vars.push_back(use_var());
      s.a = integer("offset");
      s.value = value();
    } else if (head.text == "load") {
      s.kind = Stmt::Kind::Load;
      s.chunk = chunk();
      s.vars.push_back(use_var());
      s.a = integer("offset");
      if (!done()) {
        expect_word("=>");
        const Token &e = peek("expected result");
        Expect ex;
        if (e.text == "undef") {
          ++pos_;
          ex.kind = Expect::Kind::Undef;
        } else if (e.text == "fail") {
          ++pos_;
          ex.kind = Expect::Kind::Fail;
        } else {
          ex.kind = Expect::Kind::Value;
          ex.value = value();
        }
        s.expect = ex;
      }
    } else if (head.text == "assert-valid") {
      s.kind = Stmt::Kind::AssertValid;
      s.vars.push_back(use_var());
    } else if (head.text == "assert-bounds") {
      s.kind = Stmt::Kind::AssertBounds;
      s.vars.push_back(use_var());
      s.a = integer("low bound");
      s.b = integer("high bound");
    } else {
      fail_at(line_, head, "unknown statement");
    }
    if (!done())
      fail_at(line_, toks_[pos_], "unexpected token");
    return s;
  }

  EmbLine emb_line() {
    EmbLine e;
    const Token &src = next("source variable");
    if (!is_var(src.text))
      fail_at(line_, src, "expected a variable like $x");
    e.source = src.text;
    expect_word("->");
    const Token &dst = next("target variable");
    if (!is_var(dst.text))
      fail_at(line_, dst, "expected a variable like $y");
    e.target = dst.text;
    const Token &sign = next("'+' or '-'");
    if (sign.text != "+" && sign.text != "-")
      fail_at(line_, sign, "expected '+' or '-'");
    e.delta = integer("delta");
    if (sign.text == "-")
      e.delta = -e.delta;
    if (!done())
      fail_at(line_, toks_[pos_], "unexpected token");
    return e;
  }

private:
  bool done() const { return pos_ >= toks_.size(); }

  const Token &peek(const char *what) {
    if (done())
      throw Fail{{line_, end_column(), "", std::string("expected ") + what}};
    return toks_[pos_];
  }
  const Token &next(const char *what) {
    const Token &t = peek(what);
    ++pos_;
    return t;
  }
  int end_column() const {
    if (toks_.empty())
      return 1;
    return toks_.back().column + static_cast<int>(toks_.back().text.size());
  }

  void expect_word(const char *w) {
    const Token &t = next(w);
    if (t.text != w)
      fail_at(line_, t, std::string("expected '") + w + "'");
  }
  Offset integer(const char *what) {
    const Token &t = next(what);
    auto v = to_int(t.text);
    if (!v)
      fail_at(line_, t, std::string("expected an integer ") + what);
    return *v;
  }
  Chunk chunk() {
    const Token &t = next("chunk");
    auto c = parse_chunk(t.text);
    if (!c)
      fail_at(line_, t, "unknown chunk");
    return *c;
  }
  std::string use_var() {
    const Token &t = next("variable");
    if (!is_var(t.text))
      fail_at(line_, t, "expected a variable like $x");
    if (!bound_.count(t.text))
      fail_at(line_, t, "variable used before it is bound");
    return t.text;
  }
  TValue value() {
    const Token &t = next("value");
    std::string_view body = t.text;
    if (body.starts_with("(ptr")) {
      std::istringstream in(std::string(body.substr(4, body.size() - 5)));
      std::string var, ofs, extra;
      in >> var >> ofs >> extra;
      auto i = to_int(ofs);
      if (!is_var(var) || !i || !extra.empty())
        fail_at(line_, t, "expected (ptr $x OFS)");
      if (!bound_.count(var))
        fail_at(line_, t, "variable used before it is bound");
      return {Vptr{BlockId{0}, *i}, var};
    }
    if (auto v = parse_value(body))
      return {*v, {}};
    // Decimal floats are accepted for convenience and print back as bits.
    if (body.starts_with("(float ") && body.size() > 8) {
      const std::string num(body.substr(7, body.size() - 8));
      char *end = nullptr;
      const double d = std::strtod(num.c_str(), &end);
      if (end && *end == '\0' && !num.empty())
        return {Vfloat::of(d), {}};
    }
    fail_at(line_, t, "bad value");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  std::set<std::string> &bound_;
};

template <class F> void for_each_line(std::string_view text, F &&f) {
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    f(++lineno, line);
    if (end == text.size())
      break;
    start = end + 1;
  }
}

bool is_emb_header(const std::vector<Token> &toks) {
  return toks.size() == 1 && toks[0].text == "[emb]";
}

std::string show(const TValue &v) {
  if (!v.var.empty())
    return "(ptr " + v.var + " " + std::to_string(std::get<Vptr>(v.value).ofs) + ")";
  return to_string(v.value);
}

} // namespace

std::variant<Trace, ParseError> parse(std::string_view text) {
  Trace t;
  std::set<std::string> bound;
  bool in_emb = false;
  try {
    for_each_line(text, [&](int lineno, std::string_view line) {
      auto toks = tokenize(line, lineno);
      if (toks.empty())
        return;
      if (is_emb_header(toks)) {
        if (in_emb)
          fail_at(lineno, toks[0], "duplicate [emb] section");
        in_emb = true;
        return;
      }
      LineParser p(std::move(toks), lineno, bound);
      if (in_emb) {
        t.emb.push_back(p.emb_line());
      } else {
        t.stmts.push_back(p.statement());
        t.lines.push_back(lineno);
      }
    });
  } catch (const Fail &f) {
    return f.err;
  }
  return t;
}

std::variant<std::vector<EmbLine>, ParseError> parse_emb(std::string_view text) {
  std::vector<EmbLine> out;
  std::set<std::string> bound;
  bool seen_header = false;
  try {
    for_each_line(text, [&](int lineno, std::string_view line) {
      auto toks = tokenize(line, lineno);
      if (toks.empty())
        return;
      if (is_emb_header(toks)) {
        if (seen_header || !out.empty())
          fail_at(lineno, toks[0], "unexpected [emb] header");
        seen_header = true;
        return;
      }
      out.push_back(LineParser(std::move(toks), lineno, bound).emb_line());
    });
  } catch (const Fail &f) {
    return f.err;
  }
  return out;
}

std::string print(const Stmt &s) {
  std::string out = s.expect_fail ? "expect-fail " : "";
  const std::string chunk(chunk_name(s.chunk));
  switch (s.kind) {
  case Stmt::Kind::Alloc:
    out += "alloc " + std::to_string(s.a) + " " + std::to_string(s.b);
    if (!s.vars.empty())
      out += " -> " + s.vars[0];
    break;
  case Stmt::Kind::Free:
    out += "free " + s.vars.at(0);
    break;
  case Stmt::Kind::FreeList:
    out += "free-list";
    for (const auto &v : s.vars)
      out += " " + v;
    break;
  case Stmt::Kind::Store:
    out += "store " + chunk + " " + s.vars.at(0) + " " + std::to_string(s.a) + " " + show(s.value);
    break;
  case Stmt::Kind::Load:
    out += "load " + chunk + " " + s.vars.at(0) + " " + std::to_string(s.a);
    if (s.expect) {
      out += " => ";
      switch (s.expect->kind) {
      case Expect::Kind::Undef:
        out += "undef";
        break;
      case Expect::Kind::Fail:
        out += "fail";
        break;
      case Expect::Kind::Value:
        out += show(s.expect->value);
        break;
      }
    }
    break;
  case Stmt::Kind::AssertValid:
    out += "assert-valid " + s.vars.at(0);
    break;
  case Stmt::Kind::AssertBounds:
    out += "assert-bounds " + s.vars.at(0) + " " + std::to_string(s.a) + " " + std::to_string(s.b);
    break;
  }
  return out;
}

std::string print(const Trace &t) {
  std::string out;
  for (const Stmt &s : t.stmts)
    out += print(s) + "\n";
  if (!t.emb.empty()) {
    out += "[emb]\n";
    for (const EmbLine &e : t.emb)
      out += e.source + " -> " + e.target + (e.delta < 0 ? " - " : " + ") +
             std::to_string(e.delta < 0 ? -e.delta : e.delta) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Execution

namespace {

std::optional<BlockId> lookup(const std::map<std::string, BlockId> &env, const std::string &v) {
  auto it = env.find(v);
  if (it == env.end())
    return std::nullopt;
  return it->second;
}

} // namespace

std::optional<std::string> step(const Stmt &s, MemState &m, std::map<std::string, BlockId> &env,
                                std::string *outcome) {
  auto note = [&](std::string text) {
    if (outcome)
      *outcome = std::move(text);
  };
  auto var = [&](std::size_t k) { return lookup(env, s.vars.at(k)); };
  auto resolve = [&](const TValue &v) -> std::optional<Value> {
    if (v.var.empty())
      return v.value;
    auto b = lookup(env, v.var);
    if (!b)
      return std::nullopt;
    return Value{Vptr{*b, std::get<Vptr>(v.value).ofs}};
  };
  for (std::size_t k = 0; k < s.vars.size(); ++k)
    if (!(s.kind == Stmt::Kind::Alloc) && !var(k))
      return "unbound variable " + s.vars[k];

  // Runs an operation that yields a new state; handles expect-fail.
  auto mutate = [&](std::optional<MemState> r, const char *what) -> std::optional<std::string> {
    if (s.expect_fail) {
      if (r)
        return std::string(what) + " succeeded but was expected to fail";
      note("failed as expected");
      return std::nullopt;
    }
    if (!r)
      return std::string(what) + " failed";
    m = std::move(*r);
    note("ok");
    return std::nullopt;
  };

  switch (s.kind) {
  case Stmt::Kind::Alloc: {
    auto a = alloc(m, s.a, s.b);
    if (s.expect_fail) {
      if (a)
        return std::string("alloc succeeded but was expected to fail");
      note("failed as expected");
      return std::nullopt;
    }
    if (!a)
      return std::string("alloc failed");
    env[s.vars.at(0)] = a->block;
    m = std::move(a->mem);
    note(s.vars.at(0) + " = block " + to_string(a->block));
    return std::nullopt;
  }
  case Stmt::Kind::Free:
    return mutate(free(m, *var(0)), "free");
  case Stmt::Kind::FreeList: {
    std::vector<BlockId> bs;
    for (std::size_t k = 0; k < s.vars.size(); ++k)
      bs.push_back(*var(k));
    return mutate(free_list(m, bs), "free-list");
  }
  case Stmt::Kind::Store: {
    auto v = resolve(s.value);
    if (!v)
      return "unbound variable " + s.value.var;
    return mutate(store(s.chunk, m, *var(0), s.a, *v), "store");
  }
  case Stmt::Kind::Load: {
    auto r = load(s.chunk, m, *var(0), s.a);
    if (s.expect_fail) {
      if (r)
        return "load returned " + to_string(*r) + " but was expected to fail";
      note("failed as expected");
      return std::nullopt;
    }
    if (!s.expect) {
      if (!r)
        return std::string("load failed");
      note("-> " + to_string(*r));
      return std::nullopt;
    }
    switch (s.expect->kind) {
    case Expect::Kind::Fail:
      if (r)
        return "load returned " + to_string(*r) + ", expected fail";
      note("failed as expected");
      return std::nullopt;
    case Expect::Kind::Undef:
      if (!r)
        return std::string("load failed, expected undef");
      if (!is_undef(*r))
        return "load returned " + to_string(*r) + ", expected undef";
      break;
    case Expect::Kind::Value: {
      auto want = resolve(s.expect->value);
      if (!want)
        return "unbound variable " + s.expect->value.var;
      if (!r)
        return "load failed, expected " + to_string(*want);
      if (!(*r == *want))
        return "load returned " + to_string(*r) + ", expected " + to_string(*want);
      break;
    }
    }
    note("-> " + to_string(*r));
    return std::nullopt;
  }
  case Stmt::Kind::AssertValid: {
    const bool holds = valid_block(m, *var(0));
    if (holds == s.expect_fail)
      return s.vars[0] + (holds ? " is valid" : " is not valid");
    note(holds ? "valid" : "not valid, as expected");
    return std::nullopt;
  }
  case Stmt::Kind::AssertBounds: {
    const Bounds bd = bounds(m, *var(0));
    const bool holds = bd == Bounds{s.a, s.b};
    if (holds == s.expect_fail)
      return s.vars[0] + " has bounds " + std::to_string(bd.low) + " " + std::to_string(bd.high);
    note("bounds " + std::to_string(bd.low) + " " + std::to_string(bd.high));
    return std::nullopt;
  }
  }
  return std::nullopt;
}

ExecReport exec(const Trace &t, const MemConfig &cfg) {
  ExecReport r;
  r.final_state = empty(cfg);
  for (std::size_t k = 0; k < t.stmts.size(); ++k) {
    const int line = k < t.lines.size() ? t.lines[k] : static_cast<int>(k) + 1;
    std::string outcome;
    if (auto err = step(t.stmts[k], r.final_state, r.env, &outcome)) {
      r.ok = false;
      r.failed_line = line;
      r.failure = *err;
      r.outcomes.push_back("line " + std::to_string(line) + ": " + print(t.stmts[k]) +
                           "  FAILED: " + *err);
      break;
    }
    r.outcomes.push_back("line " + std::to_string(line) + ": " + print(t.stmts[k]) + "  " +
                         outcome);
  }
  return r;
}

std::string describe(const MemState &m, const std::map<std::string, BlockId> &env) {
  std::map<BlockId, std::string> names;
  for (const auto &[v, b] : env)
    names[b] += (names[b].empty() ? "" : ",") + v;
  std::string out;
  for (BlockId b{1}; b < m.nextblock(); b = b.next()) {
    const Bounds bd = bounds(m, b);
    out += "block " + to_string(b);
    if (names.count(b))
      out += " (" + names[b] + ")";
    out += " [" + std::to_string(bd.low) + ", " + std::to_string(bd.high) + ") " +
           (valid_block(m, b) ? "valid" : "freed");
    for (const auto &[ofs, d] : m.contents(b).cells())
      out += " " + std::to_string(ofs) + ":" + std::string(chunk_name(d.chunk)) + " " +
             to_string(d.value);
    out += "\n";
  }
  return out;
}

std::optional<Relation> parse_relation(std::string_view name) {
  if (name == "lessdef")
    return Relation::Lessdef;
  if (name == "extends")
    return Relation::Extends;
  if (name == "inject")
    return Relation::Inject;
  return std::nullopt;
}

namespace {

// Builds the embedding from lines whose variables are bound on both sides.
// With `strict`, an unbound variable is an error.
std::variant<Embedding, std::string> build_emb(const std::vector<EmbLine> &lines,
                                               const std::map<std::string, BlockId> &env1,
                                               const std::map<std::string, BlockId> &env2,
                                               bool strict) {
  Embedding e;
  for (const EmbLine &l : lines) {
    auto s = lookup(env1, l.source);
    auto t = lookup(env2, l.target);
    if (!s || !t) {
      if (strict)
        return "embedding names unbound variable " + (s ? l.target : l.source);
      continue;
    }
    e = e.with(*s, Mapping{*t, l.delta});
  }
  return e;
}

bool holds(Relation rel, const Embedding &e, const MemState &m1, const MemState &m2) {
  switch (rel) {
  case Relation::Lessdef:
    return mem_lessdef(m1, m2);
  case Relation::Extends:
    return mem_extends(m1, m2);
  case Relation::Inject:
    return mem_inject(e, m1, m2);
  }
  return false;
}

const char *relation_name(Relation rel) {
  switch (rel) {
  case Relation::Lessdef:
    return "lessdef";
  case Relation::Extends:
    return "extends";
  case Relation::Inject:
    return "inject";
  }
  return "?";
}

} // namespace

RelateReport relate(const Trace &t1, const Trace &t2, Relation rel,
                    const std::optional<std::vector<EmbLine>> &emb, bool stepwise,
                    const MemConfig &cfg) {
  RelateReport r;
  if (rel == Relation::Inject && !emb) {
    r.usage_error = true;
    r.message = "inject needs an embedding (--emb FILE or an [emb] section)";
    return r;
  }
  const std::vector<EmbLine> lines = emb.value_or(std::vector<EmbLine>{});

  if (!stepwise) {
    ExecReport e1 = exec(t1, cfg), e2 = exec(t2, cfg);
    for (const auto *e : {&e1, &e2})
      if (!e->ok) {
        r.message = std::string("trace ") + (e == &e1 ? "1" : "2") + " failed at line " +
                    std::to_string(*e->failed_line) + ": " + e->failure;
        return r;
      }
    auto built = build_emb(lines, e1.env, e2.env, true);
    if (auto *err = std::get_if<std::string>(&built)) {
      r.usage_error = true;
      r.message = *err;
      return r;
    }
    r.ok = holds(rel, std::get<Embedding>(built), e1.final_state, e2.final_state);
    r.message = std::string(relation_name(rel)) + (r.ok ? " holds" : " does not hold") +
                " on the final states";
    return r;
  }

  if (t1.stmts.size() != t2.stmts.size()) {
    r.usage_error = true;
    r.message = "stepwise mode needs traces of equal length (" + std::to_string(t1.stmts.size()) +
                " vs " + std::to_string(t2.stmts.size()) + " statements)";
    return r;
  }
  MemState m1 = empty(cfg), m2 = empty(cfg);
  std::map<std::string, BlockId> env1, env2;
  auto check = [&]() {
    const Embedding e = std::get<Embedding>(build_emb(lines, env1, env2, false));
    return holds(rel, e, m1, m2);
  };
  if (!check()) {
    r.message = std::string(relation_name(rel)) + " does not hold on the initial states";
    return r;
  }
  for (std::size_t k = 0; k < t1.stmts.size(); ++k) {
    for (int side = 0; side < 2; ++side) {
      const Trace &t = side == 0 ? t1 : t2;
      auto err = step(t.stmts[k], side == 0 ? m1 : m2, side == 0 ? env1 : env2);
      if (err) {
        r.message = "trace " + std::to_string(side + 1) + " failed at line " +
                    std::to_string(k < t.lines.size() ? t.lines[k] : static_cast<int>(k) + 1) +
                    ": " + *err;
        return r;
      }
    }
    if (!check()) {
      r.message = std::string(relation_name(rel)) + " fails after statement pair " +
                  std::to_string(k + 1);
      return r;
    }
  }
  r.ok = true;
  r.message = std::string(relation_name(rel)) + " holds after every statement pair";
  return r;
}

} // namespace blockmem::trace
