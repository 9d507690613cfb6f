#include "blockmem/trace.hpp"

#include "doctest.h"

using namespace blockmem;
using namespace blockmem::trace;

namespace {

Trace ok_parse(std::string_view text) {
  auto r = parse(text);
  if (auto *e = std::get_if<ParseError>(&r))
    FAIL("unexpected parse error: " << e->str());
  return std::get<Trace>(r);
}

ParseError bad_parse(std::string_view text) {
  auto r = parse(text);
  REQUIRE(std::holds_alternative<ParseError>(r));
  return std::get<ParseError>(r);
}

const char *kSample = R"(# comment
alloc -8 8 -> $a
alloc 0 4 -> $b
store int32 $a 0 (int 42)
store int32 $a 4 (ptr $b 2)
store float64 $a -8 (float 1.5)
load int32 $a 0 => (int 42)
load int32 $a 4 => (ptr $b 2)
load int8s $a 1 => undef
load int32 $a 2 => fail
expect-fail load int32 $a 8
assert-valid $a
assert-bounds $b 0 4
free-list $a $b
expect-fail free $a
[emb]
$a -> $x + 8
$b -> $x - 16
)";

} // namespace

TEST_CASE("parse and print round-trip") {
  const Trace t = ok_parse(kSample);
  CHECK(t.stmts.size() == 14);
  CHECK(t.emb.size() == 2);
  CHECK(t.emb[1].delta == -16);
  CHECK(t.lines.front() == 2);
  const std::string text = print(t);
  const Trace again = ok_parse(text);
  CHECK(again == t);
  CHECK(print(again) == text);
}

TEST_CASE("decimal floats normalize to bit patterns") {
  const Trace t = ok_parse("alloc 0 8 -> $a\nstore float64 $a 0 (float 0.5)\n");
  CHECK(t.stmts[1].value.value == Value{Vfloat::of(0.5)});
  CHECK(print(t.stmts[1]) == "store float64 $a 0 (float 0x3fe0000000000000)");
}

TEST_CASE("parse errors carry a position") {
  ParseError e = bad_parse("alloc 0 8 -> $a\nload bogus $a 0\n");
  CHECK(e.line == 2);
  CHECK(e.column == 6);
  CHECK(e.token == "bogus");
  CHECK(e.str().rfind("2:6:", 0) == 0);

  e = bad_parse("free $nope\n");
  CHECK(e.line == 1);
  CHECK(e.token == "$nope");

  e = bad_parse("alloc 0 8 -> $a\nstore int32 $a 0 (ptr 3 0)\n");
  CHECK(e.line == 2);

  e = bad_parse("alloc 0 8\n");
  CHECK(e.line == 1);

  e = bad_parse("alloc 0 8 -> $a\nexpect-fail expect-fail free $a\n");
  CHECK(e.line == 2);

  e = bad_parse("alloc 0 8 -> $a\nload int32 $a 0 => (int 1) extra\n");
  CHECK(e.token == "extra");
}

TEST_CASE("parse never throws on junk") {
  const char *junk[] = {"", "(", "alloc", "alloc x y -> $a", "load int32 $ 0",
                        "[emb]\n$a -> ", "store int32 $a 0 (int", "\x01\x02", "alloc 0 1 -> a"};
  for (const char *s : junk) {
    CAPTURE(s);
    CHECK_NOTHROW((void)parse(s));
  }
  CHECK(std::holds_alternative<Trace>(parse("")));
}

TEST_CASE("exec reports the first failing line") {
  const Trace good = ok_parse(kSample);
  const ExecReport r = exec(good);
  CHECK(r.ok);
  CHECK(r.outcomes.size() == good.stmts.size());

  const Trace bad = ok_parse("alloc 0 8 -> $a\n\nload int32 $a 0 => (int 1)\nfree $a\n");
  const ExecReport r2 = exec(bad);
  CHECK_FALSE(r2.ok);
  CHECK(r2.failed_line == 3);
  CHECK(r2.outcomes.size() == 2); // the failing statement is reported too
}

TEST_CASE("exec honours the config") {
  const Trace t = ok_parse("alloc 0 8 -> $a\nload int32 $a 2 => undef\n");
  CHECK_FALSE(exec(t).ok);
  MemConfig loose;
  loose.check_alignment = false;
  CHECK(exec(t, loose).ok);

  const Trace big = ok_parse("alloc 0 8 -> $a\nexpect-fail alloc 0 8\n");
  MemConfig small;
  small.capacity = CapacityPolicy::bytes(10);
  CHECK(exec(big, small).ok);
  CHECK_FALSE(exec(big).ok);
}

TEST_CASE("relate") {
  const Trace src = ok_parse("alloc 0 8 -> $a\nstore int32 $a 0 undef\n");
  const Trace tgt = ok_parse("alloc 0 8 -> $a\nstore int32 $a 0 (int 3)\n");
  CHECK(relate(src, tgt, Relation::Lessdef, std::nullopt, false).ok);
  CHECK_FALSE(relate(tgt, src, Relation::Lessdef, std::nullopt, false).ok);
  CHECK(relate(src, tgt, Relation::Extends, std::nullopt, true).ok);

  const RelateReport missing = relate(src, tgt, Relation::Inject, std::nullopt, false);
  CHECK(missing.usage_error);

  const std::vector<EmbLine> ident = {{"$a", "$a", 0}};
  CHECK(relate(src, tgt, Relation::Inject, ident, false).ok);
  const std::vector<EmbLine> unknown = {{"$q", "$a", 0}};
  CHECK(relate(src, tgt, Relation::Inject, unknown, false).usage_error);

  const Trace shorter = ok_parse("alloc 0 8 -> $a\n");
  CHECK(relate(src, shorter, Relation::Lessdef, std::nullopt, true).usage_error);
}

TEST_CASE("standalone embedding files") {
  auto r = parse_emb("[emb]\n$a -> $b + 8\n");
  REQUIRE(std::holds_alternative<std::vector<EmbLine>>(r));
  CHECK(std::get<std::vector<EmbLine>>(r).size() == 1);
  auto r2 = parse_emb("$a -> $b * 8\n");
  CHECK(std::holds_alternative<ParseError>(r2));
  CHECK(parse_relation("inject") == Relation::Inject);
  CHECK_FALSE(parse_relation("equal").has_value());
}
