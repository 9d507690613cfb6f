// Laws over content maps and single memory states.

#include "law_support.hpp"

#include <algorithm>

namespace blockmem::lawcheck::support {

namespace {

using namespace param;
constexpr std::string_view kConcrete = "Concrete_Mem";
constexpr std::string_view kGen = "Gen_Mem_Facts";

constexpr std::string_view kGood = "S5-S8";
constexpr std::string_view kValid = "S9-S13";
constexpr std::string_view kBounds = "S14-S17";
constexpr std::string_view kAccess = "S18/D19-D22";
constexpr std::string_view kFresh = "P30-P34";
constexpr std::string_view kDet = "P35";

bool all_empty(const BlockContents &f, Offset ofs, Offset n) {
  for (Offset k = ofs; k < ofs + n; ++k)
    if (f.at(k))
      return false;
  return true;
}

BlockContents stored(const Instance &x) { return store_contents(x.f, x.t, x.i, x.v); }

// Some integer k with k * a == i. Candidates around the truncated quotient.
bool has_multiple(Offset a, Offset i) {
  for (Offset k = i / a - 1; k <= i / a + 1; ++k)
    if (k * a == i)
      return true;
  return false;
}

// Definitional reading of valid access, written out field by field.
bool access_by_definition(const MemState &m, Chunk t, BlockId b, Offset i) {
  const bool valid = b.id >= 1 && b < m.nextblock() && !m.freed().contains(b);
  if (!valid)
    return false;
  auto it = m.bounds_map().find(b);
  const Offset lo = it == m.bounds_map().end() ? 0 : it->second.low;
  const Offset hi = it == m.bounds_map().end() ? 0 : it->second.high;
  if (i < lo || i + size_chunk(t) > hi)
    return false;
  if (!m.config().check_alignment)
    return true;
  return has_multiple(oracle::align_of(t), i);
}

std::optional<Allocation> alloc_in(const Instance &x) { return alloc(x.m1(), x.lo, x.hi); }

std::optional<MemState> store_in(const Instance &x) {
  return store(x.t, x.m1(), x.b, x.i, x.v);
}

} // namespace

std::vector<Law> concrete_laws() {
  return {
      // ---- content maps ------------------------------------------------
      {"update_s", kConcrete, "", Shape::Cells, C | I,
       [](const Instance &x) { return expect_eq(update(x.i, x.c, x.f).at(x.i), x.c, "read back"); }},
      {"update_o", kConcrete, "", Shape::Cells, C | I | I2,
       [](const Instance &x) {
         if (x.i == x.i2)
           return vacuous();
         return expect_eq(update(x.i, x.c, x.f).at(x.i2), x.f.at(x.i2), "other offset");
       }},
      {"check_cont_charact", kConcrete, "", Shape::Cells, I | N,
       [](const Instance &x) {
         return expect(check_cont(x.f, x.i, x.n) == all_empty(x.f, x.i, x.n),
                       "check_cont disagrees with the all-empty reading");
       }},
      {"check_cont_exten", kConcrete, "", Shape::Cells, G | I | N,
       [](const Instance &x) {
         for (Offset k = x.i; k < x.i + x.n; ++k)
           if (x.f.at(k) != x.g.at(k))
             return vacuous();
         return expect(check_cont(x.f, x.i, x.n) == check_cont(x.g, x.i, x.n),
                       "maps agree on the range but check_cont differs");
       }},
      {"load_contents_exten", kConcrete, "", Shape::Cells, G | T | I,
       [](const Instance &x) {
         for (Offset k = x.i; k < x.i + size_chunk(x.t); ++k)
           if (x.f.at(k) != x.g.at(k))
             return vacuous();
         return expect_eq(load_contents(x.t, x.f, x.i), load_contents(x.t, x.g, x.i),
                          "maps agree on the footprint but loads differ");
       }},
      {"load_contents_1", kConcrete, kGood, Shape::Cells, T | I,
       [](const Instance &x) {
         auto d = x.f.at(x.i);
         if (!d || !compat(d->chunk, x.t) || !all_empty(x.f, x.i + 1, size_chunk(x.t) - 1))
           return vacuous();
         return expect_eq(load_contents(x.t, x.f, x.i), oracle::convert(d->value, x.t),
                          "intact compatible datum");
       }},
      {"load_contents_2", kConcrete, kGood, Shape::Cells, T | I,
       [](const Instance &x) {
         if (x.f.at(x.i))
           return vacuous();
         return expect_eq(load_contents(x.t, x.f, x.i), Value{Vundef{}}, "empty cell");
       }},
      {"load_contents_3", kConcrete, kGood, Shape::Cells, T | I,
       [](const Instance &x) {
         auto d = x.f.at(x.i);
         if (!d || compat(d->chunk, x.t))
           return vacuous();
         return expect_eq(load_contents(x.t, x.f, x.i), Value{Vundef{}}, "incompatible datum");
       }},
      {"load_contents_4", kConcrete, kGood, Shape::Cells, T | I,
       [](const Instance &x) {
         auto d = x.f.at(x.i);
         if (!d || !compat(d->chunk, x.t) || all_empty(x.f, x.i + 1, size_chunk(x.t) - 1))
           return vacuous();
         return expect_eq(load_contents(x.t, x.f, x.i), Value{Vundef{}}, "broken continuation");
       }},
      {"set_cont", kConcrete, "", Shape::Cells, I | N,
       [](const Instance &x) {
         // The iterative set_cont against the textbook recursion.
         const BlockContents got = set_cont(x.f, x.i, x.n);
         const oracle::AssocCells want =
             oracle::set_cont(oracle::from_contents(x.f), x.i, x.n);
         Offset lo = x.i - 2, hi = x.i + x.n + 2;
         for (const auto &[ofs, d] : x.f.cells()) {
           lo = std::min(lo, ofs);
           hi = std::max(hi, ofs + 1);
         }
         for (Offset k = lo; k < hi; ++k)
           if (got.at(k) != oracle::lookup(want, k))
             return Verdict::fail("differs from the recursion at offset " + std::to_string(k));
         return pass();
       }},
      {"set_cont_outside", kConcrete, "", Shape::Cells, I | I2 | N,
       [](const Instance &x) {
         if (x.i2 >= x.i && x.i2 < x.i + x.n)
           return vacuous();
         return expect_eq(set_cont(x.f, x.i, x.n).at(x.i2), x.f.at(x.i2), "outside the range");
       }},
      {"set_cont_inside", kConcrete, "", Shape::Cells, I | I2 | N,
       [](const Instance &x) {
         if (x.i2 < x.i || x.i2 >= x.i + x.n)
           return vacuous();
         return expect_eq(set_cont(x.f, x.i, x.n).at(x.i2), Content{}, "inside the range");
       }},
      {"store_contents_at", kConcrete, "", Shape::Cells, T | I | V,
       [](const Instance &x) {
         return expect_eq(stored(x).at(x.i), Content{Datum{x.t, x.v}}, "anchor cell");
       }},
      {"store_contents_cont", kConcrete, "", Shape::Cells, T | I | I2 | V,
       [](const Instance &x) {
         if (x.i2 <= x.i || x.i2 >= x.i + size_chunk(x.t))
           return vacuous();
         return expect_eq(stored(x).at(x.i2), Content{}, "continuation cell");
       }},
      {"store_contents_outside", kConcrete, "", Shape::Cells, T | I | I2 | V,
       [](const Instance &x) {
         if (x.i2 >= x.i && x.i2 < x.i + size_chunk(x.t))
           return vacuous();
         return expect_eq(stored(x).at(x.i2), x.f.at(x.i2), "cell outside the footprint");
       }},
      {"load_store_contents_same", kConcrete, kGood, Shape::Cells, T | T2 | I | V,
       [](const Instance &x) {
         if (!compat(x.t, x.t2))
           return vacuous();
         return expect_eq(load_contents(x.t2, stored(x), x.i), oracle::convert(x.v, x.t2),
                          "reload at the same offset");
       }},
      {"load_store_contents_disjoint", kConcrete, kGood, Shape::Cells, T | T2 | I | I2 | V,
       [](const Instance &x) {
         if (overlap(x.i, x.t, x.i2, x.t2))
           return vacuous();
         return expect_eq(load_contents(x.t2, stored(x), x.i2), load_contents(x.t2, x.f, x.i2),
                          "disjoint reload");
       }},
      {"load_store_contents_mismatch", kConcrete, kGood, Shape::Cells, T | T2 | I | V,
       [](const Instance &x) {
         if (compat(x.t, x.t2))
           return vacuous();
         return expect_eq(load_contents(x.t2, stored(x), x.i), Value{Vundef{}},
                          "incompatible reload");
       }},
      {"load_store_contents_overlap", kConcrete, kGood, Shape::Cells, T | T2 | I | I2 | V,
       [](const Instance &x) {
         if (x.i == x.i2 || !overlap(x.i, x.t, x.i2, x.t2))
           return vacuous();
         return expect_eq(load_contents(x.t2, stored(x), x.i2), Value{Vundef{}},
                          "overlapping reload");
       }},

      // ---- decision procedures ------------------------------------------
      {"valid_block_dec", kConcrete, kValid, Shape::Single, B,
       [](const Instance &x) {
         const MemState &m = x.m1();
         const bool def = x.b.id >= 1 && x.b.id < m.nextblock().id && !m.freed().contains(x.b);
         return expect(valid_block(m, x.b) == def, "valid_block disagrees with its definition");
       }},
      {"aligned_dec", kConcrete, kAccess, Shape::Single, T | I,
       [](const Instance &x) {
         return expect(aligned(x.t, x.i) == has_multiple(oracle::align_of(x.t), x.i),
                       "aligned disagrees with divisibility");
       }},
      {"valid_pointer_dec", kConcrete, kAccess, Shape::Single, Cfg | T | B | I,
       [](const Instance &x) {
         return expect(valid_access(x.m1(), x.t, x.b, x.i) ==
                           access_by_definition(x.m1(), x.t, x.b, x.i),
                       "valid_access disagrees with its definition");
       }},

      // ---- bounds --------------------------------------------------------
      {"alloc_result_bounds_", kConcrete, kBounds, Shape::Single, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a)
           return vacuous();
         return expect(bounds(a->mem, a->block) == Bounds{x.lo, x.hi}, "new block bounds");
       }},
      {"alloc_bounds_inv_", kConcrete, kBounds, Shape::Single, Cfg | Range | B,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a || a->block == x.b)
           return vacuous();
         return expect(bounds(a->mem, x.b) == bounds(x.m1(), x.b), "other block bounds moved");
       }},
      {"store_bounds_inv_", kConcrete, kBounds, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (!(bounds(*m2, b) == bounds(x.m1(), b)))
             return Verdict::fail("bounds of block " + to_string(b) + " moved");
         return pass();
       }},
      {"free_bounds_inv_", kConcrete, kBounds, Shape::Single, B,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (b != x.b && !(bounds(*m2, b) == bounds(x.m1(), b)))
             return Verdict::fail("bounds of block " + to_string(b) + " moved");
         return pass();
       }},
      {"free_same_bounds_", kConcrete, kBounds, Shape::Single, B,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2)
           return vacuous();
         return expect(bounds(*m2, x.b) == bounds(x.m1(), x.b), "freed block lost its bounds");
       }},

      // ---- freshness -----------------------------------------------------
      {"fresh_valid_block_exclusive_", kConcrete, kFresh, Shape::Single, B,
       [](const Instance &x) {
         return expect(!(fresh_block(x.m1(), x.b) && valid_block(x.m1(), x.b)),
                       "block both fresh and valid");
       }},
      {"alloc_fresh_block_", kConcrete, kFresh, Shape::Single, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a)
           return vacuous();
         return expect(fresh_block(x.m1(), a->block), "alloc returned a block that was not fresh");
       }},
      {"alloc_fresh_block_2_", kConcrete, kFresh, Shape::Single, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a)
           return vacuous();
         if (fresh_block(a->mem, a->block))
           return Verdict::fail("new block still fresh after alloc");
         for (BlockId b : known_blocks(a->mem))
           if (b != a->block && fresh_block(a->mem, b) != fresh_block(x.m1(), b))
             return Verdict::fail("freshness of block " + to_string(b) + " changed");
         return pass();
       }},
      {"store_fresh_block_", kConcrete, kFresh, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (fresh_block(*m2, b) != fresh_block(x.m1(), b))
             return Verdict::fail("freshness of block " + to_string(b) + " changed");
         return pass();
       }},
      {"free_fresh_block_", kConcrete, kFresh, Shape::Single, B,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (fresh_block(*m2, b) != fresh_block(x.m1(), b))
             return Verdict::fail("freshness of block " + to_string(b) + " changed");
         return pass();
       }},

      // ---- store inversion ------------------------------------------------
      {"store_inversion", kConcrete, kGood, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         if (!valid_access(x.m1(), x.t, x.b, x.i))
           return Verdict::fail("store succeeded without a valid access");
         MemState::ContentsMap contents = x.m1().contents_map();
         contents.insert_or_assign(x.b, store_contents(x.m1().contents(x.b), x.t, x.i, x.v));
         MemState want = MemState::make(x.m1().nextblock(), x.m1().bounds_map(), x.m1().freed(),
                                        std::move(contents));
         return expect(*m2 == want, "store changed more than the block contents");
       }},

      // ---- validity --------------------------------------------------------
      {"alloc_valid_block", kConcrete, kValid, Shape::Single, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a)
           return vacuous();
         for (BlockId b : known_blocks(a->mem))
           if (valid_block(a->mem, b) != (b == a->block || valid_block(x.m1(), b)))
             return Verdict::fail("validity of block " + to_string(b) + " wrong after alloc");
         return pass();
       }},
      {"alloc_not_valid_block_", kConcrete, kValid, Shape::Single, Cfg | Range,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a)
           return vacuous();
         return expect(!valid_block(x.m1(), a->block), "alloc returned an already valid block");
       }},
      {"load_valid_block_", kConcrete, kValid, Shape::Single, T | B | I,
       [](const Instance &x) {
         if (!load(x.t, x.m1(), x.b, x.i))
           return vacuous();
         return expect(valid_block(x.m1(), x.b), "load succeeded on an invalid block");
       }},
      {"store_valid_block_", kConcrete, kValid, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (valid_block(x.m1(), b) && !valid_block(*m2, b))
             return Verdict::fail("store invalidated block " + to_string(b));
         return pass();
       }},
      {"store_valid_block_inv_", kConcrete, kValid, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (valid_block(*m2, b) && !valid_block(x.m1(), b))
             return Verdict::fail("store validated block " + to_string(b));
         return pass();
       }},
      {"free_valid_block_", kConcrete, kValid, Shape::Single, B,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2)
           return vacuous();
         for (BlockId b : known_blocks(x.m1()))
           if (b != x.b && valid_block(*m2, b) != valid_block(x.m1(), b))
             return Verdict::fail("free changed validity of block " + to_string(b));
         return pass();
       }},
      {"free_not_valid_block_", kConcrete, kValid, Shape::Single, B,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2)
           return vacuous();
         return expect(!valid_block(*m2, x.b), "freed block still valid");
       }},
      {"valid_block_free_", kConcrete, kValid, Shape::Single, B,
       [](const Instance &x) {
         return expect(free(x.m1(), x.b).has_value() == valid_block(x.m1(), x.b),
                       "free succeeds exactly on valid blocks");
       }},

      // ---- valid access ----------------------------------------------------
      {"store_valid_pointer_inv_", kConcrete, kAccess, Shape::Single, T | B | I | V | T2 | B2 | I2,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         return expect(valid_access(*m2, x.t2, x.b2, x.i2) ==
                           valid_access(x.m1(), x.t2, x.b2, x.i2),
                       "store changed a valid access");
       }},
      {"alloc_valid_pointer_inv_", kConcrete, kAccess, Shape::Single, Cfg | Range | T2 | B2 | I2,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a || a->block == x.b2)
           return vacuous();
         return expect(valid_access(a->mem, x.t2, x.b2, x.i2) ==
                           valid_access(x.m1(), x.t2, x.b2, x.i2),
                       "alloc changed an access to another block");
       }},
      {"free_valid_pointer_inv_", kConcrete, kAccess, Shape::Single, B | T2 | B2 | I2,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2 || x.b == x.b2)
           return vacuous();
         return expect(valid_access(*m2, x.t2, x.b2, x.i2) ==
                           valid_access(x.m1(), x.t2, x.b2, x.i2),
                       "free changed an access to another block");
       }},
      {"valid_pointer_compat_", kConcrete, kAccess, Shape::Single, T | T2 | B | I,
       [](const Instance &x) {
         if (!compat(x.t, x.t2) || !valid_access(x.m1(), x.t, x.b, x.i))
           return vacuous();
         return expect(valid_access(x.m1(), x.t2, x.b, x.i), "compatible chunk not accessible");
       }},
      {"valid_pointer_store_", kConcrete, kAccess, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         if (!valid_access(x.m1(), x.t, x.b, x.i))
           return vacuous();
         return expect(store_in(x).has_value(), "store failed on a valid access");
       }},
      {"store_valid_pointer_", kConcrete, kAccess, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         if (!store_in(x))
           return vacuous();
         return expect(valid_access(x.m1(), x.t, x.b, x.i), "store succeeded on an invalid access");
       }},
      {"valid_pointer_load_", kConcrete, kAccess, Shape::Single, T | B | I,
       [](const Instance &x) {
         if (!valid_access(x.m1(), x.t, x.b, x.i))
           return vacuous();
         return expect(load(x.t, x.m1(), x.b, x.i).has_value(), "load failed on a valid access");
       }},
      {"load_valid_pointer_", kConcrete, kAccess, Shape::Single, T | B | I,
       [](const Instance &x) {
         if (!load(x.t, x.m1(), x.b, x.i))
           return vacuous();
         return expect(valid_access(x.m1(), x.t, x.b, x.i), "load succeeded on an invalid access");
       }},

      // ---- good variables --------------------------------------------------
      {"load_alloc_other_", kConcrete, kGood, Shape::Single, Cfg | Range | T | B | I,
       [](const Instance &x) {
         auto a = alloc_in(x);
         auto before = load(x.t, x.m1(), x.b, x.i);
         if (!a || !before)
           return vacuous();
         return expect_eq(load(x.t, a->mem, x.b, x.i), before, "load in another block");
       }},
      {"load_alloc_same_", kConcrete, kGood, Shape::Single, Cfg | Range | T | I,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a || !valid_access(a->mem, x.t, a->block, x.i))
           return vacuous();
         return expect_eq(load(x.t, a->mem, a->block, x.i), std::optional<Value>{Vundef{}},
                          "load in the new block");
       }},
      {"load_free_other_", kConcrete, kGood, Shape::Single, B | T2 | B2 | I2,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         auto before = load(x.t2, x.m1(), x.b2, x.i2);
         if (!m2 || x.b == x.b2 || !before)
           return vacuous();
         return expect_eq(load(x.t2, *m2, x.b2, x.i2), before, "load in another block");
       }},
      {"load_store_same_", kConcrete, kGood, Shape::Single, T | T2 | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2 || !compat(x.t, x.t2))
           return vacuous();
         return expect_eq(load(x.t2, *m2, x.b, x.i),
                          std::optional<Value>{oracle::convert(x.v, x.t2)}, "reload");
       }},
      {"load_store_disjoint_", kConcrete, kGood, Shape::Single, T | T2 | B | B2 | I | I2 | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2 || (x.b == x.b2 && overlap(x.i, x.t, x.i2, x.t2)))
           return vacuous();
         return expect_eq(load(x.t2, *m2, x.b2, x.i2), load(x.t2, x.m1(), x.b2, x.i2),
                          "disjoint reload");
       }},
      {"load_store_mismatch_", kConcrete, kGood, Shape::Single, T | T2 | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2 || compat(x.t, x.t2) || !valid_access(*m2, x.t2, x.b, x.i))
           return vacuous();
         return expect_eq(load(x.t2, *m2, x.b, x.i), std::optional<Value>{Vundef{}},
                          "incompatible reload");
       }},
      {"load_store_overlap_", kConcrete, kGood, Shape::Single, T | T2 | B | I | I2 | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2 || x.i == x.i2 || !overlap(x.i, x.t, x.i2, x.t2) ||
             !valid_access(*m2, x.t2, x.b, x.i2))
           return vacuous();
         return expect_eq(load(x.t2, *m2, x.b, x.i2), std::optional<Value>{Vundef{}},
                          "overlapping reload");
       }},

      // ---- domains ---------------------------------------------------------
      {"same_domain_same_nextblock", kConcrete, kDet, Shape::SameDomain, 0,
       [](const Instance &x) {
         if (!same_domain(x.m1(), x.m2()))
           return vacuous();
         return expect(x.m1().nextblock() == x.m2().nextblock(), "nextblock differs");
       }},
      {"alloc_same_domain_", kConcrete, kDet, Shape::SameDomain, Cfg | Range,
       [](const Instance &x) {
         if (!same_domain(x.m1(), x.m2()))
           return vacuous();
         auto a1 = alloc(x.m1(), x.lo, x.hi);
         auto a2 = alloc(x.m2(), x.lo, x.hi);
         if (a1.has_value() != a2.has_value())
           return Verdict::fail("alloc succeeded on one state only");
         if (!a1)
           return pass();
         if (a1->block != a2->block)
           return Verdict::fail("alloc chose different blocks");
         return expect(same_domain(a1->mem, a2->mem), "domains diverged after alloc");
       }},

      // ---- generic facts ---------------------------------------------------
      {"alloc_valid_block_inv", kGen, kValid, Shape::Single, Cfg | Range | B,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a || !valid_block(x.m1(), x.b))
           return vacuous();
         return expect(valid_block(a->mem, x.b), "alloc invalidated a block");
       }},
      {"alloc_not_valid_block_2", kGen, kValid, Shape::Single, Cfg | Range | B,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a || !valid_block(x.m1(), x.b))
           return vacuous();
         return expect(a->block != x.b, "alloc returned a valid block");
       }},
      {"alloc_result_valid_pointer", kGen, kAccess, Shape::Single, Cfg | Range | T | I,
       [](const Instance &x) {
         auto a = alloc_in(x);
         if (!a || x.i < x.lo || x.i + size_chunk(x.t) > x.hi ||
             (x.cfg.check_alignment && !aligned(x.t, x.i)))
           return vacuous();
         return expect(valid_access(a->mem, x.t, a->block, x.i), "in-bounds access refused");
       }},
      {"load_store_classification", kGen, kGood, Shape::Single, T | T2 | B | B2 | I | I2 | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2 || !valid_access(*m2, x.t2, x.b2, x.i2))
           return vacuous();
         const bool same_place = x.b == x.b2 && x.i == x.i2;
         const bool similar = same_place && compat(x.t, x.t2);
         const bool mismatch = same_place && !compat(x.t, x.t2);
         const bool other = x.b != x.b2 || !overlap(x.i, x.t, x.i2, x.t2);
         const bool overlapping = x.b == x.b2 && x.i != x.i2 && overlap(x.i, x.t, x.i2, x.t2);
         if (similar + mismatch + other + overlapping != 1)
           return Verdict::fail("cases are not exclusive and exhaustive");
         auto got = load(x.t2, *m2, x.b2, x.i2);
         if (similar)
           return expect_eq(got, std::optional<Value>{oracle::convert(x.v, x.t2)}, "similar");
         if (other)
           return expect_eq(got, load(x.t2, x.m1(), x.b2, x.i2), "other");
         return expect_eq(got, std::optional<Value>{Vundef{}}, overlapping ? "overlap" : "mismatch");
       }},
      {"store_same_domain", kGen, kDet, Shape::Single, T | B | I | V,
       [](const Instance &x) {
         auto m2 = store_in(x);
         if (!m2)
           return vacuous();
         return expect(same_domain(x.m1(), *m2), "store changed the domain");
       }},
      {"free_same_domain", kGen, kDet, Shape::SameDomain, B,
       [](const Instance &x) {
         if (!same_domain(x.m1(), x.m2()))
           return vacuous();
         auto f1 = free(x.m1(), x.b);
         if (!f1)
           return vacuous();
         auto f2 = free(x.m2(), x.b);
         if (!f2)
           return Verdict::fail("free failed on the second state");
         return expect(same_domain(*f1, *f2), "domains diverged after free");
       }},
      {"free_not_valid_pointer", kGen, kAccess, Shape::Single, B | T | I,
       [](const Instance &x) {
         auto m2 = free(x.m1(), x.b);
         if (!m2)
           return vacuous();
         return expect(!valid_access(*m2, x.t, x.b, x.i), "freed block still accessible");
       }},
  };
}

} // namespace blockmem::lawcheck::support
