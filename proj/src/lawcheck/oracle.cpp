#include "blockmem/lawcheck/oracle.hpp"

#include <array>
#include <cstring>

namespace blockmem::oracle {

using lawcheck::Step;

Offset size_of(Chunk t) {
  static constexpr std::array<Offset, 7> kSizes = {1, 1, 2, 2, 4, 4, 8};
  return kSizes[static_cast<std::size_t>(t)];
}

Offset align_of(Chunk t) { return size_of(t); }

namespace {

std::int64_t wrap(std::int64_t n, int bits, bool is_signed) {
  const std::uint64_t modulus = std::uint64_t{1} << bits;
  std::uint64_t low = static_cast<std::uint64_t>(n) % modulus;
  if (is_signed && low >= modulus / 2)
    return static_cast<std::int64_t>(low) - static_cast<std::int64_t>(modulus);
  return static_cast<std::int64_t>(low);
}

double as_double(std::uint64_t bits) {
  double d;
  std::memcpy(&d, &bits, sizeof d);
  return d;
}

std::uint64_t as_bits(double d) {
  std::uint64_t b;
  std::memcpy(&b, &d, sizeof b);
  return b;
}

} // namespace

Value convert(const Value &v, Chunk t) {
  if (auto *i = std::get_if<Vint>(&v)) {
    switch (t) {
    case Chunk::Int8Signed:
      return Vint{wrap(i->n, 8, true)};
    case Chunk::Int8Unsigned:
      return Vint{wrap(i->n, 8, false)};
    case Chunk::Int16Signed:
      return Vint{wrap(i->n, 16, true)};
    case Chunk::Int16Unsigned:
      return Vint{wrap(i->n, 16, false)};
    case Chunk::Int32:
      return Vint{wrap(i->n, 32, true)};
    default:
      return Vundef{};
    }
  }
  if (auto *f = std::get_if<Vfloat>(&v)) {
    if (t == Chunk::Float64)
      return *f;
    if (t == Chunk::Float32) {
      float single = static_cast<float>(as_double(f->bits));
      return Vfloat{as_bits(static_cast<double>(single))};
    }
    return Vundef{};
  }
  if (std::holds_alternative<Vptr>(v) && t == Chunk::Int32)
    return v;
  return Vundef{};
}

std::optional<Datum> lookup(const AssocCells &f, Offset ofs) {
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    if (it->ofs == ofs)
      return it->content;
  return std::nullopt;
}

AssocCells update(Offset ofs, std::optional<Datum> c, AssocCells f) {
  f.push_back(Cell{ofs, std::move(c)});
  return f;
}

bool check_cont(const AssocCells &f, Offset ofs, Offset n) {
  if (n == 0)
    return true;
  if (lookup(f, ofs))
    return false;
  return check_cont(f, ofs + 1, n - 1);
}

AssocCells set_cont(AssocCells f, Offset ofs, Offset n) {
  if (n == 0)
    return f;
  return set_cont(update(ofs, std::nullopt, std::move(f)), ofs + 1, n - 1);
}

AssocCells store_contents(AssocCells f, Chunk t, Offset ofs, const Value &v) {
  return update(ofs, Datum{t, v}, set_cont(std::move(f), ofs + 1, size_of(t) - 1));
}

Value load_contents(Chunk t, const AssocCells &f, Offset ofs) {
  auto c = lookup(f, ofs);
  if (!c)
    return Vundef{};
  if (size_of(c->chunk) != size_of(t))
    return Vundef{};
  if (!check_cont(f, ofs + 1, size_of(t) - 1))
    return Vundef{};
  return oracle::convert(c->value, t);
}

AssocCells from_contents(const BlockContents &f) {
  AssocCells out;
  for (const auto &[ofs, d] : f.cells())
    out.push_back(Cell{ofs, d});
  return out;
}

namespace {

struct NaiveBlock {
  std::int64_t id;
  Offset lo, hi;
  bool freed = false;
  AssocCells cells;
};

struct NaiveMem {
  std::int64_t next = 1;
  std::vector<NaiveBlock> blocks;
  MemConfig cfg;

  NaiveBlock *find(std::int64_t id) {
    for (auto &b : blocks)
      if (b.id == id)
        return &b;
    return nullptr;
  }

  bool valid(std::int64_t id) {
    auto *b = find(id);
    return b && !b->freed;
  }

  bool access_ok(Chunk t, std::int64_t id, Offset i) {
    auto *b = find(id);
    if (!b || b->freed)
      return false;
    if (i < b->lo || i + size_of(t) > b->hi)
      return false;
    if (!cfg.check_alignment)
      return true;
    Offset r = i % align_of(t);
    return r == 0;
  }

  std::uint64_t in_use() const {
    std::uint64_t total = 0;
    for (const auto &b : blocks)
      if (!b.freed && b.hi > b.lo)
        total += static_cast<std::uint64_t>(b.hi - b.lo);
    return total;
  }
};

std::string describe(const Value &v) { return to_string(v); }

template <class Query>
std::string final_state(std::int64_t next, Query &&q) {
  // q(id) -> {exists, lo, hi, valid}; loads are taken by q.load(t, id, i).
  std::string out = "next " + std::to_string(next) + "\n";
  for (std::int64_t id = 1; id < next; ++id) {
    auto [lo, hi, valid] = q.block(id);
    out += "block " + std::to_string(id) + " [" + std::to_string(lo) + "," +
           std::to_string(hi) + ") " + (valid ? "valid" : "freed") + "\n";
    if (!valid)
      continue;
    for (Chunk t : kAllChunks)
      for (Offset i = lo; i < hi; ++i)
        if (auto v = q.load(t, id, i))
          out += "  " + std::string(chunk_name(t)) + "@" + std::to_string(i) + " = " +
                 describe(*v) + "\n";
  }
  return out;
}

} // namespace

Observation oracle_exec(std::span<const Step> steps, const MemConfig &cfg) {
  NaiveMem m;
  m.cfg = cfg;
  Observation obs;
  for (const Step &s : steps) {
    switch (s.kind) {
    case Step::Kind::Alloc: {
      const Offset span = s.hi > s.lo ? s.hi - s.lo : 0;
      const auto &cap = cfg.capacity.max_total_bytes;
      if (cap && m.in_use() + static_cast<std::uint64_t>(span) > *cap) {
        obs.events.push_back("alloc -> fail");
        break;
      }
      m.blocks.push_back(NaiveBlock{m.next, s.lo, s.hi, false, {}});
      obs.events.push_back("alloc -> " + std::to_string(m.next));
      ++m.next;
      break;
    }
    case Step::Kind::Free:
      if (m.valid(s.block.id)) {
        m.find(s.block.id)->freed = true;
        obs.events.push_back("free ok");
      } else {
        obs.events.push_back("free fail");
      }
      break;
    case Step::Kind::Store:
      if (m.access_ok(s.chunk, s.block.id, s.ofs)) {
        auto *b = m.find(s.block.id);
        b->cells = store_contents(std::move(b->cells), s.chunk, s.ofs, s.value);
        obs.events.push_back("store ok");
      } else {
        obs.events.push_back("store fail");
      }
      break;
    case Step::Kind::Load:
      if (m.access_ok(s.chunk, s.block.id, s.ofs))
        obs.events.push_back("load -> " +
                             describe(load_contents(s.chunk, m.find(s.block.id)->cells, s.ofs)));
      else
        obs.events.push_back("load -> fail");
      break;
    case Step::Kind::QueryValid:
      obs.events.push_back(m.valid(s.block.id) ? "valid true" : "valid false");
      break;
    case Step::Kind::QueryBounds: {
      auto *b = m.find(s.block.id);
      obs.events.push_back(b ? "bounds " + std::to_string(b->lo) + " " + std::to_string(b->hi)
                             : std::string("bounds 0 0"));
      break;
    }
    }
  }
  struct {
    NaiveMem &m;
    std::tuple<Offset, Offset, bool> block(std::int64_t id) {
      auto *b = m.find(id);
      return {b->lo, b->hi, !b->freed};
    }
    std::optional<Value> load(Chunk t, std::int64_t id, Offset i) {
      if (!m.access_ok(t, id, i))
        return std::nullopt;
      return load_contents(t, m.find(id)->cells, i);
    }
  } q{m};
  obs.final_state = final_state(m.next, q);
  return obs;
}

Observation main_exec(std::span<const Step> steps, const MemConfig &cfg) {
  MemState m = empty(cfg);
  Observation obs;
  for (const Step &s : steps) {
    switch (s.kind) {
    case Step::Kind::Alloc:
      if (auto a = alloc(m, s.lo, s.hi)) {
        obs.events.push_back("alloc -> " + to_string(a->block));
        m = std::move(a->mem);
      } else {
        obs.events.push_back("alloc -> fail");
      }
      break;
    case Step::Kind::Free:
      if (auto r = free(m, s.block)) {
        m = std::move(*r);
        obs.events.push_back("free ok");
      } else {
        obs.events.push_back("free fail");
      }
      break;
    case Step::Kind::Store:
      if (auto r = store(s.chunk, m, s.block, s.ofs, s.value)) {
        m = std::move(*r);
        obs.events.push_back("store ok");
      } else {
        obs.events.push_back("store fail");
      }
      break;
    case Step::Kind::Load:
      if (auto v = load(s.chunk, m, s.block, s.ofs))
        obs.events.push_back("load -> " + describe(*v));
      else
        obs.events.push_back("load -> fail");
      break;
    case Step::Kind::QueryValid:
      obs.events.push_back(valid_block(m, s.block) ? "valid true" : "valid false");
      break;
    case Step::Kind::QueryBounds: {
      Bounds bd = bounds(m, s.block);
      obs.events.push_back("bounds " + std::to_string(bd.low) + " " + std::to_string(bd.high));
      break;
    }
    }
  }
  struct {
    const MemState &m;
    std::tuple<Offset, Offset, bool> block(std::int64_t id) {
      Bounds bd = bounds(m, BlockId{id});
      return {bd.low, bd.high, valid_block(m, BlockId{id})};
    }
    std::optional<Value> load(Chunk t, std::int64_t id, Offset i) {
      return blockmem::load(t, m, BlockId{id}, i);
    }
  } q{m};
  obs.final_state = final_state(m.nextblock().id, q);
  return obs;
}

std::optional<Divergence> differential(std::span<const Step> steps, const MemConfig &cfg) {
  Observation a = main_exec(steps, cfg);
  Observation b = oracle_exec(steps, cfg);
  const std::size_t n = std::min(a.events.size(), b.events.size());
  for (std::size_t k = 0; k < n; ++k)
    if (a.events[k] != b.events[k])
      return Divergence{k, a.events[k], b.events[k]};
  if (a.events.size() != b.events.size())
    return Divergence{n, "event count " + std::to_string(a.events.size()),
                      "event count " + std::to_string(b.events.size())};
  if (a.final_state != b.final_state)
    return Divergence{n, a.final_state, b.final_state};
  return std::nullopt;
}

} // namespace blockmem::oracle
