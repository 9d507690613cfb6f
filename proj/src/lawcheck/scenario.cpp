#include "blockmem/lawcheck/scenario.hpp"

#include <array>
#include <limits>

namespace blockmem::lawcheck {

Step Step::alloc(Offset lo, Offset hi) {
  Step s;
  s.kind = Kind::Alloc;
  s.lo = lo;
  s.hi = hi;
  return s;
}

Step Step::free(BlockId b) {
  Step s;
  s.kind = Kind::Free;
  s.block = b;
  return s;
}

Step Step::store(Chunk t, BlockId b, Offset ofs, Value v) {
  Step s;
  s.kind = Kind::Store;
  s.chunk = t;
  s.block = b;
  s.ofs = ofs;
  s.value = v;
  return s;
}

Step Step::load(Chunk t, BlockId b, Offset ofs) {
  Step s;
  s.kind = Kind::Load;
  s.chunk = t;
  s.block = b;
  s.ofs = ofs;
  return s;
}

Step Step::query_valid(BlockId b) {
  Step s;
  s.kind = Kind::QueryValid;
  s.block = b;
  return s;
}

Step Step::query_bounds(BlockId b) {
  Step s;
  s.kind = Kind::QueryBounds;
  s.block = b;
  return s;
}

MemState replay(std::span<const Step> steps, MemConfig cfg) {
  MemState m = empty(cfg);
  for (const Step &s : steps) {
    switch (s.kind) {
    case Step::Kind::Alloc:
      if (auto a = alloc(m, s.lo, s.hi))
        m = std::move(a->mem);
      break;
    case Step::Kind::Free:
      if (auto r = free(m, s.block))
        m = std::move(*r);
      break;
    case Step::Kind::Store:
      if (auto r = store(s.chunk, m, s.block, s.ofs, s.value))
        m = std::move(*r);
      break;
    default:
      break;
    }
  }
  return m;
}

namespace {

std::string var(BlockId b) { return "$b" + std::to_string(b.id); }

std::string value_text(const Value &v) {
  if (const auto *p = std::get_if<Vptr>(&v))
    return "(ptr " + var(p->block) + " " + std::to_string(p->ofs) + ")";
  return to_string(v);
}

} // namespace

std::string render(const Step &s) {
  const std::string chunk(chunk_name(s.chunk));
  switch (s.kind) {
  case Step::Kind::Alloc:
    return "alloc " + std::to_string(s.lo) + " " + std::to_string(s.hi);
  case Step::Kind::Free:
    return "free " + var(s.block);
  case Step::Kind::Store:
    return "store " + chunk + " " + var(s.block) + " " + std::to_string(s.ofs) + " " +
           value_text(s.value);
  case Step::Kind::Load:
    return "load " + chunk + " " + var(s.block) + " " + std::to_string(s.ofs);
  case Step::Kind::QueryValid:
    return "valid? " + var(s.block);
  case Step::Kind::QueryBounds:
    return "bounds? " + var(s.block);
  }
  return "?";
}

std::string render(std::span<const Step> steps) {
  std::string out;
  std::int64_t issued = 0;
  for (const Step &s : steps) {
    out += render(s);
    // Ids are issued in order; name the result after the id it would get.
    if (s.kind == Step::Kind::Alloc)
      out += " -> $b" + std::to_string(++issued);
    out += '\n';
  }
  return out;
}

Value random_value(SplitMix64 &rng, std::int64_t max_block) {
  static constexpr std::array<std::int64_t, 14> kInts = {
      -1, 0, 1, 7, 127, 128, 255, 256, 300, 65535, 65536, -32769,
      std::int64_t{1} << 31, std::numeric_limits<std::int64_t>::min()};
  static constexpr std::array<double, 6> kFloats = {
      0.0, -0.0, 1.1, 1.5, std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::quiet_NaN()};
  switch (rng.below(8)) {
  case 0:
  case 1:
    return Vundef{};
  case 2:
  case 3:
    return Vint{rng.pick(kInts)};
  case 4:
    return Vint{static_cast<std::int64_t>(rng.next())};
  case 5:
    if (rng.chance(1, 4))
      return Vfloat{rng.next()};
    return Vfloat::of(rng.pick(kFloats));
  default:
    return Vptr{BlockId{rng.range(1, std::max<std::int64_t>(1, max_block))},
                rng.range(-4, 12)};
  }
}

std::vector<Step> gen_steps(SplitMix64 &rng, const GenConfig &cfg) {
  std::vector<Step> steps;
  MemState m;
  std::int64_t issued = 0;
  const int n = static_cast<int>(rng.range(0, cfg.max_steps));
  for (int k = 0; k < n; ++k) {
    const std::uint64_t roll = rng.below(10);
    Step s;
    if (cfg.max_blocks > 0 && issued < cfg.max_blocks && (issued == 0 || roll < 3)) {
      Offset lo = rng.range(cfg.lo_min, cfg.hi_max);
      Offset hi = rng.chance(1, 10) ? rng.range(cfg.lo_min, lo) : rng.range(lo, cfg.hi_max);
      s = Step::alloc(lo, hi);
    } else if (issued == 0) {
      continue;
    } else if (roll < 4) {
      s = Step::free(BlockId{rng.range(1, issued + 1)});
    } else {
      Chunk t = rng.pick(kAllChunks);
      BlockId b{rng.range(1, issued)};
      Bounds bd = bounds(m, b);
      Offset i;
      const Offset last = bd.high - size_chunk(t);
      if (last >= bd.low && rng.chance(4, 5)) {
        i = rng.range(bd.low, last);
        i -= ((i % align_chunk(t)) + align_chunk(t)) % align_chunk(t);
        if (i < bd.low)
          i += align_chunk(t);
      } else {
        i = rng.range(bd.low - 4, bd.high + 4);
      }
      s = Step::store(t, b, i, random_value(rng, issued + 1));
    }
    steps.push_back(s);
    if (s.kind == Step::Kind::Alloc) {
      if (auto a = alloc(m, s.lo, s.hi)) {
        m = std::move(a->mem);
        ++issued;
      }
    } else if (s.kind == Step::Kind::Free) {
      if (auto r = free(m, s.block))
        m = std::move(*r);
    } else if (auto r = store(s.chunk, m, s.block, s.ofs, s.value)) {
      m = std::move(*r);
    }
    if (cfg.with_queries && issued > 0) {
      BlockId q{rng.range(1, issued + 1)};
      switch (rng.below(3)) {
      case 0:
        steps.push_back(Step::query_valid(q));
        break;
      case 1:
        steps.push_back(Step::query_bounds(q));
        break;
      default: {
        Chunk t = rng.pick(kAllChunks);
        Bounds bd = bounds(m, q);
        steps.push_back(Step::load(t, q, rng.range(bd.low - 2, bd.high + 1)));
      }
      }
    }
  }
  return steps;
}

MemState gen_state(std::uint64_t seed, const GenConfig &cfg) {
  SplitMix64 rng(seed);
  auto steps = gen_steps(rng, cfg);
  return replay(steps);
}

} // namespace blockmem::lawcheck
