#include "blockmem/lawcheck/universe.hpp"

#include <algorithm>
#include <set>

namespace blockmem::lawcheck {

namespace {

using Kind = Step::Kind;

constexpr std::array<std::pair<Offset, Offset>, 4> kTinyShapes = {
    {{0, 0}, {0, 4}, {-4, 4}, {0, 8}}};

struct StoreTemplate {
  Chunk t;
  Offset ofs;
  Value v;
};

std::vector<StoreTemplate> store_templates() {
  return {{Chunk::Int32, 0, Vint{300}},
          {Chunk::Int8Signed, 1, Vint{255}},
          {Chunk::Float64, 0, Vfloat::of(1.1)},
          {Chunk::Int32, -4, Vptr{BlockId{1}, 4}},
          {Chunk::Int16Unsigned, 2, Vundef{}},
          {Chunk::Float32, 0, Vfloat::of(1.1)}};
}

Offset round_up8(Offset a) {
  Offset r = ((a % kDeltaAlign) + kDeltaAlign) % kDeltaAlign;
  return r == 0 ? a : a + (kDeltaAlign - r);
}

std::vector<Bounds> alloc_bounds(const std::vector<Step> &h) {
  std::vector<Bounds> out;
  for (const Step &s : h)
    if (s.kind == Kind::Alloc)
      out.push_back({s.lo, s.hi});
  return out;
}

} // namespace

std::string state_key(const MemState &m) {
  std::string k = std::to_string(m.nextblock().id) + "|";
  for (const auto &[b, bd] : m.bounds_map())
    k += std::to_string(b.id) + ":" + std::to_string(bd.low) + "," + std::to_string(bd.high) + ";";
  k += "|";
  for (BlockId b : m.freed())
    k += std::to_string(b.id) + ";";
  k += "|";
  for (const auto &[b, c] : m.contents_map()) {
    k += std::to_string(b.id) + "{";
    for (const auto &[ofs, d] : c.cells())
      k += std::to_string(ofs) + std::string(chunk_name(d.chunk)) + to_string(d.value) + ",";
    k += "}";
  }
  return k;
}

std::vector<std::vector<Step>> tiny_histories() {
  std::vector<std::vector<Step>> out;
  std::set<std::string> seen;
  auto add = [&](std::vector<Step> h) {
    if (seen.insert(state_key(replay(h))).second)
      out.push_back(std::move(h));
  };
  const auto stores = store_templates();
  for (int k = 0; k <= 2; ++k) {
    const int combos = k == 0 ? 1 : k == 1 ? 4 : 16;
    for (int s = 0; s < combos; ++s) {
      std::vector<Step> allocs;
      for (int j = 0, code = s; j < k; ++j, code /= 4)
        allocs.push_back(Step::alloc(kTinyShapes[code % 4].first, kTinyShapes[code % 4].second));
      std::vector<std::optional<Step>> options{std::nullopt};
      for (int j = 1; j <= k; ++j)
        for (const auto &st : stores)
          options.push_back(Step::store(st.t, BlockId{j}, st.ofs, st.v));
      for (const auto &opt : options)
        for (int mask = 0; mask < (1 << k); ++mask) {
          auto h = allocs;
          if (opt)
            h.push_back(*opt);
          for (int j = 0; j < k; ++j)
            if (mask & (1 << j))
              h.push_back(Step::free(BlockId{j + 1}));
          add(std::move(h));
        }
    }
  }
  return out;
}

std::vector<std::vector<Step>> core_histories() {
  const BlockId b1{1}, b2{2};
  return {
      {},
      {Step::alloc(0, 8)},
      {Step::alloc(0, 8), Step::store(Chunk::Int32, b1, 0, Vint{300})},
      {Step::alloc(0, 8), Step::store(Chunk::Float64, b1, 0, Vfloat::of(1.1))},
      {Step::alloc(-4, 4), Step::store(Chunk::Int8Signed, b1, 1, Vint{255}),
       Step::store(Chunk::Int16Unsigned, b1, -2, Vint{-1})},
      {Step::alloc(0, 8), Step::free(b1)},
      {Step::alloc(0, 4), Step::alloc(0, 8)},
      {Step::alloc(0, 4), Step::alloc(0, 8), Step::store(Chunk::Int32, b2, 4, Vptr{b1, 0})},
      {Step::alloc(0, 8), Step::alloc(0, 8), Step::store(Chunk::Int32, b1, 0, Vint{300})},
      {Step::alloc(0, 4), Step::alloc(-4, 4), Step::store(Chunk::Int32, b2, -4, Vundef{}),
       Step::free(b1)},
      {Step::alloc(0, 0), Step::alloc(0, 8), Step::store(Chunk::Int8Unsigned, b2, 3, Vint{-1})},
      {Step::alloc(4, 0)},
  };
}

std::vector<Step> weaken(std::vector<Step> h) {
  for (Step &s : h)
    if (s.kind == Kind::Store)
      s.value = Vundef{};
  return h;
}

std::vector<Step> define(std::vector<Step> h) {
  for (Step &s : h)
    if (s.kind == Kind::Store && is_undef(s.value))
      s.value = Vint{7};
  return h;
}

std::vector<Step> widen(std::vector<Step> h, Offset pad) {
  for (Step &s : h)
    if (s.kind == Kind::Alloc) {
      s.lo -= pad;
      s.hi += pad;
    }
  return h;
}

std::vector<Step> mirror_stores(const std::vector<Step> &h, BlockId a, BlockId b) {
  std::vector<Step> out;
  for (const Step &s : h) {
    if (s.kind == Kind::Store && s.block == b)
      continue;
    out.push_back(s);
    if (s.kind == Kind::Store && s.block == a) {
      Step copy = s;
      copy.block = b;
      out.push_back(copy);
    }
  }
  return out;
}

ImagePair image_of(std::vector<Step> h1, const std::vector<Placement> &plan, Offset pad) {
  const std::vector<Bounds> src = alloc_bounds(h1);
  auto placement = [&](std::int64_t id) -> std::optional<Placement> {
    if (id < 1 || static_cast<std::size_t>(id) > src.size() ||
        static_cast<std::size_t>(id) > plan.size() || !plan[id - 1].mapped)
      return std::nullopt;
    return plan[id - 1];
  };

  int ntargets = 0;
  for (std::size_t k = 0; k < src.size() && k < plan.size(); ++k)
    if (plan[k].mapped)
      ntargets = std::max(ntargets, plan[k].target + 1);
  std::vector<std::optional<Bounds>> hull(ntargets);
  for (std::size_t k = 0; k < src.size() && k < plan.size(); ++k) {
    if (!plan[k].mapped || src[k].span() == 0)
      continue;
    Bounds img{src[k].low + plan[k].delta, src[k].high + plan[k].delta};
    auto &h = hull[plan[k].target];
    h = h ? Bounds{std::min(h->low, img.low), std::max(h->high, img.high)} : img;
  }

  ImagePair out;
  for (const auto &h : hull) {
    Bounds bd = h.value_or(Bounds{});
    out.h2.push_back(Step::alloc(bd.low - pad, bd.high + pad));
  }

  MemState m;
  for (Step &s : h1) {
    switch (s.kind) {
    case Kind::Alloc:
      if (auto a = alloc(m, s.lo, s.hi))
        m = std::move(a->mem);
      break;
    case Kind::Free:
      if (auto r = free(m, s.block))
        m = std::move(*r);
      break;
    case Kind::Store: {
      if (const auto *p = std::get_if<Vptr>(&s.value); p && !placement(p->block.id))
        s.value = Vundef{};
      auto r = store(s.chunk, m, s.block, s.ofs, s.value);
      if (!r)
        break;
      m = std::move(*r);
      auto pl = placement(s.block.id);
      if (!pl)
        break;
      Value v = s.value;
      if (const auto *p = std::get_if<Vptr>(&v)) {
        Placement q = *placement(p->block.id);
        v = Vptr{BlockId{q.target + 1}, p->ofs + q.delta};
      }
      out.h2.push_back(Step::store(s.chunk, BlockId{pl->target + 1}, s.ofs + pl->delta, v));
      break;
    }
    default:
      break;
    }
  }
  for (std::size_t k = 0; k < src.size() && k < plan.size(); ++k)
    if (plan[k].mapped)
      out.emb = out.emb.with(BlockId{static_cast<std::int64_t>(k) + 1},
                             Mapping{BlockId{plan[k].target + 1}, plan[k].delta});
  out.h1 = std::move(h1);
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Exhaustive universe

struct Tier {
  bool tiny;
  bool full_offsets;
  bool full_blocks;
  bool full_values;
};

constexpr std::array<Tier, 4> kTiers = {{{true, true, true, true},
                                         {false, true, true, true},
                                         {false, false, true, true},
                                         {false, false, false, false}}};

std::vector<BlockContents> cell_maps(bool full) {
  struct Op {
    Chunk t;
    Value v;
  };
  const std::vector<Op> ops = {{Chunk::Int8Signed, Vint{255}},
                               {Chunk::Int16Unsigned, Vint{300}},
                               {Chunk::Int32, Vptr{BlockId{1}, 4}},
                               {Chunk::Float64, Vfloat::of(1.1)}};
  std::vector<BlockContents> out{BlockContents{}};
  auto add = [&](BlockContents f) {
    if (std::find(out.begin(), out.end(), f) == out.end())
      out.push_back(std::move(f));
  };
  std::vector<BlockContents> singles;
  for (const auto &op : ops)
    for (Offset ofs = 0; ofs <= 2; ++ofs)
      singles.push_back(store_contents({}, op.t, ofs, op.v));
  for (const auto &f : singles)
    add(f);
  if (full) {
    for (const auto &op : ops)
      for (Offset ofs = 0; ofs <= 2; ++ofs)
        for (const auto &f : singles)
          add(store_contents(f, op.t, ofs, op.v));
  } else {
    add(store_contents(store_contents({}, Chunk::Int32, 0, Vint{1}), Chunk::Int8Signed, 1, Vint{2}));
    add(store_contents(store_contents({}, Chunk::Int8Signed, 1, Vint{2}), Chunk::Int32, 0, Vint{1}));
    add(store_contents(store_contents({}, Chunk::Int16Unsigned, 0, Vint{3}), Chunk::Int16Unsigned,
                       2, Vint{4}));
    add(store_contents(store_contents({}, Chunk::Float64, 0, Vfloat::of(1.1)), Chunk::Int32, 2,
                       Vint{5}));
  }
  return out;
}

std::vector<BlockContents> cell_variants(const BlockContents &f) {
  return {f, update(-3, Datum{Chunk::Int8Signed, Vint{1}}, f), update(6, std::nullopt, f),
          update(0, std::nullopt, f), update(1, Datum{Chunk::Int8Signed, Vint{9}}, f)};
}

std::vector<std::vector<Step>> drop_stores(const std::vector<Step> &h) {
  std::vector<Step> out;
  for (const Step &s : h)
    if (s.kind != Kind::Store)
      out.push_back(s);
  return {out};
}

std::vector<std::vector<Placement>> canonical_plans(const std::vector<Step> &h,
                                                    std::vector<std::vector<Step>> &h1s) {
  const std::vector<Bounds> src = alloc_bounds(h);
  const int n = static_cast<int>(src.size());
  std::vector<std::vector<Placement>> plans;
  auto push = [&](std::vector<Placement> p, std::vector<Step> hh) {
    plans.push_back(std::move(p));
    h1s.push_back(std::move(hh));
  };
  std::vector<Placement> ident(n), shift(n), merge(n), partial(n), skew(n);
  Offset cursor = 0;
  for (int k = 0; k < n; ++k) {
    ident[k] = {true, k, 0};
    shift[k] = {true, k, 8};
    merge[k] = {true, 0, round_up8(cursor - src[k].low)};
    if (src[k].span() > 0)
      cursor = src[k].high + merge[k].delta;
    partial[k] = {k != 0, k, 0};
    skew[k] = {true, k, 4};
  }
  push(ident, h);
  if (n == 0)
    return plans;
  push(shift, h);
  push(partial, h);
  push(skew, h);
  if (n >= 2) {
    push(merge, h);
    if (src[0] == src[1]) {
      std::vector<Placement> alias = ident;
      alias[1] = alias[0];
      push(alias, mirror_stores(h, BlockId{1}, BlockId{2}));
    }
  }
  return plans;
}

std::vector<Instance> base_instances(Shape shape, unsigned params, const Tier &tier) {
  std::vector<Instance> out;
  if (shape == Shape::Cells) {
    for (const auto &f : cell_maps(tier.tiny)) {
      std::vector<BlockContents> gs =
          (params & param::G) ? cell_variants(f) : std::vector<BlockContents>{f};
      for (auto &g : gs) {
        Instance x;
        x.f = f;
        x.g = std::move(g);
        out.push_back(std::move(x));
      }
    }
    return out;
  }
  auto add = [&](std::vector<Step> h1, std::vector<Step> h2 = {}, std::vector<Step> h3 = {},
                 Embedding emb = {}) {
    Instance x;
    x.h1 = std::move(h1);
    x.h2 = std::move(h2);
    x.h3 = std::move(h3);
    x.emb = std::move(emb);
    out.push_back(std::move(x));
  };
  for (const auto &h : tier.tiny ? tiny_histories() : core_histories()) {
    switch (shape) {
    case Shape::Cells:
      break;
    case Shape::Single:
      add(h);
      break;
    case Shape::SameDomain:
      add(h, h);
      add(h, define(h));
      add(h, weaken(h));
      add(h, drop_stores(h).front());
      break;
    case Shape::Lessdef:
      add(h, h);
      add(weaken(h), h);
      add(h, define(h));
      break;
    case Shape::LessdefChain:
      add(h, h, h);
      add(weaken(h), h, define(h));
      add(weaken(h), weaken(h), h);
      break;
    case Shape::Extends:
      add(h, h);
      add(h, widen(h, 4));
      add(weaken(h), widen(h, 8));
      break;
    case Shape::ExtendsChain:
      add(h, h, h);
      add(h, widen(h, 4), widen(h, 8));
      add(weaken(h), h, widen(h, 4));
      break;
    case Shape::Inject: {
      std::vector<std::vector<Step>> h1s;
      auto plans = canonical_plans(h, h1s);
      for (std::size_t k = 0; k < plans.size(); ++k) {
        ImagePair ip = image_of(h1s[k], plans[k], 0);
        add(std::move(ip.h1), std::move(ip.h2), {}, std::move(ip.emb));
      }
      break;
    }
    }
  }
  return out;
}

struct Dim {
  std::size_t size;
  std::function<void(Instance &, std::size_t)> set;
};

template <class T> Dim dim_of(std::vector<T> dom, T Instance::*field) {
  const std::size_t n = dom.size();
  return {n, [dom = std::move(dom), field](Instance &x, std::size_t k) { x.*field = dom[k]; }};
}

Value image_value(const Instance &x, Shape shape, const Value &v) {
  if (shape != Shape::Inject)
    return v;
  if (const auto *p = std::get_if<Vptr>(&v)) {
    if (auto m = x.emb(p->block))
      return Vptr{m->target, p->ofs + m->delta};
    return Vundef{};
  }
  return v;
}

std::vector<Dim> dims_for(const Law &law, const Tier &tier) {
  const unsigned p = law.params;
  const Shape shape = law.shape;
  std::vector<Dim> dims;

  std::vector<BlockId> blocks = tier.full_blocks
                                    ? std::vector<BlockId>{BlockId{1}, BlockId{2}, BlockId{3}}
                                    : std::vector<BlockId>{BlockId{1}, BlockId{2}};
  std::vector<Offset> offsets;
  if (tier.full_offsets)
    for (Offset o = -4; o < 8; ++o)
      offsets.push_back(o);
  else
    offsets = {-1, 0, 1, 2, 4};
  std::vector<Value> values = {Vundef{}, Vint{-1}, Vint{300}, Vfloat::of(1.1),
                               Vptr{BlockId{1}, 4}};
  if (!tier.full_values)
    values = {Vundef{}, Vint{300}, Vptr{BlockId{1}, 4}};
  const std::vector<Chunk> chunks(kAllChunks.begin(), kAllChunks.end());
  const std::vector<std::pair<Offset, Offset>> ranges = {{0, 0}, {0, 4}, {-4, 4},
                                                         {0, 8}, {4, 0}, {-4, 8}};

  if (p & param::Cfg) {
    std::vector<MemConfig> cfgs(4);
    cfgs[1].capacity = CapacityPolicy::bytes(8);
    cfgs[2].capacity = CapacityPolicy::bytes(12);
    cfgs[3].check_alignment = false;
    dims.push_back({cfgs.size(), [cfgs](Instance &x, std::size_t k) {
                      x.cfg = cfgs[k];
                      x.touch();
                    }});
  }
  if (p & param::T)
    dims.push_back(dim_of(chunks, &Instance::t));
  if (p & param::B)
    dims.push_back(dim_of(blocks, &Instance::b));
  if (p & param::I)
    dims.push_back(dim_of(offsets, &Instance::i));
  if (p & param::T2)
    dims.push_back(dim_of(chunks, &Instance::t2));
  if (p & param::B2) {
    // Slot 0 is the image of b: its emb target, or b itself.
    dims.push_back({blocks.size() + 1, [blocks](Instance &x, std::size_t k) {
                      if (k == 0) {
                        auto m = x.emb(x.b);
                        x.b2 = m ? m->target : x.b;
                      } else {
                        x.b2 = blocks[k - 1];
                      }
                    }});
  }
  if (p & param::I2) {
    dims.push_back({offsets.size() + 1, [offsets](Instance &x, std::size_t k) {
                      if (k == 0) {
                        auto m = x.emb(x.b);
                        x.i2 = x.i + (m ? m->delta : 0);
                      } else {
                        x.i2 = offsets[k - 1];
                      }
                    }});
  }
  if (p & param::N)
    dims.push_back(dim_of(std::vector<Offset>{0, 1, 2, 3, 4, 7}, &Instance::n));
  if (p & param::V)
    dims.push_back(dim_of(values, &Instance::v));
  if (p & param::V2) {
    std::vector<Value> rest = {Vundef{}, Vint{300}, Vfloat::of(1.1)};
    dims.push_back({rest.size() + 1, [rest, shape](Instance &x, std::size_t k) {
                      x.v2 = k == 0 ? image_value(x, shape, x.v) : rest[k - 1];
                    }});
  }
  if (p & param::Range)
    dims.push_back({ranges.size(), [ranges](Instance &x, std::size_t k) {
                      x.lo = ranges[k].first;
                      x.hi = ranges[k].second;
                    }});
  if (p & param::Range2)
    dims.push_back({ranges.size(), [ranges](Instance &x, std::size_t k) {
                      x.lo2 = ranges[k].first;
                      x.hi2 = ranges[k].second;
                    }});
  if (p & param::Delta)
    dims.push_back(dim_of(std::vector<Offset>{0, 8, -8, 4, 16}, &Instance::delta));
  if (p & param::C)
    dims.push_back(dim_of(std::vector<Content>{std::nullopt, Datum{Chunk::Int32, Vint{7}},
                                               Datum{Chunk::Int8Signed, Vint{-1}}},
                          &Instance::c));
  if (p & param::Blocks) {
    const BlockId b1{1}, b2{2}, b3{3};
    dims.push_back(dim_of(std::vector<std::vector<BlockId>>{
                              {}, {b1}, {b2}, {b1, b2}, {b2, b1}, {b1, b1}, {b3}},
                          &Instance::bs));
  }
  if (p & param::Reqs)
    dims.push_back(dim_of(std::vector<std::vector<AllocRequest>>{{},
                                                                 {{0, 4}},
                                                                 {{0, 8}, {-4, 4}},
                                                                 {{0, 0}, {0, 4}},
                                                                 {{-4, 4}, {0, 4}, {0, 8}}},
                          &Instance::reqs));
  return dims;
}

} // namespace

std::uint64_t enumerate(const Law &law, std::uint64_t cap,
                        const std::function<bool(const Instance &)> &sink) {
  std::vector<Instance> base;
  std::vector<Dim> dims;
  for (const Tier &tier : kTiers) {
    base = base_instances(law.shape, law.params, tier);
    dims = dims_for(law, tier);
    std::uint64_t total = base.size();
    for (const Dim &d : dims)
      total *= d.size;
    if (total <= cap)
      break;
  }

  std::uint64_t fed = 0;
  std::vector<std::size_t> digit(dims.size());
  for (Instance &x : base) {
    std::fill(digit.begin(), digit.end(), 0);
    for (std::size_t k = 0; k < dims.size(); ++k)
      dims[k].set(x, 0);
    while (true) {
      ++fed;
      if (!sink(x))
        return fed;
      // Odometer step: bump the last digit, carrying left; re-set every dim
      // from the first changed one onwards so dependent dims stay in sync.
      std::size_t k = dims.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++digit[k] < dims[k].size) {
          done = false;
          break;
        }
        digit[k] = 0;
      }
      if (done)
        break;
      for (std::size_t j = k; j < dims.size(); ++j)
        dims[j].set(x, digit[j]);
    }
  }
  return fed;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

Offset pick_offset(SplitMix64 &rng, Bounds bd, Chunk t) {
  const Offset a = align_chunk(t);
  const Offset last = bd.high - size_chunk(t);
  if (last >= bd.low && rng.chance(3, 4)) {
    Offset first = bd.low + ((a - ((bd.low % a) + a) % a) % a);
    if (first <= last)
      return first + a * rng.range(0, (last - first) / a);
  }
  return rng.range(bd.low - 4, std::max(bd.low, bd.high) + 4);
}

std::vector<Step> weaken_random(std::vector<Step> h, SplitMix64 &rng) {
  for (Step &s : h)
    if (s.kind == Kind::Store && rng.chance(1, 3))
      s.value = Vundef{};
  return h;
}

std::vector<Step> widen_random(std::vector<Step> h, SplitMix64 &rng) {
  static constexpr std::array<Offset, 4> kPads = {0, 0, 4, 8};
  for (Step &s : h)
    if (s.kind == Kind::Alloc) {
      s.lo -= rng.pick(kPads);
      s.hi += rng.pick(kPads);
    }
  return h;
}

BlockContents random_cells(SplitMix64 &rng) {
  BlockContents f;
  const int ops = static_cast<int>(rng.range(0, 6));
  for (int k = 0; k < ops; ++k) {
    const Offset ofs = rng.range(-4, 10);
    if (rng.chance(7, 10))
      f = store_contents(f, rng.pick(kAllChunks), ofs, random_value(rng, 3));
    else
      f = update(ofs, Datum{rng.pick(kAllChunks), random_value(rng, 3)}, f);
  }
  return f;
}

ImagePair random_image(SplitMix64 &rng) {
  std::vector<Step> h = gen_steps(rng, GenConfig{});
  std::vector<Bounds> src = alloc_bounds(h);
  const int n = static_cast<int>(src.size());

  // Occasionally force two blocks with equal bounds to share an image.
  int alias_a = -1, alias_b = -1;
  if (n >= 2 && rng.chance(1, 6)) {
    alias_a = static_cast<int>(rng.range(0, n - 2));
    alias_b = static_cast<int>(rng.range(alias_a + 1, n - 1));
    int seen = 0;
    for (Step &s : h)
      if (s.kind == Kind::Alloc && seen++ == alias_b) {
        s.lo = src[alias_a].low;
        s.hi = src[alias_a].high;
      }
    src[alias_b] = src[alias_a];
    h = mirror_stores(h, BlockId{alias_a + 1}, BlockId{alias_b + 1});
  }

  static constexpr std::array<Offset, 4> kDeltas = {0, 8, -8, 16};
  std::vector<Placement> plan(n);
  std::vector<Offset> ends;
  for (int k = 0; k < n; ++k) {
    if (k == alias_b) {
      plan[k] = plan[alias_a];
      continue;
    }
    const std::uint64_t roll = rng.below(20);
    if (roll < 3 && k != alias_a)
      continue;
    if (roll < 9 && !ends.empty()) {
      const int t = static_cast<int>(rng.below(ends.size()));
      plan[k] = {true, t, round_up8(ends[t] - src[k].low)};
    } else {
      const Offset d = rng.chance(1, 20) ? 4 : rng.pick(kDeltas);
      plan[k] = {true, static_cast<int>(ends.size()), d};
      ends.push_back(src[k].low + d);
    }
    if (src[k].span() > 0)
      ends[plan[k].target] = std::max(ends[plan[k].target], src[k].high + plan[k].delta);
  }
  static constexpr std::array<Offset, 3> kPads = {0, 0, 8};
  ImagePair ip = image_of(std::move(h), plan, rng.pick(kPads));
  if (rng.chance(1, 4)) {
    const BlockId junk{static_cast<std::int64_t>(ends.size()) + 1};
    ip.h2.insert(ip.h2.begin() + static_cast<std::ptrdiff_t>(ends.size()), Step::alloc(0, 8));
    ip.h2.push_back(Step::store(Chunk::Int32, junk, 0, random_value(rng, junk.id)));
  }
  return ip;
}

void random_params(Instance &x, const Law &law, SplitMix64 &rng) {
  const unsigned p = law.params;
  if (p & param::Cfg) {
    const std::uint64_t roll = rng.below(20);
    if (roll < 5)
      x.cfg.capacity = CapacityPolicy::bytes(static_cast<std::uint64_t>(rng.range(0, 40)));
    else if (roll < 7)
      x.cfg.check_alignment = false;
    x.touch();
  }
  x.t = rng.pick(kAllChunks);
  x.t2 = rng.pick(kAllChunks);
  x.n = rng.range(0, 9);
  x.c = rng.chance(3, 10) ? Content{} : Content{Datum{rng.pick(kAllChunks), random_value(rng, 3)}};
  static constexpr std::array<Offset, 6> kDeltas = {0, 8, -8, 16, 4, 24};
  x.delta = rng.pick(kDeltas);
  x.lo = rng.range(-8, 12);
  x.hi = rng.chance(17, 20) ? x.lo + rng.range(0, 16) : x.lo - rng.range(1, 4);
  if (rng.chance(3, 5)) {
    static constexpr std::array<Offset, 3> kPads = {0, 4, 8};
    x.lo2 = x.lo - rng.pick(kPads);
    x.hi2 = x.hi + rng.pick(kPads);
  } else {
    x.lo2 = rng.range(-8, 12);
    x.hi2 = x.lo2 + rng.range(-2, 16);
  }
  const int nreq = static_cast<int>(rng.range(0, 3));
  for (int k = 0; k < nreq; ++k) {
    Offset lo = rng.range(-8, 8);
    x.reqs.push_back({lo, rng.chance(9, 10) ? lo + rng.range(0, 12) : lo - 1});
  }

  if (law.shape == Shape::Cells) {
    x.i = rng.range(-4, 11);
    // Half the time aim at an existing datum, often with a same-size chunk.
    if (!x.f.empty() && rng.chance(1, 2)) {
      auto it = x.f.cells().begin();
      std::advance(it, static_cast<std::ptrdiff_t>(rng.below(x.f.cells().size())));
      x.i = it->first;
      if (rng.chance(1, 2))
        x.t = it->second.chunk;
    }
    x.i2 = rng.chance(1, 4) ? x.i : x.i + rng.range(-8, 8);
    x.v = random_value(rng, 3);
    x.v2 = rng.chance(1, 2) ? x.v : random_value(rng, 3);
    return;
  }

  const MemState &m1 = x.m1();
  const std::int64_t next = m1.nextblock().id;
  const std::vector<BlockId> valid = m1.valid_blocks();
  auto some_block = [&]() {
    if (!valid.empty() && rng.chance(17, 20))
      return rng.pick(valid);
    return BlockId{rng.range(1, next)};
  };
  x.b = some_block();
  x.i = pick_offset(rng, bounds(m1, x.b), x.t);

  const bool two = !x.h2.empty();
  const MemState &m2 = two ? x.m2() : m1;
  auto image = x.emb(x.b);
  if (law.shape == Shape::Inject && image && rng.chance(3, 5))
    x.b2 = image->target;
  else if (rng.chance(1, 2))
    x.b2 = x.b;
  else
    x.b2 = BlockId{rng.range(1, m2.nextblock().id)};
  const std::uint64_t roll = rng.below(10);
  if (roll < 4)
    x.i2 = x.i + (law.shape == Shape::Inject && image ? image->delta : 0);
  else if (roll < 6)
    x.i2 = x.i + rng.range(-7, 7);
  else
    x.i2 = pick_offset(rng, bounds(m2, x.b2), x.t2);

  x.v = rng.chance(1, 4) ? Value{Vptr{x.b, x.i}} : random_value(rng, next);
  const std::uint64_t vroll = rng.below(10);
  if (vroll < 5)
    x.v2 = image_value(x, law.shape, x.v);
  else if (vroll < 7)
    x.v2 = Vundef{};
  else
    x.v2 = random_value(rng, m2.nextblock().id);

  const int nbs = static_cast<int>(rng.range(0, 3));
  for (int k = 0; k < nbs; ++k)
    x.bs.push_back(some_block());
}

} // namespace

Instance random_instance(const Law &law, SplitMix64 &rng) {
  Instance x;
  switch (law.shape) {
  case Shape::Cells:
    x.f = random_cells(rng);
    x.g = x.f;
    if (rng.chance(1, 2)) {
      const int edits = static_cast<int>(rng.range(1, 3));
      for (int k = 0; k < edits; ++k) {
        Content c = rng.chance(1, 2) ? Content{}
                                     : Content{Datum{rng.pick(kAllChunks), random_value(rng, 3)}};
        x.g = update(rng.range(-4, 12), c, x.g);
      }
    }
    break;
  case Shape::Single:
    x.h1 = gen_steps(rng, GenConfig{});
    break;
  case Shape::SameDomain: {
    x.h1 = gen_steps(rng, GenConfig{});
    for (const Step &s : x.h1) {
      if (s.kind == Kind::Store) {
        const std::uint64_t roll = rng.below(4);
        if (roll == 0)
          continue;
        if (roll == 1) {
          Step r = s;
          r.value = random_value(rng, 4);
          x.h2.push_back(r);
          continue;
        }
      }
      x.h2.push_back(s);
    }
    break;
  }
  case Shape::Lessdef:
    x.h2 = gen_steps(rng, GenConfig{});
    x.h1 = weaken_random(x.h2, rng);
    break;
  case Shape::LessdefChain:
    x.h3 = gen_steps(rng, GenConfig{});
    x.h2 = weaken_random(x.h3, rng);
    x.h1 = weaken_random(x.h2, rng);
    break;
  case Shape::Extends: {
    auto h = gen_steps(rng, GenConfig{});
    x.h1 = weaken_random(h, rng);
    x.h2 = widen_random(h, rng);
    break;
  }
  case Shape::ExtendsChain: {
    auto h = gen_steps(rng, GenConfig{});
    x.h1 = weaken_random(h, rng);
    x.h2 = widen_random(h, rng);
    x.h3 = widen_random(x.h2, rng);
    break;
  }
  case Shape::Inject: {
    ImagePair ip = random_image(rng);
    x.h1 = std::move(ip.h1);
    x.h2 = std::move(ip.h2);
    x.emb = std::move(ip.emb);
    break;
  }
  }
  random_params(x, law, rng);
  return x;
}

} // namespace blockmem::lawcheck
