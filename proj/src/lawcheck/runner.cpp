#include "blockmem/lawcheck/runner.hpp"

#include "blockmem/lawcheck/universe.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace blockmem::lawcheck {

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto &l : laws)
    n += l.passed() ? 0 : 1;
  return n;
}

std::uint64_t law_seed(std::uint64_t suite_seed, std::string_view law_name) {
  return suite_seed ^ fnv1a(law_name);
}

namespace {

bool fails(const Law &law, const Instance &x) {
  return law.check(x).kind == Verdict::Kind::Fail;
}

// Offsets tried in place of o, simplest first.
std::vector<Offset> smaller(Offset o) {
  std::vector<Offset> out;
  if (o != 0)
    out.push_back(0);
  if (o / 2 != 0 && o / 2 != o)
    out.push_back(o / 2);
  if (o > 0)
    out.push_back(o - 1);
  if (o < 0)
    out.push_back(o + 1);
  return out;
}

std::vector<Instance> candidates(const Law &law, const Instance &x) {
  using namespace param;
  const unsigned p = law.params;
  std::vector<Instance> out;
  auto edit = [&](auto &&f) {
    Instance y = x;
    f(y);
    y.touch();
    out.push_back(std::move(y));
  };

  for (auto hist : {&Instance::h1, &Instance::h2, &Instance::h3})
    for (std::size_t k = (x.*hist).size(); k-- > 0;)
      edit([&](Instance &y) { (y.*hist).erase((y.*hist).begin() + static_cast<std::ptrdiff_t>(k)); });
  // Simplify stored values in the histories.
  for (auto hist : {&Instance::h1, &Instance::h2, &Instance::h3})
    for (std::size_t k = 0; k < (x.*hist).size(); ++k)
      if ((x.*hist)[k].kind == Step::Kind::Store && !is_undef((x.*hist)[k].value))
        edit([&](Instance &y) { (y.*hist)[k].value = Vundef{}; });

  for (const auto &[b, m] : x.emb.entries())
    edit([&, b = b](Instance &y) { y.emb = y.emb.without(b); });

  if (p & G)
    for (const auto &[ofs, d] : x.g.cells())
      edit([&, ofs = ofs](Instance &y) { y.g = update(ofs, std::nullopt, y.g); });
  for (const auto &[ofs, d] : x.f.cells()) {
    edit([&, ofs = ofs](Instance &y) { y.f = update(ofs, std::nullopt, y.f); });
    if (p & G)
      edit([&, ofs = ofs](Instance &y) {
        y.f = update(ofs, std::nullopt, y.f);
        y.g = update(ofs, std::nullopt, y.g);
      });
  }

  if ((p & Cfg) && !(x.cfg == MemConfig{}))
    edit([](Instance &y) { y.cfg = MemConfig{}; });
  if ((p & C) && x.c)
    edit([](Instance &y) { y.c = std::nullopt; });

  auto values = [&](Value Instance::*field) {
    const Value &v = x.*field;
    if (!is_undef(v))
      edit([&](Instance &y) { y.*field = Vundef{}; });
    if (!std::holds_alternative<Vint>(v) || std::get<Vint>(v).n != 0)
      edit([&](Instance &y) { y.*field = Vint{0}; });
  };
  if (p & V)
    values(&Instance::v);
  if (p & V2)
    values(&Instance::v2);

  auto offsets = [&](Offset Instance::*field) {
    for (Offset o : smaller(x.*field))
      edit([&](Instance &y) { y.*field = o; });
  };
  if (p & I)
    offsets(&Instance::i);
  if (p & I2)
    offsets(&Instance::i2);
  if (p & N)
    offsets(&Instance::n);
  if (p & Delta)
    offsets(&Instance::delta);
  if (p & Range) {
    offsets(&Instance::lo);
    offsets(&Instance::hi);
  }
  if (p & Range2) {
    offsets(&Instance::lo2);
    offsets(&Instance::hi2);
  }

  auto blocks = [&](BlockId Instance::*field) {
    for (std::int64_t id = 1; id < (x.*field).id; ++id)
      edit([&](Instance &y) { y.*field = BlockId{id}; });
  };
  if (p & B)
    blocks(&Instance::b);
  if (p & B2)
    blocks(&Instance::b2);

  if (p & Blocks)
    for (std::size_t k = 0; k < x.bs.size(); ++k)
      edit([&](Instance &y) { y.bs.erase(y.bs.begin() + static_cast<std::ptrdiff_t>(k)); });
  if (p & Reqs)
    for (std::size_t k = 0; k < x.reqs.size(); ++k)
      edit([&](Instance &y) { y.reqs.erase(y.reqs.begin() + static_cast<std::ptrdiff_t>(k)); });
  return out;
}

Counterexample report_failure(const Law &law, const Instance &x, std::string phase,
                              std::uint64_t index) {
  auto [small, steps] = shrink(law, x);
  Counterexample cx;
  cx.phase = std::move(phase);
  cx.case_index = index;
  cx.detail = law.check(small).detail;
  cx.instance = render(small, law);
  cx.shrink_steps = steps;
  // Standalone replay: a copy with every cached state dropped.
  Instance fresh = small;
  fresh.touch();
  cx.replays = fails(law, fresh);
  return cx;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::pair<Instance, unsigned> shrink(const Law &law, Instance x) {
  unsigned steps = 0;
  constexpr unsigned kMaxSteps = 400;
  bool progress = true;
  while (progress && steps < kMaxSteps) {
    progress = false;
    for (Instance &y : candidates(law, x))
      if (fails(law, y)) {
        x = std::move(y);
        ++steps;
        progress = true;
        break;
      }
  }
  return {std::move(x), steps};
}

LawReport run_law(const Law &law, const SuiteConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  LawReport r;
  r.name = law.name;
  r.module = law.module;
  r.group = law.group;
  r.shape = shape_name(law.shape);

  if (cfg.exhaustive) {
    std::uint64_t index = 0;
    enumerate(law, cfg.exhaustive_cap, [&](const Instance &x) {
      ++r.exhaustive_cases;
      const Verdict v = law.check(x);
      if (v.kind == Verdict::Kind::Pass)
        ++r.exercised;
      if (v.kind == Verdict::Kind::Fail) {
        r.counterexamples.push_back(report_failure(law, x, "exhaustive", index));
        return false;
      }
      ++index;
      return true;
    });
  }

  SplitMix64 rng(law_seed(cfg.seed, law.name));
  for (std::uint64_t k = 0; k < cfg.random_cases; ++k) {
    Instance x = random_instance(law, rng);
    ++r.random_cases;
    const Verdict v = law.check(x);
    if (v.kind == Verdict::Kind::Pass)
      ++r.exercised;
    if (v.kind == Verdict::Kind::Fail) {
      r.counterexamples.push_back(report_failure(law, x, "random", k));
      break;
    }
  }
  r.seconds = since(t0);
  return r;
}

SuiteReport run_suite(const SuiteConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport out;
  out.config = cfg;
  for (const Law &law : all_laws()) {
    if (!cfg.only.empty() &&
        std::find(cfg.only.begin(), cfg.only.end(), law.name) == cfg.only.end())
      continue;
    out.laws.push_back(run_law(law, cfg));
  }
  out.seconds = since(t0);
  return out;
}

std::string to_text(const SuiteReport &r) {
  std::ostringstream os;
  char buf[256];
  for (const LawReport &l : r.laws) {
    std::snprintf(buf, sizeof buf, "%-4s %-40s %-14s %-12s cases=%-8llu exercised=%-8llu %.2fs\n",
                  l.passed() ? "ok" : "FAIL", l.name.c_str(), l.module.c_str(),
                  l.group.empty() ? "-" : l.group.c_str(),
                  static_cast<unsigned long long>(l.cases()),
                  static_cast<unsigned long long>(l.exercised), l.seconds);
    os << buf;
    for (const Counterexample &cx : l.counterexamples) {
      os << "  counterexample (" << cx.phase << " case " << cx.case_index << ", shrunk in "
         << cx.shrink_steps << " steps, replay " << (cx.replays ? "fails" : "PASSES") << "): "
         << cx.detail << "\n";
      std::istringstream lines(cx.instance);
      for (std::string line; std::getline(lines, line);)
        os << "    " << line << "\n";
    }
  }
  std::snprintf(buf, sizeof buf, "%zu laws, %zu failed, seed %llu, %llu random cases per law, %.2fs\n",
                r.laws.size(), r.failures(), static_cast<unsigned long long>(r.config.seed),
                static_cast<unsigned long long>(r.config.random_cases), r.seconds);
  os << buf;
  return os.str();
}

std::string to_json(const SuiteReport &r) {
  using nlohmann::json;
  json laws = json::array();
  for (const LawReport &l : r.laws) {
    json cxs = json::array();
    for (const Counterexample &cx : l.counterexamples)
      cxs.push_back({{"phase", cx.phase},
                     {"case", cx.case_index},
                     {"detail", cx.detail},
                     {"instance", cx.instance},
                     {"shrink_steps", cx.shrink_steps},
                     {"replays", cx.replays}});
    laws.push_back({{"name", l.name},
                    {"module", l.module},
                    {"group", l.group},
                    {"shape", l.shape},
                    {"exhaustive_cases", l.exhaustive_cases},
                    {"random_cases", l.random_cases},
                    {"cases", l.cases()},
                    {"exercised", l.exercised},
                    {"passed", l.passed()},
                    {"counterexamples", std::move(cxs)}});
  }
  json inventory = json::array();
  for (const InventoryEntry &e : unimplemented_lemmas())
    inventory.push_back({{"name", e.name}, {"module", e.module}, {"status", e.status}});
  json doc = {{"seed", r.config.seed},
              {"random_cases", r.config.random_cases},
              {"exhaustive", r.config.exhaustive},
              {"laws", std::move(laws)},
              {"not_implemented", std::move(inventory)},
              {"summary", {{"laws", r.laws.size()}, {"failed", r.failures()}}}};
  return doc.dump(2) + "\n";
}

} // namespace blockmem::lawcheck
