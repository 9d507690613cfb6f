// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [LEMMA_TABLES_FILE] [CLI_BINARY] [FIG2_TRACE]
//
// Defaults come from the build.

#include "blockmem/fault.hpp"
#include "blockmem/lawcheck/oracle.hpp"
#include "blockmem/lawcheck/runner.hpp"
#include "blockmem/lawcheck/scenario.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace blockmem;
using namespace blockmem::lawcheck;

namespace {

int failures = 0;

void verdict(bool ok, const std::string &name, const std::string &detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok)
    ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Law coverage

struct TableLemma {
  std::string name;
  std::string module;
};

// Lemma rows of the per-module proof statistics tables. A row names its
// lemma as \explanation{NAME} or \explanation{VC for NAME}; sub-goals carry a
// ".N" suffix and verification-condition kinds have no underscore. A table's
// module comes from a caption just below it, or else from the enclosing
// section heading.
std::vector<TableLemma> read_tables(const std::string &path, std::string &error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot read " + path;
    return {};
  }
  static const std::map<std::string, std::string> kModuleTag = {
      {"GEN_MEM", "Gen_Mem_Facts"}, {"REF_GEN_MEM", "Ref_Gen_Mem_Facts"},
      {"CONCRETE_MEM", "Concrete_Mem"}, {"REL_MEM", "Rel_Mem"},
      {"MEM_EXTENDS", "Mem_Extends"}, {"MEM_LESSDEF", "Mem_Lessdef"},
      {"MEM_INJECT", "Mem_Inject"}};
  const std::regex row(R"(\\explanation\{(?:VC for )?([A-Za-z0-9_!]+)\})");
  const std::regex caption(R"(\\caption\{Proof stats of ([A-Z_]+)\})");
  const std::regex section(R"(\\section\{Proof statistics of module ([A-Z_]+)\})");

  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    std::string plain; // drop the TeX escape in \_
    for (std::size_t k = 0; k < line.size(); ++k)
      if (!(line[k] == '\\' && k + 1 < line.size() && line[k + 1] == '_'))
        plain += line[k];
    lines.push_back(std::move(plain));
  }

  std::vector<TableLemma> out;
  std::set<std::string> seen;
  std::string section_module;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::smatch m;
    if (std::regex_search(lines[k], m, section)) {
      auto it = kModuleTag.find(m[1]);
      section_module = it == kModuleTag.end() ? "" : it->second;
    }
    if (lines[k].find("\\begin{tabular}") == std::string::npos)
      continue;
    std::size_t e = k;
    while (e < lines.size() && lines[e].find("\\end{tabular}") == std::string::npos)
      ++e;
    std::string module = section_module;
    for (std::size_t c = e; c < lines.size() && c < e + 8; ++c)
      if (std::regex_search(lines[c], m, caption)) {
        auto it = kModuleTag.find(m[1]);
        if (it != kModuleTag.end())
          module = it->second;
        break;
      }
    if (!module.empty())
      for (std::size_t r = k; r < e && r < lines.size(); ++r)
        for (auto i = std::sregex_iterator(lines[r].begin(), lines[r].end(), row);
             i != std::sregex_iterator(); ++i) {
          std::string name = (*i)[1];
          if (name.find('_') == std::string::npos)
            continue;
          std::erase(name, '!'); // one row has a stray '!' inside the name
          if (seen.insert(name).second)
            out.push_back({name, module});
        }
    k = e;
  }
  if (out.empty())
    error = "no lemma tables found in " + path;
  return out;
}

void law_coverage(const std::string &tables_path) {
  static const std::set<std::string_view> kModules = {
      "Gen_Mem_Facts", "Concrete_Mem", "Rel_Mem", "Mem_Extends", "Mem_Lessdef", "Mem_Inject"};
  const auto &laws = all_laws();
  std::string error;
  const auto table = read_tables(tables_path, error);
  if (!error.empty()) {
    verdict(false, "law-coverage", error);
    return;
  }
  std::map<std::string, std::string> table_module;
  for (const auto &t : table)
    table_module[t.name] = t.module;

  std::vector<std::string> problems;
  for (const Law &l : laws) {
    if (!kModules.count(l.module))
      problems.push_back(std::string(l.name) + " has unknown module " + std::string(l.module));
    // A lemma proved by case split appears only as its _if/_else/_original rows.
    auto it = table_module.find(std::string(l.name));
    for (const char *suffix : {"_original", "_if", "_else"})
      if (it == table_module.end())
        it = table_module.find(std::string(l.name) + suffix);
    if (it == table_module.end())
      problems.push_back(std::string(l.name) + " is not a table lemma");
    else if (it->second != l.module && it->second != "Ref_Gen_Mem_Facts")
      problems.push_back(std::string(l.name) + " tagged " + std::string(l.module) +
                         ", table says " + it->second);
  }
  std::set<std::string> accounted;
  for (const Law &l : laws)
    accounted.insert(std::string(l.name));
  for (const InventoryEntry &e : unimplemented_lemmas()) {
    accounted.insert(std::string(e.name));
    const std::string_view status = e.status;
    if (status.rfind("subsumed", 0) != 0 && status != "out of scope (proof-internal)")
      problems.push_back(std::string(e.name) + " has status " + std::string(status));
  }
  std::size_t ref_only = 0;
  for (const auto &t : table) {
    // The refinement module restates the generic facts for the concrete
    // model; its lemmas share names with implemented ones.
    if (t.module == "Ref_Gen_Mem_Facts" && accounted.count(t.name)) {
      ++ref_only;
      continue;
    }
    if (!accounted.count(t.name))
      problems.push_back("table lemma " + t.name + " is neither implemented nor inventoried");
  }
  if (laws.size() < 40)
    problems.push_back("only " + std::to_string(laws.size()) + " laws");

  std::ostringstream os;
  os << laws.size() << " laws, " << unimplemented_lemmas().size() << " inventoried, "
     << table.size() << " table lemmas (" << ref_only << " refinement restatements)";
  for (std::size_t k = 0; k < problems.size() && k < 8; ++k)
    os << "; " << problems[k];
  verdict(problems.empty(), "law-coverage", os.str());
}

// ---------------------------------------------------------------------------
// Full suite, groups, determinism

void axiom_groups(const SuiteReport &r, double secs) {
  static const std::array<std::string_view, 6> kGroups = {"S5-S8",        "S9-S13",  "S14-S17",
                                                           "S18/D19-D22", "P30-P34", "P35"};
  std::map<std::string_view, int> per_group;
  for (const Law &l : all_laws())
    ++per_group[l.group];
  std::ostringstream os;
  bool ok = true;
  for (auto g : kGroups) {
    os << g << "=" << per_group[g] << " ";
    ok &= per_group[g] >= 1;
  }
  std::uint64_t min_random = ~0ULL, no_exhaustive = 0;
  for (const LawReport &l : r.laws) {
    min_random = std::min(min_random, l.random_cases);
    no_exhaustive += l.exhaustive_cases == 0;
  }
  ok &= r.passed() && min_random >= 10000 && no_exhaustive == 0 && secs < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu laws, %zu with counterexamples, min random cases %llu, %llu laws without "
                "exhaustive cases, %.1fs",
                r.laws.size(), r.failures(), static_cast<unsigned long long>(min_random),
                static_cast<unsigned long long>(no_exhaustive), secs);
  os << "| " << buf;
  for (const LawReport &l : r.laws)
    if (!l.passed())
      os << " | " << l.name << ": " << l.counterexamples.front().detail;
  verdict(ok, "axiom-groups", os.str());
}

void witnesses() {
  SuiteConfig cfg;
  cfg.exhaustive = false;
  cfg.random_cases = 10000;
  std::ostringstream os;
  bool ok = true;
  for (const char *name : {"store_lessdef", "alloc_parallel_emb", "alloc_list_alloc_inject"}) {
    const Law *law = find_law(name);
    if (!law) {
      ok = false;
      os << name << " missing ";
      continue;
    }
    const LawReport r = run_law(*law, cfg);
    ok &= r.passed() && r.exercised >= 1000;
    os << name << " " << r.exercised << "/" << r.random_cases << " exercised"
       << (r.passed() ? "" : " FAILED") << "; ";
  }
  verdict(ok, "witnesses", os.str() + "need >= 1000 each");
}

// ---------------------------------------------------------------------------
// Differential

std::uint64_t random_steps(std::uint64_t target, std::string &first_divergence) {
  SplitMix64 rng(20240601);
  GenConfig cfg;
  cfg.with_queries = true;
  cfg.max_steps = 40;
  std::uint64_t steps = 0;
  while (steps < target) {
    const auto s = gen_steps(rng, cfg);
    steps += s.size();
    if (auto d = oracle::differential(s); d && first_divergence.empty())
      first_divergence = render(s) + "\n  main: " + d->main + "\n  oracle: " + d->oracle;
  }
  return steps;
}

constexpr Offset kWindowLo = -4, kWindowHi = 32;

// Cell-by-cell view over a window wide enough for every operation below.
using Flat = std::array<std::optional<Datum>, kWindowHi - kWindowLo>;

Flat flatten(const BlockContents &f) {
  Flat out;
  for (const auto &[ofs, d] : f.cells())
    if (ofs >= kWindowLo && ofs < kWindowHi)
      out[static_cast<std::size_t>(ofs - kWindowLo)] = d;
  return out;
}

Flat flatten(const oracle::AssocCells &f) {
  Flat out;
  std::array<bool, kWindowHi - kWindowLo> done{};
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    if (it->ofs >= kWindowLo && it->ofs < kWindowHi) {
      const auto k = static_cast<std::size_t>(it->ofs - kWindowLo);
      if (!done[k]) {
        done[k] = true;
        out[k] = it->content;
      }
    }
  return out;
}

struct CellsResult {
  std::uint64_t maps = 0, comparisons = 0;
  std::string mismatch;
};

// Every map over cells 0..15 where each cell is Empty or holds the datum
// assigned to that offset. Two assignments rotate the chunks so that each
// offset sees several footprints; data values come from a 2-value alphabet.
CellsResult exhaustive_cells() {
  CellsResult res;
  const std::array<Value, 2> int_vals = {Vint{1}, Vint{-129}};
  const std::array<Value, 2> float_vals = {Vfloat::of(1.5), Vfloat::of(0.1)};
  auto value_for = [&](Chunk t, int which) {
    return is_float_chunk(t) ? float_vals[which] : int_vals[which];
  };
  auto note = [&](const std::string &what, std::uint32_t mask, int rot) {
    if (res.mismatch.empty())
      res.mismatch = what + " on map " + std::to_string(mask) + " rotation " + std::to_string(rot);
  };

  for (int rot : {0, 3}) {
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
      ++res.maps;
      BlockContents main;
      oracle::AssocCells naive;
      for (Offset k = 0; k < 16; ++k)
        if (mask & (1u << k)) {
          const Chunk t = kAllChunks[static_cast<std::size_t>((k + rot) % 7)];
          const Datum d{t, value_for(t, static_cast<int>(k % 2))};
          main = update(k, d, main);
          naive = oracle::update(k, d, naive);
        }
      if (flatten(main) != flatten(naive))
        note("construction", mask, rot);

      for (Offset ofs = -1; ofs <= 16; ++ofs) {
        for (Offset n = 0; n <= 4; ++n) {
          res.comparisons += 2;
          if (check_cont(main, ofs, n) != oracle::check_cont(naive, ofs, n))
            note("check_cont", mask, rot);
          if (flatten(set_cont(main, ofs, n)) != flatten(oracle::set_cont(naive, ofs, n)))
            note("set_cont", mask, rot);
        }
        for (Chunk t : kAllChunks) {
          ++res.comparisons;
          if (load_contents(t, main, ofs) != oracle::load_contents(t, naive, ofs))
            note("load_contents", mask, rot);
          for (int which : {0, 1}) {
            const Value v = value_for(t, which);
            ++res.comparisons;
            if (flatten(store_contents(main, t, ofs, v)) !=
                flatten(oracle::store_contents(naive, t, ofs, v)))
              note("store_contents", mask, rot);
          }
        }
      }
    }
  }
  return res;
}

void differential() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string divergence;
  const std::uint64_t steps = random_steps(100000, divergence);
  const CellsResult cells = exhaustive_cells();
  std::ostringstream os;
  os << steps << " random steps" << (divergence.empty() ? " agree" : " DIVERGE") << "; "
     << cells.maps << " cell maps, " << cells.comparisons << " comparisons"
     << (cells.mismatch.empty() ? " agree" : " MISMATCH: " + cells.mismatch);
  char buf[32];
  std::snprintf(buf, sizeof buf, "; %.1fs", seconds_since(t0));
  os << buf;
  if (!divergence.empty())
    os << "\n  first divergence:\n" << divergence;
  verdict(steps >= 100000 && divergence.empty() && cells.mismatch.empty(), "differential",
          os.str());
}

// ---------------------------------------------------------------------------
// Mutation sensitivity

void mutation() {
  std::ostringstream os;
  bool ok = true;
  for (fault::Fault f : fault::kAllFaults) {
    fault::ScopedFault armed(f);
    SuiteConfig cfg;
    cfg.random_cases = 2000;
    const SuiteReport r = run_suite(cfg);
    std::vector<std::string> caught;
    bool replays = true;
    for (const LawReport &l : r.laws)
      if (!l.passed()) {
        caught.push_back(l.name);
        for (const auto &cx : l.counterexamples)
          replays &= cx.replays;
      }
    ok &= !caught.empty() && replays;
    os << fault::fault_name(f) << " -> ";
    if (caught.empty())
      os << "UNDETECTED";
    for (std::size_t k = 0; k < caught.size(); ++k)
      os << (k ? "," : "") << caught[k];
    if (!replays)
      os << " (counterexample does not replay)";
    os << "; ";
  }
  verdict(ok, "mutation", os.str());
}

int exit_status(const std::string &cmd) {
  const int raw = std::system(cmd.c_str());
  return raw == -1 ? -1 : WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void determinism(const SuiteReport &first, const std::string &cli, const std::string &trace) {
  SuiteConfig cfg; // seed 42
  const std::string a = to_json(first);
  const std::string b = to_json(run_suite(cfg));
  const int code = exit_status("'" + cli + "' run -q '" + trace + "' > /dev/null");
  std::ostringstream os;
  os << "seed 42 reports " << (a == b ? "identical" : "DIFFER") << " (" << a.size()
     << " bytes); store/load/free trace exit " << code;
  verdict(a == b && code == 0, "determinism", os.str());
}

} // namespace

int main(int argc, char **argv) {
  const std::string tables = argc > 1 ? argv[1] : BLOCKMEM_LEMMA_TABLES;
  const std::string cli = argc > 2 ? argv[2] : BLOCKMEM_CLI;
  const std::string trace = argc > 3 ? argv[3] : BLOCKMEM_FIG2_TRACE;

  law_coverage(tables);

  SuiteConfig cfg; // seed 42, 10000 random cases, exhaustive
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport full = run_suite(cfg);
  axiom_groups(full, seconds_since(t0));

  witnesses();
  differential();
  mutation();
  determinism(full, cli, trace);

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failures ? 1 : 0;
}
