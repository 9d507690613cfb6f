// Command-line front end: run traces, run the law suite, relate two traces.
// Exit codes: 0 success, 1 assertion/law/relation failure, 2 parse or usage error.

#include "blockmem/fault.hpp"
#include "blockmem/lawcheck/runner.hpp"
#include "blockmem/trace.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace blockmem;

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Common {
  std::int64_t capacity = -1;
  bool no_align = false;

  MemConfig config() const {
    MemConfig cfg;
    if (capacity >= 0)
      cfg.capacity = CapacityPolicy::bytes(static_cast<std::uint64_t>(capacity));
    cfg.check_alignment = !no_align;
    return cfg;
  }
};

std::optional<std::string> slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads and parses a trace, reporting problems on stderr.
std::optional<trace::Trace> load_trace(const std::string &path) {
  auto text = slurp(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  auto parsed = trace::parse(*text);
  if (auto *err = std::get_if<trace::ParseError>(&parsed)) {
    std::cerr << path << ":" << err->str() << "\n";
    return std::nullopt;
  }
  return std::get<trace::Trace>(std::move(parsed));
}

int cmd_run(const std::string &path, const Common &common, bool quiet) {
  auto t = load_trace(path);
  if (!t)
    return kUsage;
  const trace::ExecReport r = trace::exec(*t, common.config());
  if (!quiet)
    for (const auto &line : r.outcomes)
      std::cout << line << "\n";
  if (!r.ok) {
    std::cerr << path << ":" << *r.failed_line << ": " << r.failure << "\n";
    return kFailed;
  }
  if (!quiet)
    std::cout << "final state:\n" << trace::describe(r.final_state, r.env);
  std::cout << "ok: " << t->stmts.size() << " statements\n";
  return kOk;
}

struct LawsOptions {
  std::uint64_t cases = 10000;
  std::uint64_t seed = 42;
  std::string report;
  bool no_exhaustive = false;
  bool list = false;
  std::vector<std::string> only;
  std::string fault;
};

int cmd_laws(const LawsOptions &o) {
  using namespace lawcheck;
  if (o.list) {
    for (const Law &l : all_laws())
      std::cout << l.name << "\t" << l.module << "\t" << (l.group.empty() ? "-" : l.group)
                << "\n";
    for (const InventoryEntry &e : unimplemented_lemmas())
      std::cout << e.name << "\t" << e.module << "\t" << e.status << "\n";
    return kOk;
  }
  for (const auto &name : o.only)
    if (!find_law(name)) {
      std::cerr << "unknown law: " << name << "\n";
      return kUsage;
    }
  std::optional<fault::ScopedFault> armed;
  if (!o.fault.empty()) {
    fault::Fault which = fault::Fault::None;
    for (fault::Fault f : fault::kAllFaults)
      if (fault::fault_name(f) == o.fault)
        which = f;
    if (which == fault::Fault::None) {
      std::cerr << "unknown fault: " << o.fault << "\n";
      return kUsage;
    }
    armed.emplace(which);
  }

  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.random_cases = o.cases;
  cfg.exhaustive = !o.no_exhaustive;
  cfg.only = o.only;
  const SuiteReport r = run_suite(cfg);
  std::cout << to_text(r);
  if (!o.report.empty()) {
    std::ofstream out(o.report, std::ios::binary);
    if (!out) {
      std::cerr << o.report << ": cannot write report\n";
      return kUsage;
    }
    out << to_json(r);
  }
  return r.passed() ? kOk : kFailed;
}

struct RelateOptions {
  std::string t1, t2, relation, emb;
  bool stepwise = false;
};

int cmd_relate(const RelateOptions &o, const Common &common) {
  auto rel = trace::parse_relation(o.relation);
  if (!rel) {
    std::cerr << "unknown relation: " << o.relation << " (lessdef, extends, inject)\n";
    return kUsage;
  }
  auto t1 = load_trace(o.t1);
  auto t2 = load_trace(o.t2);
  if (!t1 || !t2)
    return kUsage;

  std::optional<std::vector<trace::EmbLine>> emb;
  if (!o.emb.empty()) {
    auto text = slurp(o.emb);
    if (!text) {
      std::cerr << o.emb << ": cannot read file\n";
      return kUsage;
    }
    auto parsed = trace::parse_emb(*text);
    if (auto *err = std::get_if<trace::ParseError>(&parsed)) {
      std::cerr << o.emb << ":" << err->str() << "\n";
      return kUsage;
    }
    emb = std::get<std::vector<trace::EmbLine>>(std::move(parsed));
  } else if (!t1->emb.empty()) {
    emb = t1->emb;
  }

  const trace::RelateReport r = trace::relate(*t1, *t2, *rel, emb, o.stepwise, common.config());
  if (r.usage_error) {
    std::cerr << r.message << "\n";
    return kUsage;
  }
  std::cout << r.message << "\n";
  return r.ok ? kOk : kFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Executable block memory model: traces, laws and simulation relations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");

  Common common;
  app.add_option("--capacity", common.capacity, "Byte budget for allocation (default unlimited)");
  app.add_flag("--no-align", common.no_align, "Do not require aligned accesses");

  std::string trace_path;
  bool quiet = false;
  auto *run = app.add_subcommand("run", "Execute a trace and check its assertions");
  run->add_option("trace", trace_path, "Trace file")->required();
  run->add_flag("-q,--quiet", quiet, "Only print the verdict");

  LawsOptions laws;
  auto *lawcmd = app.add_subcommand("laws", "Run the law suite");
  lawcmd->add_option("--cases", laws.cases, "Random cases per law")->capture_default_str();
  lawcmd->add_option("--seed", laws.seed, "Suite seed")->capture_default_str();
  lawcmd->add_option("--report", laws.report, "Write the JSON report here");
  lawcmd->add_flag("--no-exhaustive", laws.no_exhaustive, "Skip the exhaustive phase");
  lawcmd->add_option("--only", laws.only, "Run only the named laws");
  lawcmd->add_option("--fault", laws.fault, "Arm a seeded bug (mutation testing)");
  lawcmd->add_flag("--list", laws.list, "List laws and unimplemented table lemmas");

  RelateOptions rel;
  auto *relcmd = app.add_subcommand("relate", "Check a relation between two traces' states");
  relcmd->add_option("trace1", rel.t1, "Source trace")->required();
  relcmd->add_option("trace2", rel.t2, "Target trace")->required();
  relcmd->add_option("--relation,-r", rel.relation, "lessdef, extends or inject")->required();
  relcmd->add_option("--emb", rel.emb, "Embedding file (lines: $x -> $y + DELTA)");
  relcmd->add_flag("--stepwise", rel.stepwise, "Check after every statement pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*run)
    return cmd_run(trace_path, common, quiet);
  if (*lawcmd)
    return cmd_laws(laws);
  return cmd_relate(rel, common);
}
