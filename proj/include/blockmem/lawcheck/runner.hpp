#pragma once

#include "blockmem/lawcheck/laws.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blockmem::lawcheck {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::uint64_t random_cases = 10000;
  bool exhaustive = true;
  /// Largest exhaustive universe a law may use before dropping to a smaller tier.
  std::uint64_t exhaustive_cap = 200000;
  /// Law names to run; empty runs all.
  std::vector<std::string> only;
};

struct Counterexample {
  std::string phase;        // "exhaustive" or "random"
  std::uint64_t case_index; // position in that phase's stream
  std::string detail;       // failure message of the shrunk instance
  std::string instance;     // rendered shrunk instance
  unsigned shrink_steps = 0;
  bool replays = false;     // rebuilt from scratch, it still fails
};

struct LawReport {
  std::string name, module, group, shape;
  std::uint64_t exhaustive_cases = 0;
  std::uint64_t random_cases = 0;
  std::uint64_t exercised = 0; // cases whose hypotheses held
  std::vector<Counterexample> counterexamples;
  double seconds = 0;

  bool passed() const { return counterexamples.empty(); }
  std::uint64_t cases() const { return exhaustive_cases + random_cases; }
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<LawReport> laws;
  double seconds = 0;

  bool passed() const;
  std::size_t failures() const;
};

/// Seed of one law's random stream; independent of which other laws run.
std::uint64_t law_seed(std::uint64_t suite_seed, std::string_view law_name);

LawReport run_law(const Law &law, const SuiteConfig &cfg);
SuiteReport run_suite(const SuiteConfig &cfg);

/// Greedy shrink: repeatedly applies the first simplification that keeps the
/// instance failing. Returns the shrunk instance and the number of steps.
std::pair<Instance, unsigned> shrink(const Law &law, Instance x);

/// Human-readable report, including wall times.
std::string to_text(const SuiteReport &r);
/// Machine-readable report. Carries no timing, so equal runs are byte-equal.
std::string to_json(const SuiteReport &r);

} // namespace blockmem::lawcheck
