#include "blockmem/fault.hpp"

#include <atomic>

namespace blockmem::fault {

namespace {
std::atomic<Fault> g_armed{Fault::None};
}

std::string_view fault_name(Fault f) {
  switch (f) {
  case Fault::None:
    return "none";
  case Fault::DropAlignmentCheck:
    return "drop-alignment-check";
  case Fault::SkipContinuationClear:
    return "skip-continuation-clear";
  case Fault::ReuseFreedIds:
    return "reuse-freed-ids";
  case Fault::WrongSignExtension:
    return "wrong-sign-extension";
  case Fault::FreeIgnoresValidity:
    return "free-ignores-validity";
  case Fault::InjectSkipsNoOverlap:
    return "inject-skips-no-overlap";
  }
  return "unknown";
}

Fault armed() { return g_armed.load(std::memory_order_relaxed); }

ScopedFault::ScopedFault(Fault f) : previous_(g_armed.exchange(f)) {}

ScopedFault::~ScopedFault() { g_armed.store(previous_); }

} // namespace blockmem::fault
