#pragma once

#include <array>
#include <string_view>

// Mutation-testing hook. A fault, when armed, makes one core operation
// deliberately wrong so the law suite can demonstrate it notices. Nothing
// outside tests and the acceptance suite should arm a fault.

namespace blockmem::fault {

enum class Fault {
  None,
  DropAlignmentCheck,    // valid_access ignores alignment
  SkipContinuationClear, // store_contents does not clear the footprint tail
  ReuseFreedIds,         // alloc hands out the smallest freed id again
  WrongSignExtension,    // convert zero-extends signed 8/16-bit loads
  FreeIgnoresValidity,   // free succeeds on any block
  InjectSkipsNoOverlap,  // mem_inject omits the no-overlap conjunct
};

inline constexpr std::array<Fault, 6> kAllFaults = {
    Fault::DropAlignmentCheck, Fault::SkipContinuationClear,
    Fault::ReuseFreedIds,      Fault::WrongSignExtension,
    Fault::FreeIgnoresValidity, Fault::InjectSkipsNoOverlap};

std::string_view fault_name(Fault f);

Fault armed();
inline bool active(Fault f) { return armed() == f; }

/// Arms a fault for the lifetime of the guard.
class ScopedFault {
public:
  explicit ScopedFault(Fault f);
  ~ScopedFault();
  ScopedFault(const ScopedFault &) = delete;
  ScopedFault &operator=(const ScopedFault &) = delete;

private:
  Fault previous_;
};

} // namespace blockmem::fault
