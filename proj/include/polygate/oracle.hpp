#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polygate/closure.hpp"
#include "polygate/function.hpp"
#include "polygate/gate.hpp"

namespace polygate {

/// Every polymorphic function of (a, b) reachable from the projections
/// (and the constants, when allowed) by applying member gates modewise.
struct ClosureAtlas {
  int modes = 0;
  ConstantsPolicy policy = ConstantsPolicy::allow;
  /// Binary PolyFunctions in discovery order.
  std::vector<PolyFunction> reachable;
  /// Number of expansion rounds until the fixpoint.
  int rounds = 0;

  bool contains(const PolyFunction& f) const;
};

/// Brute-force clone closure. Throws ModeError above the mode cap.
ClosureAtlas close(const PolyGateSet& gates, ConstantsPolicy policy, KernelMode mode = KernelMode::parallel);

/// Re-applies the gate set to an atlas; returns the functions it adds
/// (empty at a fixpoint).
std::vector<PolyFunction> close_step(const PolyGateSet& gates, const ClosureAtlas& atlas);

/// AND/OR: the all-AND (all-OR) function is reachable. NOT: a function
/// equal to NOTA in every mode, or to NOTB in every mode, is reachable.
bool oracle_can_build(const ClosureAtlas& atlas, Target target);
bool oracle_can_build(const PolyGateSet& gates, Target target, ConstantsPolicy policy);

/// One function per line as slash-separated gate names, sorted.
std::string dump(const ClosureAtlas& atlas);

}  // namespace polygate
