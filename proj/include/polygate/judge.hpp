#pragma once

#include <optional>
#include <vector>

#include "polygate/closure.hpp"
#include "polygate/gate.hpp"
#include "polygate/netlist.hpp"

namespace polygate {

/// Instrumentation of one judge run.
struct JudgeCounters {
  int modes = 0;
  /// calls_per_level[d-1] = number of construction calls made at level d.
  std::vector<int> calls_per_level;
  /// Every construction call in execution order.
  std::vector<ConstructionCall> calls;

  std::uint64_t total_evaluations() const;
  std::uint64_t total_loops() const;
  long double total_pool_power() const;
};

/// Ceiling on the pool size of any pass at `level`: entries agree with one
/// of at most 4 leaf-closure tables in each earlier mode and are free in
/// the rest, plus the two virtual wires. 4^(d-1) * 16^(m-d+1) + 2.
long double pool_size_bound(int modes, int level);

/// Ceiling on the summed per-pass pool-size powers of one judge run.
/// Pools grow strictly between passes of a state, so one level-d state
/// costs at most S_d = 1^3 + ... + C_d^3 (C_d = pool_size_bound), and it
/// starts at most 16^(m-d) level-(d+1) states (one per new member of R):
/// B_m = S_m, B_d = S_d + 16^(m-d) * B_(d+1).
long double pool_power_bound(int modes);

struct JudgeResult {
  bool buildable = false;
  /// Realizes the target in every mode; set when buildable.
  std::optional<DerivedGate> witness;
  JudgeCounters counters;
};

/// Staged decision procedure: can `gates` build a polymorphic gate that
/// behaves as `target` in every mode? Throws ModeError above the mode cap.
JudgeResult judge(const PolyGateSet& gates, Target target, ConstantsPolicy policy = ConstantsPolicy::allow,
                  KernelMode mode = KernelMode::parallel);

enum class Strength : std::uint8_t { strong, weak, incomplete };
std::string_view to_string(Strength s);

struct CellWitnesses {
  Netlist and_cell;
  Netlist or_cell;
  Netlist not_cell;
};

/// Record of one cell search.
struct CellSearch {
  Target target;
  ConstantsPolicy policy;
  bool found = false;
  /// True when the cell was assembled from the other two by De Morgan.
  bool by_de_morgan = false;
  JudgeCounters counters;
};

struct CompletenessOptions {
  /// allow: classify strong/weak. forbid: only constant-free builds count.
  ConstantsPolicy policy = ConstantsPolicy::allow;
  /// Search all three cells instead of assembling OR from NOT and AND.
  bool independent_searches = false;
  KernelMode kernel = KernelMode::parallel;
};

struct CompletenessVerdict {
  bool complete = false;
  Strength strength = Strength::incomplete;
  std::optional<CellWitnesses> witnesses;
  std::vector<CellSearch> searches;
};

/// Searches NOT, then AND, then OR (by De Morgan unless
/// independent_searches). Constant-free searches run first; when they
/// fail and the policy allows constants, the searches are repeated with
/// constants and a success is reported as weak.
CompletenessVerdict is_complete(const PolyGateSet& gates, const CompletenessOptions& options = {});

/// OR(a, b) = NOT(AND(NOT a, NOT b)) from a 1-input NOT cell and a 2-input
/// AND cell; de_morgan_and is the dual.
Netlist de_morgan_or(const Netlist& not_cell, const Netlist& and_cell);
Netlist de_morgan_and(const Netlist& not_cell, const Netlist& or_cell);

/// True when `cell` behaves as `target` in every mode over every input
/// assignment (NOT cells have one input, AND/OR cells two).
bool verify_cell(const Netlist& cell, Target target, int modes);

}  // namespace polygate
