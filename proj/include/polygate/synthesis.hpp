#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polygate/gate.hpp"
#include "polygate/judge.hpp"
#include "polygate/netlist.hpp"

namespace polygate {

/// 3-input netlist (s, A, B) computing OR(AND(NOT s, A), AND(s, B)) in
/// every mode. Throws SynthesisError unless every cell verifies.
Netlist build_mux(const CellWitnesses& cells, int modes);

/// A member gate fed constant inputs whose output splits a mode subset:
/// 0 in zero_modes, 1 in one_modes (both non-empty, 1-based, ascending).
struct ModeSeparator {
  std::size_t gate = 0;
  bool in1 = false;
  bool in2 = false;
  std::vector<int> zero_modes;
  std::vector<int> one_modes;
};

/// First separator in scan order (gate index, then inputs 00, 01, 10, 11).
/// Throws SynthesisError (NoSeparator) when none exists or |modes| < 2.
ModeSeparator find_mode_separator(const PolyGateSet& gates, std::span<const int> modes);

/// m-input netlist (d1..dm) whose output equals data input k in mode k.
Netlist build_selector_tree(const PolyGateSet& gates, const CellWitnesses& cells);

/// Per-mode truth tables over `inputs` variables, rows ordered with the
/// first input most significant (the netlist truth_tables convention).
struct PolyTarget {
  int inputs = 2;
  std::vector<std::uint64_t> tables;
};

/// Slash-separated per-mode gate names ("AND/OR", two inputs) or per-mode
/// hex tables ("0x8/0xE"). Hex width sets the input count unless
/// `inputs` is given.
PolyTarget parse_target(std::string_view text, std::optional<int> inputs = std::nullopt);

inline constexpr int kMaxSynthesisInputs = 4;

/// Sum-of-products circuit per mode from the cells, routed through the
/// selector tree. Throws SynthesisError for an incomplete gate set, a
/// mode-count mismatch, or more than kMaxSynthesisInputs inputs.
Netlist synthesize(const PolyGateSet& gates, const PolyTarget& target, const CellWitnesses& cells);
/// Same, obtaining the cells from is_complete.
Netlist synthesize(const PolyGateSet& gates, const PolyTarget& target);

}  // namespace polygate
