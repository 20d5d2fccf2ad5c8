#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polygate {

/// The 16 two-input boolean functions. The enumerator value *is* the truth
/// table: bit r holds the output for row r = (A << 1) | B, i.e. rows
/// (0,0), (0,1), (1,0), (1,1) in that order.
enum class BaseGate : std::uint8_t {
  ZERO = 0x0,
  NOR = 0x1,
  ANDNA = 0x2,  // (!A) & B
  NOTA = 0x3,
  ANDNB = 0x4,  // A & (!B)
  NOTB = 0x5,
  XOR = 0x6,
  NAND = 0x7,
  AND = 0x8,
  NXOR = 0x9,
  WIREB = 0xA,
  ORNA = 0xB,  // (!A) | B
  WIREA = 0xC,
  ORNB = 0xD,  // A | (!B)
  OR = 0xE,
  ONE = 0xF,
};

inline constexpr int kBaseGateCount = 16;

constexpr std::uint8_t truth_table(BaseGate g) { return static_cast<std::uint8_t>(g); }

constexpr BaseGate from_truth_table(std::uint8_t tt) { return static_cast<BaseGate>(tt & 0xF); }

constexpr bool eval_base(BaseGate g, bool a, bool b) {
  return (truth_table(g) >> ((a ? 2 : 0) | (b ? 1 : 0))) & 1;
}

/// 0 for ZERO/ONE, 1 for NOTA/NOTB/WIREA/WIREB, 2 otherwise.
int effective_arity(BaseGate g);

std::string_view name(BaseGate g);

/// Unary classification used for reporting: NOTA/NOTB -> "NOT",
/// WIREA/WIREB -> "WIRE"; other gates keep their name.
std::string_view display_name(BaseGate g);

/// Case-insensitive lookup over the 16-name vocabulary.
std::optional<BaseGate> parse_base_gate(std::string_view text);

const std::array<BaseGate, kBaseGateCount>& all_base_gates();

/// An m-tuple of base gates; mode k (1-based) behaves as modes[k-1].
struct PolyGate {
  std::vector<BaseGate> modes;
  std::string label;

  PolyGate() = default;
  PolyGate(std::vector<BaseGate> m) : modes(std::move(m)) {}  // NOLINT: implicit on purpose
  PolyGate(std::initializer_list<BaseGate> m) : modes(m) {}

  int mode_count() const { return static_cast<int>(modes.size()); }
  BaseGate mode(int k) const;  // 1-based, throws ModeError

  /// "NAND/NOR"; the label wins when set.
  std::string to_string() const;

  friend bool operator==(const PolyGate& x, const PolyGate& y) { return x.modes == y.modes; }
  friend auto operator<=>(const PolyGate& x, const PolyGate& y) { return x.modes <=> y.modes; }
};

/// Evaluate `p` in 1-based `mode`. Throws ModeError when out of range.
bool eval_poly(const PolyGate& p, int mode, bool a, bool b);

/// Slash-separated base gate names, e.g. "NAND/NOR".
PolyGate parse_poly_gate(std::string_view text);

/// Gate set satisfying mode distinguishability: every pair of modes is
/// told apart by at least one member gate. Only constructible through
/// validate_gate_set.
class PolyGateSet {
 public:
  const std::vector<PolyGate>& gates() const { return gates_; }
  int mode_count() const { return modes_; }
  std::size_t size() const { return gates_.size(); }
  const PolyGate& operator[](std::size_t i) const { return gates_[i]; }

  std::string to_string() const;

 private:
  friend PolyGateSet validate_gate_set(std::vector<PolyGate> gates);
  PolyGateSet(std::vector<PolyGate> gates, int modes) : gates_(std::move(gates)), modes_(modes) {}

  std::vector<PolyGate> gates_;
  int modes_;
};

/// Throws GateSetError naming the first failure: empty list, mixed mode
/// counts, fewer than two modes, or the lexicographically first
/// indistinguishable mode pair (i, j).
PolyGateSet validate_gate_set(std::vector<PolyGate> gates);

/// Parses the comma/slash grammar without validating.
std::vector<PolyGate> parse_gate_list(std::string_view text);

/// parse_gate_list followed by validate_gate_set.
PolyGateSet parse_gate_set(std::string_view text);

/// Mode cap enforced at API boundaries: 4, or POLY_MAX_MODES when set.
/// Never above kHardModeLimit.
int max_modes();
inline constexpr int kHardModeLimit = 6;

/// Throws ModeError when m exceeds max_modes().
void check_mode_cap(int m);

}  // namespace polygate
