#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "polygate/function.hpp"
#include "polygate/gate.hpp"

namespace polygate {

/// A gate pin source: a primary input, an earlier node, or a constant.
struct Operand {
  enum class Kind : std::uint8_t { input, node, constant };

  Kind kind = Kind::constant;
  int index = 0;  // input index, node index, or the constant value

  static constexpr Operand input(int i) { return {Kind::input, i}; }
  static constexpr Operand node(int i) { return {Kind::node, i}; }
  static constexpr Operand constant(bool v) { return {Kind::constant, v ? 1 : 0}; }

  friend bool operator==(const Operand&, const Operand&) = default;
  friend auto operator<=>(const Operand&, const Operand&) = default;
};

struct Node {
  std::string id;
  PolyGate gate;
  Operand in_a;
  Operand in_b;
};

/// Acyclic single-output multi-mode circuit. Nodes are kept in topological
/// order: a node may only read primary inputs, constants, and earlier nodes.
class Netlist {
 public:
  /// `modes` = 0 leaves the mode count open until the first node is added.
  explicit Netlist(std::vector<std::string> inputs = {}, int modes = 0);

  /// Appends a node; an empty id is replaced by "n<index>". Throws
  /// NetlistError on a forward/unknown operand, duplicate id, or a gate
  /// whose mode count differs from the netlist's.
  Operand add_node(PolyGate gate, Operand a, Operand b, std::string id = {});
  void set_output(Operand out);

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  Operand output() const { return output_; }
  int input_count() const { return static_cast<int>(inputs_.size()); }
  /// 0 for a gate-free netlist built without an explicit mode count.
  int mode_count() const { return modes_; }

  /// Index of a primary input by name, -1 if absent.
  int input_index(std::string_view name) const;
  /// Printable name of an operand ("a", "n3", "0", "1").
  std::string operand_name(Operand op) const;

  /// True when any gate pin or the output is tied to logic-0/1.
  bool uses_constants() const;

  friend bool operator==(const Netlist& x, const Netlist& y);

 private:
  void check_operand(Operand op, int limit) const;

  std::vector<std::string> inputs_;
  std::vector<Node> nodes_;
  std::unordered_set<std::string> ids_;
  Operand output_ = Operand::constant(false);
  int modes_ = 0;
};

/// Netlist construction with structural hashing and sub-circuit splicing.
class NetlistBuilder {
 public:
  explicit NetlistBuilder(std::vector<std::string> inputs, int modes = 0);

  Operand input(int i) const { return Operand::input(i); }
  /// Returns an existing node when (gate, a, b) was already added.
  Operand add(const PolyGate& gate, Operand a, Operand b);
  /// Instantiates `sub` with its primary inputs bound to `bindings`
  /// (one per sub input) and returns the operand carrying its output.
  Operand splice(const Netlist& sub, std::span<const Operand> bindings);

  Netlist finish(Operand output) &&;

 private:
  struct Key {
    std::vector<BaseGate> gate;
    Operand a;
    Operand b;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  Netlist net_;
  std::unordered_map<Key, Operand, KeyHash> seen_;
};

/// Output bit in 1-based `mode` for `assignment` (one value per primary
/// input, in declaration order).
bool simulate(const Netlist& c, int mode, std::span<const bool> assignment);
bool simulate(const Netlist& c, int mode, const std::map<std::string, bool>& assignment);

/// Truth table of each mode over all 2^k assignments (k <= 6). Row r gives
/// input i the value bit (k-1-i) of r, so the first input is most
/// significant. `modes` is used when the netlist is gate-free.
std::vector<std::uint64_t> truth_tables(const Netlist& c, int modes = 1);

/// Per-mode table as a PolyFunction: binary signature for two inputs,
/// unary for one. Throws NetlistError otherwise.
PolyFunction truth_table_per_mode(const Netlist& c, int modes = 1);

/// Longest input/constant-to-output path, counted in gates.
int depth(const Netlist& c);

/// Replace every gate by the mapped gate. Throws NetlistError on an
/// unmapped gate or inconsistent replacement mode counts.
Netlist substitute(const Netlist& c, const std::map<PolyGate, PolyGate>& mapping);

/// Replace every gate by a sub-netlist whose inputs are spliced onto the
/// node's operands (first input <- in_a, second <- in_b).
Netlist substitute(const Netlist& c, const std::map<PolyGate, Netlist>& mapping);

/// Line-based text form:
///   inputs a b
///   n0 = NAND/NOR(a, b)
///   output n0
std::string serialize(const Netlist& c);
/// Inverse of serialize; '#' starts a comment. Throws ParseError with the
/// offending line.
Netlist parse_netlist(std::string_view text);

}  // namespace polygate
