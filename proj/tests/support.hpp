#pragma once

// Brute-force reference helpers that only rely on eval_base, so tests can
// check the closure and oracle code against something that shares none
// of their machinery.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "polygate/gate.hpp"
#include "polygate/netlist.hpp"

namespace testing_support {

using polygate::BaseGate;

// One entry per mode: the 4-row table of a function of (a, b).
using RefFn = std::vector<std::uint8_t>;

inline std::uint8_t ref_apply(BaseGate g, std::uint8_t x, std::uint8_t y) {
  std::uint8_t out = 0;
  for (int row = 0; row < 4; ++row) {
    if (polygate::eval_base(g, (x >> row) & 1, (y >> row) & 1)) out |= std::uint8_t(1u << row);
  }
  return out;
}

inline RefFn uniform(std::uint8_t tt, int m) { return RefFn(static_cast<std::size_t>(m), tt); }

inline std::uint64_t ref_key(const RefFn& f) {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < f.size(); ++k) key |= std::uint64_t{f[k]} << (4 * k);
  return key;
}

// Plain fixpoint: apply every gate to every ordered pair with at least one
// member found in the previous round, until nothing new appears.
inline std::set<RefFn> reference_closure(const std::vector<std::vector<BaseGate>>& gates, std::set<RefFn> seeds) {
  const std::size_t m = seeds.empty() ? 0 : seeds.begin()->size();
  std::vector<char> member(std::size_t{1} << (4 * m), 0);
  std::vector<RefFn> all;
  for (const auto& s : seeds) {
    member[ref_key(s)] = 1;
    all.push_back(s);
  }
  std::size_t old_end = 0;
  while (old_end < all.size()) {
    const std::size_t end = all.size();
    for (std::size_t i = 0; i < end; ++i) {
      for (std::size_t j = 0; j < end; ++j) {
        if (i < old_end && j < old_end) continue;
        for (const auto& g : gates) {
          RefFn v(m);
          for (std::size_t k = 0; k < m; ++k) v[k] = ref_apply(g[k], all[i][k], all[j][k]);
          if (member[ref_key(v)] != 0) continue;
          member[ref_key(v)] = 1;
          all.push_back(v);
        }
      }
    }
    old_end = end;
  }
  return std::set<RefFn>(all.begin(), all.end());
}

inline std::set<RefFn> reference_closure(const polygate::PolyGateSet& set, bool constants) {
  const int m = set.mode_count();
  std::set<RefFn> seeds = {uniform(0xC, m), uniform(0xA, m)};
  if (constants) {
    seeds.insert(uniform(0x0, m));
    seeds.insert(uniform(0xF, m));
  }
  std::vector<std::vector<BaseGate>> gates;
  for (const auto& g : set.gates()) gates.push_back(g.modes);
  return reference_closure(gates, seeds);
}

inline bool ref_can_build_not(const std::set<RefFn>& closure, int m) {
  return closure.count(uniform(0x3, m)) != 0 || closure.count(uniform(0x5, m)) != 0;
}

// Random single-output circuit over inputs a, b in which every gate pin is
// fed by an input, an earlier node, or `constant` (never the other
// constant), with both inputs reaching the output.
inline polygate::Netlist random_cone_circuit(std::mt19937& rng, bool constant, int max_depth) {
  using polygate::Operand;
  std::uniform_int_distribution<int> gate_pick(0, 15);
  std::uniform_int_distribution<int> size_pick(1, 12);
  while (true) {
    polygate::Netlist c({"a", "b"}, 1);
    const int n = size_pick(rng);
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> op_pick(0, 2 + i);
      auto operand = [&] {
        const int r = op_pick(rng);
        if (r == 0) return Operand::input(0);
        if (r == 1) return Operand::input(1);
        if (r == 2) return Operand::constant(constant);
        return Operand::node(r - 3);
      };
      const Operand x = operand();
      const Operand y = operand();
      c.add_node(polygate::PolyGate{polygate::from_truth_table(static_cast<std::uint8_t>(gate_pick(rng)))}, x, y);
    }
    c.set_output(Operand::node(n - 1));
    if (polygate::depth(c) > max_depth) continue;
    // cone membership: walk back from the output
    std::vector<char> live(static_cast<std::size_t>(n), 0);
    live.back() = 1;
    bool reach_a = false;
    bool reach_b = false;
    for (int i = n - 1; i >= 0; --i) {
      if (!live[static_cast<std::size_t>(i)]) continue;
      const auto& node = c.nodes()[static_cast<std::size_t>(i)];
      for (const Operand op : {node.in_a, node.in_b}) {
        if (op.kind == Operand::Kind::node) live[static_cast<std::size_t>(op.index)] = 1;
        if (op.kind == Operand::Kind::input) (op.index == 0 ? reach_a : reach_b) = true;
      }
    }
    if (reach_a && reach_b) return c;
  }
}

}  // namespace testing_support
