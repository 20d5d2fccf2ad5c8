#include "polygate/oracle.hpp"

#include <algorithm>
#include <array>

#include "polygate/error.hpp"

namespace polygate {

namespace {

// table[g][x][y] = the 4-bit table of g(x(a,b), y(a,b)), built row by row
// from eval_base so it stays independent of the closure kernel's masks.
using ComposeTable = std::array<std::array<std::array<std::uint8_t, 16>, 16>, 16>;

const ComposeTable& compose_table() {
  static const ComposeTable table = [] {
    ComposeTable t{};
    for (int g = 0; g < 16; ++g) {
      for (int x = 0; x < 16; ++x) {
        for (int y = 0; y < 16; ++y) {
          std::uint8_t out = 0;
          for (int row = 0; row < 4; ++row) {
            const bool xa = (x >> row) & 1;
            const bool yb = (y >> row) & 1;
            if (eval_base(from_truth_table(static_cast<std::uint8_t>(g)), xa, yb)) out |= std::uint8_t(1u << row);
          }
          t[g][x][y] = out;
        }
      }
    }
    return t;
  }();
  return table;
}

std::uint64_t apply_modewise(const PolyGate& g, std::uint64_t x, std::uint64_t y) {
  const ComposeTable& t = compose_table();
  std::uint64_t out = 0;
  for (int k = 0; k < g.mode_count(); ++k) {
    const auto gk = truth_table(g.modes[static_cast<std::size_t>(k)]);
    const auto xk = packed::nibble(x, k);
    const auto yk = packed::nibble(y, k);
    out |= std::uint64_t{t[gk][xk][yk]} << (4 * k);
  }
  return out;
}

struct Frontier {
  std::vector<std::uint64_t> found;  // discovery order
  std::vector<std::uint8_t> member;
};

// New functions from applying every gate to every ordered pair with at
// least one operand at index >= fresh. Output is in (x, y, gate) order.
std::vector<std::uint64_t> expand_serial(const PolyGateSet& gates, const Frontier& f, std::size_t fresh) {
  std::vector<std::uint64_t> out;
  std::vector<std::uint8_t> taken(f.member.size(), 0);
  const std::size_t n = f.found.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = (x >= fresh ? 0 : fresh); y < n; ++y) {
      for (const auto& g : gates.gates()) {
        const std::uint64_t v = apply_modewise(g, f.found[x], f.found[y]);
        if (f.member[v] != 0 || taken[v] != 0) continue;
        taken[v] = 1;
        out.push_back(v);
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> expand_parallel(const PolyGateSet& gates, const Frontier& f, std::size_t fresh) {
  const std::size_t n = f.found.size();
  std::vector<std::vector<std::uint64_t>> per_x(n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> stamp(f.member.size(), 0);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t sx = 0; sx < static_cast<std::ptrdiff_t>(n); ++sx) {
      const auto x = static_cast<std::size_t>(sx);
      const auto tag = static_cast<std::uint32_t>(x + 1);
      for (std::size_t y = (x >= fresh ? 0 : fresh); y < n; ++y) {
        for (const auto& g : gates.gates()) {
          const std::uint64_t v = apply_modewise(g, f.found[x], f.found[y]);
          if (f.member[v] != 0 || stamp[v] == tag) continue;
          stamp[v] = tag;
          per_x[x].push_back(v);
        }
      }
    }
  }
  std::vector<std::uint64_t> out;
  std::vector<std::uint8_t> taken(f.member.size(), 0);
  for (const auto& local : per_x) {
    for (const std::uint64_t v : local) {
      if (taken[v] != 0) continue;
      taken[v] = 1;
      out.push_back(v);
    }
  }
  return out;
}

Frontier seed(int m, ConstantsPolicy policy) {
  Frontier f;
  f.member.assign(std::size_t{1} << (4 * m), 0);
  auto add = [&](std::uint64_t v) {
    if (f.member[v] != 0) return;
    f.member[v] = 1;
    f.found.push_back(v);
  };
  add(packed::broadcast(truth_table(BaseGate::WIREA), m));
  add(packed::broadcast(truth_table(BaseGate::WIREB), m));
  if (policy == ConstantsPolicy::allow) {
    add(0);
    add(packed::mode_mask(m));
  }
  return f;
}

}  // namespace

bool ClosureAtlas::contains(const PolyFunction& f) const {
  const PolyFunction b = f.as_binary();
  return std::find(reachable.begin(), reachable.end(), b) != reachable.end();
}

ClosureAtlas close(const PolyGateSet& gates, ConstantsPolicy policy, KernelMode mode) {
  const int m = gates.mode_count();
  check_mode_cap(m);
  Frontier f = seed(m, policy);
  ClosureAtlas atlas;
  atlas.modes = m;
  atlas.policy = policy;

  std::size_t fresh = 0;
  while (true) {
    const std::vector<std::uint64_t> added =
        mode == KernelMode::serial ? expand_serial(gates, f, fresh) : expand_parallel(gates, f, fresh);
    ++atlas.rounds;
    fresh = f.found.size();
    if (added.empty()) break;
    for (const std::uint64_t v : added) {
      f.member[v] = 1;
      f.found.push_back(v);
    }
  }
  atlas.reachable.reserve(f.found.size());
  for (const std::uint64_t v : f.found) atlas.reachable.push_back(PolyFunction::binary(v, m));
  return atlas;
}

std::vector<PolyFunction> close_step(const PolyGateSet& gates, const ClosureAtlas& atlas) {
  Frontier f;
  f.member.assign(std::size_t{1} << (4 * atlas.modes), 0);
  for (const auto& p : atlas.reachable) {
    f.member[p.bits()] = 1;
    f.found.push_back(p.bits());
  }
  std::vector<PolyFunction> out;
  for (const std::uint64_t v : expand_serial(gates, f, 0)) out.push_back(PolyFunction::binary(v, atlas.modes));
  return out;
}

bool oracle_can_build(const ClosureAtlas& atlas, Target target) {
  const int m = atlas.modes;
  switch (target) {
    case Target::AND:
      return atlas.contains(PolyFunction::uniform(BaseGate::AND, m));
    case Target::OR:
      return atlas.contains(PolyFunction::uniform(BaseGate::OR, m));
    case Target::NOT:
      return atlas.contains(PolyFunction::uniform(BaseGate::NOTA, m)) ||
             atlas.contains(PolyFunction::uniform(BaseGate::NOTB, m));
  }
  return false;
}

bool oracle_can_build(const PolyGateSet& gates, Target target, ConstantsPolicy policy) {
  return oracle_can_build(close(gates, policy), target);
}

std::string dump(const ClosureAtlas& atlas) {
  std::vector<std::string> lines;
  lines.reserve(atlas.reachable.size());
  for (const auto& f : atlas.reachable) lines.push_back(f.to_string());
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + '\n';
  return out;
}

}  // namespace polygate
