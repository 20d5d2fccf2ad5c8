// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polygate/error.hpp"
#include "polygate/judge.hpp"
#include "polygate/oracle.hpp"
#include "polygate/synthesis.hpp"
#include "support.hpp"

using namespace polygate;

namespace {

const char* const kReferenceSets[] = {"NAND/NOR", "AND/NOTA, NOTA/OR", "NOR/XOR, XOR/NAND", "AND/NOR, NAND/OR",
                                 "NAND/NOR/ANDNA, OR/ANDNB/XOR"};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Result of one criterion: ok plus a short detail line.
struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (ok) detail << "first failure: " << why << "; ";
    ok = false;
  }
};

std::uint64_t cell_table(Target t) {
  switch (t) {
    case Target::AND:
      return 0x8;
    case Target::OR:
      return 0xE;
    case Target::NOT:
      return 0x1;  // one input: row a=0 is 1
  }
  return 0;
}

// Exhaustive per-mode simulation, independent of verify_cell.
bool simulates_to(const Netlist& n, Target t, int m) {
  const int want_inputs = t == Target::NOT ? 1 : 2;
  if (n.input_count() != want_inputs) return false;
  for (const auto table : truth_tables(n, m)) {
    if (table != cell_table(t)) return false;
  }
  return true;
}

bool check_cells(const CellWitnesses& w, int m) {
  return simulates_to(w.and_cell, Target::AND, m) && simulates_to(w.or_cell, Target::OR, m) &&
         simulates_to(w.not_cell, Target::NOT, m);
}

Strength oracle_strength(const PolyGateSet& set) {
  auto all_three = [&](ConstantsPolicy p) {
    const auto atlas = close(set, p);
    return oracle_can_build(atlas, Target::AND) && oracle_can_build(atlas, Target::OR) &&
           oracle_can_build(atlas, Target::NOT);
  };
  if (all_three(ConstantsPolicy::forbid)) return Strength::strong;
  if (all_three(ConstantsPolicy::allow)) return Strength::weak;
  return Strength::incomplete;
}

std::vector<PolyGateSet> single_gate_sets() {
  std::vector<PolyGateSet> out;
  for (const auto g1 : all_base_gates()) {
    for (const auto g2 : all_base_gates()) {
      if (g1 != g2) out.push_back(validate_gate_set({PolyGate{g1, g2}}));
    }
  }
  return out;
}

void c1_reference_sets(Verdict& o) {
  for (const char* text : kReferenceSets) {
    const auto set = parse_gate_set(text);
    const auto start = std::chrono::steady_clock::now();
    const auto v = is_complete(set);
    const double t = seconds_since(start);
    const double limit = set.mode_count() == 2 ? 1.0 : 60.0;
    o.detail << "{" << text << "} " << t << "s; ";
    if (!v.complete) o.fail(std::string(text) + " incomplete");
    if (t >= limit) o.fail(std::string(text) + " too slow");
  }
}

void c2_definition2(Verdict& o) {
  try {
    parse_gate_set("AND/NAND/AND, NOTA/OR/NOTA");
    o.fail("accepted");
  } catch (const GateSetError& e) {
    o.detail << e.what();
    if (e.kind() != GateSetError::Kind::indistinguishable_modes || e.mode_i() != 1 || e.mode_j() != 3) {
      o.fail("wrong error");
    }
  }
}

void c3_oracle_equivalence(Verdict& o) {
  const auto start = std::chrono::steady_clock::now();
  int compared = 0;
  int mismatches = 0;
  for (const auto& set : single_gate_sets()) {
    for (const auto policy : {ConstantsPolicy::allow, ConstantsPolicy::forbid}) {
      const auto atlas = close(set, policy);
      for (const Target t : {Target::AND, Target::OR, Target::NOT}) {
        ++compared;
        if (judge(set, t, policy).buildable != oracle_can_build(atlas, t)) {
          ++mismatches;
          o.fail(set.to_string() + " " + std::string(to_string(t)) + " " + std::string(to_string(policy)));
        }
      }
    }
  }
  const double t = seconds_since(start);
  o.detail << compared << " comparisons, " << mismatches << " mismatches, " << t << "s";
  if (compared != 1440) o.fail("comparison count");
  if (t >= 300) o.fail("too slow");
}

void c4_witness_validity(Verdict& o) {
  int verified = 0;
  for (const char* text : kReferenceSets) {
    const auto set = parse_gate_set(text);
    const auto v = is_complete(set);
    if (!v.witnesses || !check_cells(*v.witnesses, set.mode_count())) {
      o.fail(text);
      continue;
    }
    ++verified;
  }
  int atlas_complete = 0;
  for (const auto& set : single_gate_sets()) {
    const auto v = is_complete(set);
    if (!v.complete) continue;
    ++atlas_complete;
    if (!v.witnesses || !check_cells(*v.witnesses, 2)) {
      o.fail(set.to_string());
      continue;
    }
    ++verified;
  }
  o.detail << verified << " witness triples verified (" << atlas_complete << " complete single-gate sets)";
}

void c5_substitution(Verdict& o) {
  std::mt19937 rng(2024);
  int and_ok = 0;
  int or_ok = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    const Netlist c = testing_support::random_cone_circuit(rng, true, 8);
    std::map<PolyGate, PolyGate> to_and;
    for (const auto& n : c.nodes()) to_and[n.gate] = PolyGate{BaseGate::AND};
    if (truth_tables(substitute(c, to_and)).front() == 0x8) ++and_ok;
  }
  for (int i = 0; i < trials; ++i) {
    const Netlist c = testing_support::random_cone_circuit(rng, false, 8);
    std::map<PolyGate, PolyGate> to_or;
    for (const auto& n : c.nodes()) to_or[n.gate] = PolyGate{BaseGate::OR};
    if (truth_tables(substitute(c, to_or)).front() == 0xE) ++or_ok;
  }
  o.detail << "AND " << and_ok << "/" << trials << ", OR " << or_ok << "/" << trials;
  if (and_ok != trials || or_ok != trials) o.fail("substitution mismatch");
}

void c6_selector_tree(Verdict& o) {
  for (const char* text : kReferenceSets) {
    const auto set = parse_gate_set(text);
    const int m = set.mode_count();
    const auto v = is_complete(set);
    const Netlist tree = build_selector_tree(set, *v.witnesses);
    int checked = 0;
    for (int mode = 1; mode <= m; ++mode) {
      for (int r = 0; r < (1 << m); ++r) {
        bool in[8] = {};
        for (int i = 0; i < m; ++i) in[i] = (r >> i) & 1;
        if (simulate(tree, mode, std::span<const bool>(in, static_cast<std::size_t>(m))) != in[mode - 1]) {
          o.fail(std::string(text) + " mode " + std::to_string(mode));
        }
        ++checked;
      }
    }
    o.detail << "{" << text << "} m=" << m << " " << checked << " cases; ";
  }
}

void c7_synthesis_sweep(Verdict& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto set = parse_gate_set("NAND/NOR");
  const auto cells = *is_complete(set).witnesses;
  int passed = 0;
  for (std::uint64_t t1 = 0; t1 < 16; ++t1) {
    for (std::uint64_t t2 = 0; t2 < 16; ++t2) {
      const Netlist n = synthesize(set, PolyTarget{2, {t1, t2}}, cells);
      // Simulate every assignment in every mode.
      bool ok = true;
      for (int mode = 1; mode <= 2; ++mode) {
        const std::uint64_t want = mode == 1 ? t1 : t2;
        for (int r = 0; r < 4; ++r) {
          const bool in[] = {(r & 2) != 0, (r & 1) != 0};
          ok &= simulate(n, mode, in) == (((want >> r) & 1) != 0);
        }
      }
      if (ok) {
        ++passed;
      } else {
        o.fail("target " + std::to_string(t1) + "/" + std::to_string(t2));
      }
    }
  }
  const double t = seconds_since(start);
  o.detail << passed << "/256 verified, " << t << "s";
  if (t >= 120) o.fail("too slow");
}

void c8_instrumentation(Verdict& o) {
  for (const char* text : kReferenceSets) {
    const auto set = parse_gate_set(text);
    const int m = set.mode_count();
    const long double bound = pool_power_bound(m);
    long double total = 0;
    for (const auto& s : is_complete(set).searches) {
      const long double p = s.counters.total_pool_power();
      total += p;
      if (p > bound) o.fail(std::string(text) + " search over bound");
      for (const auto& call : s.counters.calls) {
        if (static_cast<long double>(call.max_pool) > pool_size_bound(m, call.level)) {
          o.fail(std::string(text) + " pass pool over pool_size_bound");
        }
      }
    }
    o.detail << "{" << text << "} " << static_cast<double>(total) << " <= " << static_cast<double>(bound) << "; ";
  }
}

void c9_strength(Verdict& o) {
  for (const char* text : kReferenceSets) {
    const auto set = parse_gate_set(text);
    const auto v = is_complete(set);
    const auto strict = is_complete(set, {ConstantsPolicy::forbid, false, KernelMode::parallel});
    const Strength truth = oracle_strength(set);
    o.detail << "{" << text << "} " << to_string(v.strength) << " (oracle " << to_string(truth) << "); ";
    if (v.strength != truth) o.fail(std::string(text) + " disagrees with oracle");
    if (v.strength == Strength::strong) {
      if (!strict.complete || !strict.witnesses || !check_cells(*strict.witnesses, set.mode_count())) {
        o.fail(std::string(text) + " strong but constant-free run failed");
      }
      if (v.witnesses->and_cell.uses_constants() || v.witnesses->or_cell.uses_constants() ||
          v.witnesses->not_cell.uses_constants()) {
        o.fail(std::string(text) + " strong witness uses constants");
      }
    } else if (v.strength == Strength::weak) {
      bool some_cell_failed = false;
      for (const auto& s : strict.searches) some_cell_failed |= !s.found;
      if (strict.complete || !some_cell_failed) o.fail(std::string(text) + " weak but constant-free run succeeded");
    }
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Verdict&)>> criteria[] = {
      {"reference sets are complete within time limits", c1_reference_sets},
      {"indistinguishable modes are rejected", c2_definition2},
      {"judge equals oracle on all single-gate 2-mode sets", c3_oracle_equivalence},
      {"witnesses simulate to their cells", c4_witness_validity},
      {"all-AND / all-OR substitution properties", c5_substitution},
      {"selector tree routing", c6_selector_tree},
      {"synthesis of all 256 targets from NAND/NOR", c7_synthesis_sweep},
      {"counters stay below the analytic bound", c8_instrumentation},
      {"strong/weak classification is self-consistent", c9_strength},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [title, run] : criteria) {
    ++index;
    Verdict o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.ok) ++failed;
    std::printf("%s %d %s: %s\n", o.ok ? "PASS" : "FAIL", index, title, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
