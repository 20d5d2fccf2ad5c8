#include "polygate/judge.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "polygate/error.hpp"

namespace polygate {

std::uint64_t JudgeCounters::total_evaluations() const {
  std::uint64_t sum = 0;
  for (const auto& c : calls) sum += c.evaluations;
  return sum;
}

std::uint64_t JudgeCounters::total_loops() const {
  std::uint64_t sum = 0;
  for (const auto& c : calls) sum += static_cast<std::uint64_t>(c.loops);
  return sum;
}

long double JudgeCounters::total_pool_power() const {
  long double sum = 0;
  for (const auto& c : calls) sum += c.pool_power_sum;
  return sum;
}

long double pool_size_bound(int modes, int level) {
  return std::pow(4.0L, static_cast<long double>(level - 1)) *
             std::pow(16.0L, static_cast<long double>(modes - level + 1)) +
         2;
}

long double pool_power_bound(int modes) {
  long double total = 0;
  for (int d = modes; d >= 1; --d) {
    const long double c = pool_size_bound(modes, d);
    // 1^3 + ... + c^3 = (c(c+1)/2)^2
    const long double half = c * (c + 1) / 2;
    total = half * half + std::pow(16.0L, static_cast<long double>(modes - d)) * total;
  }
  return total;
}

JudgeResult judge(const PolyGateSet& gates, Target target, ConstantsPolicy policy, KernelMode mode) {
  const int m = gates.mode_count();
  check_mode_cap(m);

  JudgeResult result;
  result.counters.modes = m;
  result.counters.calls_per_level.assign(static_cast<std::size_t>(m), 0);

  std::vector<DerivedGate> members;
  members.reserve(gates.size());
  for (const auto& g : gates.gates()) members.push_back(DerivedGate::from_member(g));

  // stack.back() is the level under construction; the entries below it are
  // the suspended parent levels, kept so their search resumes where it
  // stopped.
  std::vector<ClosureState> stack;
  stack.emplace_back(std::move(members), target, 1, m, policy);

  auto record = [&](const ClosureState& st) {
    result.counters.calls.push_back(st.calls().back());
    ++result.counters.calls_per_level[static_cast<std::size_t>(st.level() - 1)];
  };

  while (true) {
    ClosureState& st = stack.back();
    const Outcome outcome = construct(st, mode);
    record(st);
    const int d = st.level();
    if (outcome == Outcome::found) {
      if (d == m) {
        result.buildable = true;
        result.witness = st.found().front();
        return result;
      }
      std::vector<DerivedGate> next = st.found();
      stack.emplace_back(std::move(next), target, d + 1, m, policy);
      continue;
    }
    if (d == 1) return result;
    stack.pop_back();
  }
}

std::string_view to_string(Strength s) {
  switch (s) {
    case Strength::strong:
      return "strong";
    case Strength::weak:
      return "weak";
    case Strength::incomplete:
      return "incomplete";
  }
  return "?";
}

Netlist de_morgan_or(const Netlist& not_cell, const Netlist& and_cell) {
  NetlistBuilder b({"a", "b"}, and_cell.mode_count());
  const Operand a[1] = {Operand::input(0)};
  const Operand bb[1] = {Operand::input(1)};
  const Operand na = b.splice(not_cell, a);
  const Operand nb = b.splice(not_cell, bb);
  const Operand both[2] = {na, nb};
  const Operand conj = b.splice(and_cell, both);
  const Operand out[1] = {conj};
  return std::move(b).finish(b.splice(not_cell, out));
}

Netlist de_morgan_and(const Netlist& not_cell, const Netlist& or_cell) { return de_morgan_or(not_cell, or_cell); }

bool verify_cell(const Netlist& cell, Target target, int modes) {
  const int k = target == Target::NOT ? 1 : 2;
  if (cell.input_count() != k) return false;
  if (cell.mode_count() != 0 && cell.mode_count() != modes) return false;
  const auto tables = truth_tables(cell, modes);
  // Row order: first input most significant.
  const std::uint64_t expected = target == Target::AND ? 0x8 : target == Target::OR ? 0xE : 0x1;
  for (const auto t : tables) {
    if (t != expected) return false;
  }
  return true;
}

namespace {

struct CellRun {
  std::vector<CellSearch> searches;
  std::optional<Netlist> not_cell;
  std::optional<Netlist> and_cell;
  std::optional<Netlist> or_cell;

  bool complete() const { return not_cell && and_cell && or_cell; }
};

CellRun run_cells(const PolyGateSet& gates, ConstantsPolicy policy, const CompletenessOptions& options) {
  CellRun run;
  auto search = [&](Target t) -> std::optional<Netlist> {
    JudgeResult r = judge(gates, t, policy, options.kernel);
    run.searches.push_back({t, policy, r.buildable, false, std::move(r.counters)});
    if (!r.buildable) return std::nullopt;
    return expand(*r.witness);
  };

  run.not_cell = search(Target::NOT);
  if (!run.not_cell && !options.independent_searches) return run;
  run.and_cell = search(Target::AND);
  if (options.independent_searches) {
    run.or_cell = search(Target::OR);
    return run;
  }
  if (run.and_cell) {
    run.or_cell = de_morgan_or(*run.not_cell, *run.and_cell);
    run.searches.push_back({Target::OR, policy, true, true, {}});
  }
  return run;
}

}  // namespace

CompletenessVerdict is_complete(const PolyGateSet& gates, const CompletenessOptions& options) {
  check_mode_cap(gates.mode_count());
  CompletenessVerdict verdict;

  auto accept = [&](CellRun& run, Strength strength) {
    verdict.complete = true;
    verdict.strength = strength;
    verdict.witnesses = CellWitnesses{std::move(*run.and_cell), std::move(*run.or_cell), std::move(*run.not_cell)};
  };
  auto keep_searches = [&](CellRun& run) {
    for (auto& s : run.searches) verdict.searches.push_back(std::move(s));
  };

  CellRun strong = run_cells(gates, ConstantsPolicy::forbid, options);
  keep_searches(strong);
  if (strong.complete()) {
    accept(strong, Strength::strong);
    return verdict;
  }
  if (options.policy == ConstantsPolicy::forbid) return verdict;

  CellRun weak = run_cells(gates, ConstantsPolicy::allow, options);
  keep_searches(weak);
  if (weak.complete()) accept(weak, Strength::weak);
  return verdict;
}

}  // namespace polygate
