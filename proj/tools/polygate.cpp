// polygate: completeness checks, cell witnesses, synthesis and atlas
// reports for polymorphic gate sets.
//
// Exit codes: 0 success (complete / buildable / verified), 1 incomplete
// or verification failure, 2 usage, parse or validation error.

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polygate/error.hpp"
#include "polygate/judge.hpp"
#include "polygate/oracle.hpp"
#include "polygate/synthesis.hpp"

using namespace polygate;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::optional<Target> parse_target_cell(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::toupper(c); });
  if (text == "AND") return Target::AND;
  if (text == "OR") return Target::OR;
  if (text == "NOT") return Target::NOT;
  return std::nullopt;
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << "0x" << std::uppercase << std::hex << v;
  return s.str();
}

json counters_json(const JudgeCounters& c) {
  return {{"modes", c.modes},
          {"calls_per_level", c.calls_per_level},
          {"evaluations", c.total_evaluations()},
          {"loops", c.total_loops()},
          {"pool_power", static_cast<double>(c.total_pool_power())}};
}

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit_netlist(const Netlist& n, bool as_json, json meta) {
  if (!as_json) {
    std::cout << serialize(n);
    return;
  }
  meta["netlist"] = serialize(n);
  meta["gates"] = n.nodes().size();
  meta["depth"] = depth(n);
  std::cout << meta.dump() << "\n";
}

// ---- check ----

int cmd_check(const std::string& text, bool no_constants, bool independent) {
  const PolyGateSet set = parse_gate_set(text);
  const CompletenessOptions options{no_constants ? ConstantsPolicy::forbid : ConstantsPolicy::allow, independent,
                                    KernelMode::parallel};
  const auto start = std::chrono::steady_clock::now();
  const CompletenessVerdict v = is_complete(set, options);
  const double millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json searches = json::array();
  for (const auto& s : v.searches) {
    searches.push_back({{"cell", to_string(s.target)},
                        {"constants", to_string(s.policy)},
                        {"found", s.found},
                        {"de_morgan", s.by_de_morgan},
                        {"counters", counters_json(s.counters)}});
  }
  json out = {{"gate_set", set.to_string()},
              {"modes", set.mode_count()},
              {"verdict", v.complete ? "complete" : "incomplete"},
              {"strength", to_string(v.strength)},
              {"millis", millis},
              {"pool_power_bound", static_cast<double>(pool_power_bound(set.mode_count()))},
              {"searches", searches}};
  std::cout << out.dump() << "\n";
  return v.complete ? kExitOk : kExitNegative;
}

// ---- witness ----

int cmd_witness(const std::string& text, const std::string& cell, bool no_constants, bool as_json) {
  const PolyGateSet set = parse_gate_set(text);
  const auto target = parse_target_cell(cell);
  if (!target) throw ParseError("unknown cell '" + cell + "' (expected AND, OR or NOT)");
  // Prefer a constant-free witness even when constants are allowed.
  JudgeResult r = judge(set, *target, ConstantsPolicy::forbid);
  if (!r.buildable && !no_constants) r = judge(set, *target, ConstantsPolicy::allow);
  if (!r.buildable) {
    std::cerr << "polygate: " << to_string(*target) << " cell is not buildable from " << set.to_string() << "\n";
    return kExitNegative;
  }
  const Netlist n = expand(*r.witness);
  if (!verify_cell(n, *target, set.mode_count())) throw Error("internal: witness failed verification");
  emit_netlist(n, as_json,
               {{"gate_set", set.to_string()}, {"cell", to_string(*target)}, {"function", r.witness->function.to_string()}});
  return kExitOk;
}

// ---- synthesize ----

int cmd_synthesize(const std::string& text, const std::string& target_text, std::optional<int> inputs,
                   bool no_constants, bool as_json) {
  const PolyGateSet set = parse_gate_set(text);
  const PolyTarget target = parse_target(target_text, inputs);
  const CompletenessVerdict v =
      is_complete(set, {no_constants ? ConstantsPolicy::forbid : ConstantsPolicy::allow, false, KernelMode::parallel});
  if (!v.complete) {
    std::cerr << "polygate: " << set.to_string() << " is not complete\n";
    return kExitNegative;
  }
  const Netlist n = synthesize(set, target, *v.witnesses);
  json tables = json::array();
  for (const auto t : target.tables) tables.push_back(hex(t));
  emit_netlist(n, as_json, {{"gate_set", set.to_string()}, {"inputs", target.inputs}, {"tables", tables}});
  return kExitOk;
}

// ---- simulate ----

int cmd_simulate(const std::string& path, std::optional<int> modes, const std::string& cell) {
  const Netlist n = parse_netlist(read_all(path));
  const int m = modes ? *modes : std::max(1, n.mode_count());
  if (n.mode_count() != 0 && n.mode_count() != m) {
    throw ModeError("netlist has " + std::to_string(n.mode_count()) + " modes, not " + std::to_string(m));
  }
  const auto tables = truth_tables(n, m);
  json out = {{"inputs", n.inputs()}, {"modes", m}, {"depth", depth(n)}};
  out["tables"] = json::array();
  for (const auto t : tables) out["tables"].push_back(hex(t));
  if (n.input_count() >= 1 && n.input_count() <= 2) out["function"] = truth_table_per_mode(n, m).to_string();

  int code = kExitOk;
  if (!cell.empty()) {
    const auto target = parse_target_cell(cell);
    if (!target) throw ParseError("unknown cell '" + cell + "' (expected AND, OR or NOT)");
    const bool ok = verify_cell(n, *target, m);
    out["cell"] = to_string(*target);
    out["verified"] = ok;
    if (!ok) code = kExitNegative;
  }
  std::cout << out.dump() << "\n";
  return code;
}

// ---- atlas ----

struct AtlasRow {
  std::string gate_set;
  bool valid = false;
  bool complete = false;
  Strength strength = Strength::incomplete;
  double judge_millis = 0;
  bool oracle_agrees = false;
};

std::vector<PolyGate> all_poly_gates(int m) {
  std::vector<PolyGate> out;
  const int count = 1 << (4 * m);
  for (int code = 0; code < count; ++code) {
    std::vector<BaseGate> modes;
    for (int k = 0; k < m; ++k) modes.push_back(from_truth_table(static_cast<std::uint8_t>(code >> (4 * k))));
    out.emplace_back(modes);
  }
  return out;
}

// Smallest member list over all mode permutations and member orders.
std::vector<PolyGate> canonical_form(const std::vector<PolyGate>& gates, int m) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<PolyGate>> best;
  do {
    std::vector<PolyGate> permuted;
    for (const auto& g : gates) {
      std::vector<BaseGate> modes;
      for (const int k : perm) modes.push_back(g.modes[static_cast<std::size_t>(k)]);
      permuted.emplace_back(modes);
    }
    std::sort(permuted.begin(), permuted.end());
    if (!best || permuted < *best) best = permuted;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

std::vector<std::vector<PolyGate>> enumerate_sets(int m, int size, bool canonical) {
  const auto singles = all_poly_gates(m);
  std::vector<std::vector<PolyGate>> out;
  if (size == 1) {
    for (const auto& g : singles) out.push_back({g});
  } else {
    for (std::size_t i = 0; i < singles.size(); ++i) {
      for (std::size_t j = 0; j < singles.size(); ++j) {
        if (i != j) out.push_back({singles[i], singles[j]});
      }
    }
  }
  if (!canonical) return out;
  std::set<std::vector<PolyGate>> seen;
  std::vector<std::vector<PolyGate>> unique;
  for (const auto& s : out) {
    if (seen.insert(canonical_form(s, m)).second) unique.push_back(s);
  }
  return unique;
}

std::string list_string(const std::vector<PolyGate>& gates) {
  std::string out;
  for (const auto& g : gates) {
    if (!out.empty()) out += ", ";
    out += g.to_string();
  }
  return out;
}

AtlasRow atlas_row(const std::vector<PolyGate>& gates, ConstantsPolicy policy) {
  AtlasRow row;
  row.gate_set = list_string(gates);
  std::optional<PolyGateSet> set;
  try {
    set = validate_gate_set(gates);
  } catch (const GateSetError&) {
    return row;
  }
  row.valid = true;

  const auto start = std::chrono::steady_clock::now();
  const auto v = is_complete(*set, {policy, false, KernelMode::serial});
  row.judge_millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.complete = v.complete;
  row.strength = v.strength;

  auto all_three = [&](ConstantsPolicy p) {
    const auto atlas = close(*set, p, KernelMode::serial);
    return oracle_can_build(atlas, Target::AND) && oracle_can_build(atlas, Target::OR) &&
           oracle_can_build(atlas, Target::NOT);
  };
  Strength expected = Strength::incomplete;
  if (all_three(ConstantsPolicy::forbid)) {
    expected = Strength::strong;
  } else if (policy == ConstantsPolicy::allow && all_three(ConstantsPolicy::allow)) {
    expected = Strength::weak;
  }
  row.oracle_agrees = expected == v.strength;
  return row;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_atlas(int modes, int size, const std::string& out_path, bool canonical, bool include_invalid,
              bool no_constants, int jobs) {
  if (modes < 2 || modes > 3) throw ModeError("atlas supports 2 or 3 modes");
  if (size < 1 || size > 2) throw ModeError("atlas supports sets of 1 or 2 gates");
  const auto sets = enumerate_sets(modes, size, canonical);
  const auto policy = no_constants ? ConstantsPolicy::forbid : ConstantsPolicy::allow;

  std::vector<AtlasRow> rows(sets.size());
  if (jobs > 0) omp_set_num_threads(jobs);
  const auto n = static_cast<std::int64_t>(sets.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = atlas_row(sets[static_cast<std::size_t>(i)], policy);

  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) throw Error("cannot write '" + out_path + "'");
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  out << "gate_set,valid,complete,strength,judge_millis,oracle_agrees\n";
  int disagreements = 0;
  int emitted = 0;
  for (const auto& r : rows) {
    if (!r.valid && !include_invalid) continue;
    ++emitted;
    out << csv_field(r.gate_set) << ',' << (r.valid ? "true" : "false") << ',';
    if (!r.valid) {
      out << ",,,\n";
      continue;
    }
    out << (r.complete ? "true" : "false") << ',' << to_string(r.strength) << ',' << r.judge_millis << ','
        << (r.oracle_agrees ? "true" : "false") << '\n';
    if (!r.oracle_agrees) ++disagreements;
  }
  std::cerr << "polygate: " << emitted << " rows, " << disagreements << " disagreements\n";
  return disagreements == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional completeness of polymorphic gate sets"};
  app.require_subcommand(1);

  std::string set_text;
  std::string cell;
  std::string target;
  std::string out_path;
  std::string netlist_path = "-";
  bool no_constants = false;
  bool as_json = false;
  bool independent = false;
  bool canonical = false;
  bool include_invalid = false;
  int modes = 2;
  int size = 1;
  int jobs = 0;
  std::optional<int> inputs;
  std::optional<int> sim_modes;

  auto* check = app.add_subcommand("check", "Decide completeness and classify strong/weak");
  check->add_option("gate_set", set_text, "e.g. \"NAND/NOR, OR/ANDNB\"")->required();
  check->add_flag("--no-constants", no_constants, "Only constant-free constructions count (strong completeness)");
  check->add_flag("--independent", independent, "Search the OR cell directly instead of by De Morgan");

  auto* witness = app.add_subcommand("witness", "Print a netlist for one cell");
  witness->add_option("gate_set", set_text)->required();
  witness->add_option("--cell", cell, "AND, OR or NOT")->required();
  witness->add_flag("--no-constants", no_constants);
  witness->add_flag("--json", as_json, "Wrap the netlist in a JSON object");

  auto* synth = app.add_subcommand("synthesize", "Build a polymorphic function from a complete set");
  synth->add_option("gate_set", set_text)->required();
  synth->add_option("--target", target, "Per-mode gate names (AND/OR) or hex tables (0xE8/0x96)")->required();
  synth->add_option("--inputs", inputs, "Input count for hex targets");
  synth->add_flag("--no-constants", no_constants);
  synth->add_flag("--json", as_json);

  auto* sim = app.add_subcommand("simulate", "Print the per-mode truth tables of a netlist");
  sim->add_option("netlist", netlist_path, "Netlist file, - for stdin");
  sim->add_option("--modes", sim_modes, "Mode count for gate-free netlists");
  sim->add_option("--cell", cell, "Exit 1 unless the netlist behaves as this cell in every mode");

  auto* atlas = app.add_subcommand("atlas", "Classify every gate set of a given shape (CSV)");
  atlas->add_option("--modes", modes, "2 or 3")->capture_default_str();
  atlas->add_option("--size", size, "Gates per set, 1 or 2")->capture_default_str();
  atlas->add_option("--out", out_path, "CSV path (default stdout)");
  atlas->add_flag("--canonical", canonical, "Drop sets equal up to mode and member permutation");
  atlas->add_flag("--all", include_invalid, "Also list sets with indistinguishable modes");
  atlas->add_flag("--no-constants", no_constants);
  atlas->add_option("--jobs", jobs, "Worker threads (default: OpenMP default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*check) return cmd_check(set_text, no_constants, independent);
    if (*witness) return cmd_witness(set_text, cell, no_constants, as_json);
    if (*synth) return cmd_synthesize(set_text, target, inputs, no_constants, as_json);
    if (*sim) return cmd_simulate(netlist_path, sim_modes, cell);
    if (*atlas) return cmd_atlas(modes, size, out_path, canonical, include_invalid, no_constants, jobs);
  } catch (const Error& e) {
    std::cerr << "polygate: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
