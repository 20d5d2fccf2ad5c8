#include "polygate/synthesis.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "polygate/error.hpp"

namespace polygate {

namespace {

const std::vector<std::string> kVarNames = {"a", "b", "c", "d"};

void require_cells(const CellWitnesses& cells, int modes) {
  if (!verify_cell(cells.and_cell, Target::AND, modes) || !verify_cell(cells.or_cell, Target::OR, modes) ||
      !verify_cell(cells.not_cell, Target::NOT, modes)) {
    throw SynthesisError("unverified cells: AND/OR/NOT cells must hold in every mode");
  }
}

// Cell instantiation on top of a shared builder.
struct CellOps {
  NetlistBuilder& b;
  const CellWitnesses& cells;

  Operand negate(Operand x) {
    const Operand in[1] = {x};
    return b.splice(cells.not_cell, in);
  }
  Operand conj(Operand x, Operand y) {
    const Operand in[2] = {x, y};
    return b.splice(cells.and_cell, in);
  }
  Operand disj(Operand x, Operand y) {
    const Operand in[2] = {x, y};
    return b.splice(cells.or_cell, in);
  }
  Operand mux(Operand s, Operand when0, Operand when1) {
    return disj(conj(negate(s), when0), conj(s, when1));
  }
};

Operand route(CellOps& ops, const PolyGateSet& gates, std::span<const int> modes, std::span<const Operand> data) {
  if (modes.size() == 1) return data[static_cast<std::size_t>(modes.front() - 1)];
  const ModeSeparator sep = find_mode_separator(gates, modes);
  const Operand s = ops.b.add(gates[sep.gate], Operand::constant(sep.in1), Operand::constant(sep.in2));
  const Operand when0 = route(ops, gates, sep.zero_modes, data);
  const Operand when1 = route(ops, gates, sep.one_modes, data);
  return ops.mux(s, when0, when1);
}

std::uint64_t projection(int var, int k) {
  std::uint64_t t = 0;
  for (int r = 0; r < (1 << k); ++r) {
    if ((r >> (k - 1 - var)) & 1) t |= std::uint64_t{1} << r;
  }
  return t;
}

// Two-level sum of products; constants and (negated) projections are
// emitted directly.
Operand sum_of_products(CellOps& ops, std::uint64_t table, std::span<const Operand> vars) {
  const int k = static_cast<int>(vars.size());
  const int rows = 1 << k;
  const std::uint64_t all = rows == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
  table &= all;
  if (table == 0) return Operand::constant(false);
  if (table == all) return Operand::constant(true);
  for (int v = 0; v < k; ++v) {
    const std::uint64_t p = projection(v, k);
    if (table == p) return vars[static_cast<std::size_t>(v)];
    if (table == (~p & all)) return ops.negate(vars[static_cast<std::size_t>(v)]);
  }
  std::optional<Operand> sum;
  for (int r = 0; r < rows; ++r) {
    if (((table >> r) & 1) == 0) continue;
    std::optional<Operand> product;
    for (int v = 0; v < k; ++v) {
      const bool positive = (r >> (k - 1 - v)) & 1;
      const Operand lit = positive ? vars[static_cast<std::size_t>(v)] : ops.negate(vars[static_cast<std::size_t>(v)]);
      product = product ? ops.conj(*product, lit) : lit;
    }
    sum = sum ? ops.disj(*sum, *product) : *product;
  }
  return *sum;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Netlist build_mux(const CellWitnesses& cells, int modes) {
  require_cells(cells, modes);
  NetlistBuilder b({"s", "A", "B"}, modes);
  CellOps ops{b, cells};
  const Operand out = ops.mux(Operand::input(0), Operand::input(1), Operand::input(2));
  return std::move(b).finish(out);
}

ModeSeparator find_mode_separator(const PolyGateSet& gates, std::span<const int> modes) {
  if (modes.size() < 2) throw SynthesisError("NoSeparator: need at least two modes to separate");
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    for (int row = 0; row < 4; ++row) {
      const bool in1 = (row >> 1) & 1;
      const bool in2 = row & 1;
      ModeSeparator sep{gi, in1, in2, {}, {}};
      for (const int k : modes) {
        (eval_poly(gates[gi], k, in1, in2) ? sep.one_modes : sep.zero_modes).push_back(k);
      }
      if (!sep.zero_modes.empty() && !sep.one_modes.empty()) {
        std::sort(sep.zero_modes.begin(), sep.zero_modes.end());
        std::sort(sep.one_modes.begin(), sep.one_modes.end());
        return sep;
      }
    }
  }
  throw SynthesisError("NoSeparator: no member gate with constant inputs splits the requested modes");
}

Netlist build_selector_tree(const PolyGateSet& gates, const CellWitnesses& cells) {
  const int m = gates.mode_count();
  require_cells(cells, m);
  std::vector<std::string> names;
  std::vector<Operand> data;
  std::vector<int> modes;
  for (int k = 1; k <= m; ++k) {
    names.push_back("d" + std::to_string(k));
    data.push_back(Operand::input(k - 1));
    modes.push_back(k);
  }
  NetlistBuilder b(names, m);
  CellOps ops{b, cells};
  const Operand out = route(ops, gates, modes, data);
  return std::move(b).finish(out);
}

PolyTarget parse_target(std::string_view text, std::optional<int> inputs) {
  PolyTarget target;
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t slash = text.find('/', start);
    parts.push_back(trim(text.substr(start, slash == std::string_view::npos ? text.npos : slash - start)));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  const bool hex = !parts.empty() && parts.front().size() > 2 && parts.front()[0] == '0' &&
                   (parts.front()[1] == 'x' || parts.front()[1] == 'X');
  if (!hex) {
    target.inputs = 2;
    if (inputs && *inputs != 2) throw ParseError("gate-name targets have exactly 2 inputs");
    for (const auto part : parts) {
      const auto g = parse_base_gate(part);
      if (!g) throw ParseError("unknown gate name '" + std::string(part) + "' in target");
      target.tables.push_back(truth_table(*g));
    }
    return target;
  }
  std::size_t digits = 0;
  for (const auto part : parts) {
    if (part.size() < 3 || part[0] != '0' || (part[1] != 'x' && part[1] != 'X')) {
      throw ParseError("mixed hex and gate-name target '" + std::string(part) + "'");
    }
    const std::string_view body = part.substr(2);
    if (body.size() > 16 || !std::all_of(body.begin(), body.end(), [](char c) {
          return std::isxdigit(static_cast<unsigned char>(c)) != 0;
        })) {
      throw ParseError("bad hex table '" + std::string(part) + "'");
    }
    digits = std::max(digits, body.size());
    target.tables.push_back(std::stoull(std::string(body), nullptr, 16));
  }
  if (inputs) {
    target.inputs = *inputs;
  } else {
    int k = 2;
    while ((std::size_t{1} << k) < 4 * digits) ++k;
    target.inputs = k;
  }
  if (target.inputs < 1 || target.inputs > 6) throw ParseError("target input count must be 1..6");
  const int rows = 1 << target.inputs;
  const std::uint64_t all = rows == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
  for (const auto t : target.tables) {
    if ((t & ~all) != 0) throw ParseError("hex table wider than 2^" + std::to_string(target.inputs) + " rows");
  }
  return target;
}

Netlist synthesize(const PolyGateSet& gates, const PolyTarget& target, const CellWitnesses& cells) {
  const int m = gates.mode_count();
  if (static_cast<int>(target.tables.size()) != m) {
    throw SynthesisError("target has " + std::to_string(target.tables.size()) + " modes, gate set has " +
                         std::to_string(m));
  }
  if (target.inputs < 1 || target.inputs > kMaxSynthesisInputs) {
    throw SynthesisError("synthesis supports 1.." + std::to_string(kMaxSynthesisInputs) + " inputs");
  }
  require_cells(cells, m);

  std::vector<std::string> names(kVarNames.begin(), kVarNames.begin() + target.inputs);
  NetlistBuilder b(names, m);
  CellOps ops{b, cells};
  std::vector<Operand> vars;
  for (int i = 0; i < target.inputs; ++i) vars.push_back(Operand::input(i));

  std::vector<Operand> per_mode;
  std::vector<int> modes;
  for (int k = 1; k <= m; ++k) {
    per_mode.push_back(sum_of_products(ops, target.tables[static_cast<std::size_t>(k - 1)], vars));
    modes.push_back(k);
  }
  const Operand out = route(ops, gates, modes, per_mode);
  return std::move(b).finish(out);
}

Netlist synthesize(const PolyGateSet& gates, const PolyTarget& target) {
  CompletenessVerdict v = is_complete(gates);
  if (!v.complete) throw SynthesisError("gate set " + gates.to_string() + " is incomplete");
  return synthesize(gates, target, *v.witnesses);
}

}  // namespace polygate
