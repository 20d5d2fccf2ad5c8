#include "polygate/gate.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "polygate/error.hpp"

namespace polygate {

namespace {

constexpr std::array<std::string_view, kBaseGateCount> kNames = {
    "ZERO", "NOR",   "ANDNA", "NOTA", "ANDNB", "NOTB", "XOR", "NAND",
    "AND",  "NXOR", "WIREB", "ORNA", "WIREA", "ORNB", "OR",  "ONE",
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Column (1-based) of the first non-space character of `piece` in `whole`.
int column_of(std::string_view whole, std::string_view piece) {
  return static_cast<int>(piece.data() - whole.data()) + 1;
}

PolyGate parse_poly_gate_at(std::string_view whole, std::string_view text) {
  PolyGate gate;
  std::size_t start = 0;
  while (true) {
    const std::size_t slash = text.find('/', start);
    const std::string_view raw = text.substr(start, slash == std::string_view::npos ? text.npos : slash - start);
    const std::string_view token = trim(raw);
    if (token.empty()) {
      throw ParseError("empty gate name", 0, column_of(whole, raw));
    }
    const auto g = parse_base_gate(token);
    if (!g) {
      throw ParseError("unknown gate name '" + std::string(token) + "'", 0, column_of(whole, token));
    }
    gate.modes.push_back(*g);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return gate;
}

}  // namespace

int effective_arity(BaseGate g) {
  switch (g) {
    case BaseGate::ZERO:
    case BaseGate::ONE:
      return 0;
    case BaseGate::NOTA:
    case BaseGate::NOTB:
    case BaseGate::WIREA:
    case BaseGate::WIREB:
      return 1;
    default:
      return 2;
  }
}

std::string_view name(BaseGate g) { return kNames[truth_table(g)]; }

std::string_view display_name(BaseGate g) {
  switch (g) {
    case BaseGate::NOTA:
    case BaseGate::NOTB:
      return "NOT";
    case BaseGate::WIREA:
    case BaseGate::WIREB:
      return "WIRE";
    default:
      return name(g);
  }
}

std::optional<BaseGate> parse_base_gate(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (int tt = 0; tt < kBaseGateCount; ++tt) {
    if (kNames[tt] == upper) return from_truth_table(static_cast<std::uint8_t>(tt));
  }
  return std::nullopt;
}

const std::array<BaseGate, kBaseGateCount>& all_base_gates() {
  static const std::array<BaseGate, kBaseGateCount> gates = [] {
    std::array<BaseGate, kBaseGateCount> out{};
    for (int tt = 0; tt < kBaseGateCount; ++tt) out[tt] = from_truth_table(static_cast<std::uint8_t>(tt));
    return out;
  }();
  return gates;
}

BaseGate PolyGate::mode(int k) const {
  if (k < 1 || k > mode_count()) {
    throw ModeError("mode " + std::to_string(k) + " out of range 1.." + std::to_string(mode_count()));
  }
  return modes[static_cast<std::size_t>(k - 1)];
}

std::string PolyGate::to_string() const {
  if (!label.empty()) return label;
  std::string out;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (k != 0) out += '/';
    out += name(modes[k]);
  }
  return out;
}

bool eval_poly(const PolyGate& p, int mode, bool a, bool b) { return eval_base(p.mode(mode), a, b); }

PolyGate parse_poly_gate(std::string_view text) { return parse_poly_gate_at(text, text); }

std::string PolyGateSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (i != 0) out += ", ";
    out += gates_[i].to_string();
  }
  return out;
}

PolyGateSet validate_gate_set(std::vector<PolyGate> gates) {
  using Kind = GateSetError::Kind;
  if (gates.empty()) throw GateSetError(Kind::empty_set, "EmptySet: gate set is empty");
  const int m = gates.front().mode_count();
  for (const auto& g : gates) {
    if (g.mode_count() != m) {
      throw GateSetError(Kind::mixed_mode_counts, "MixedModeCounts: '" + gates.front().to_string() + "' has " +
                                                      std::to_string(m) + " modes but '" + g.to_string() +
                                                      "' has " + std::to_string(g.mode_count()));
    }
  }
  if (m < 2) throw GateSetError(Kind::too_few_modes, "a polymorphic gate set needs at least 2 modes");
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const bool separated =
          std::any_of(gates.begin(), gates.end(), [&](const PolyGate& g) { return g.mode(i) != g.mode(j); });
      if (!separated) {
        throw GateSetError(Kind::indistinguishable_modes,
                           "IndistinguishableModes(" + std::to_string(i) + "," + std::to_string(j) +
                               "): no gate behaves differently in modes " + std::to_string(i) + " and " +
                               std::to_string(j),
                           i, j);
      }
    }
  }
  return PolyGateSet(std::move(gates), m);
}

std::vector<PolyGate> parse_gate_list(std::string_view text) {
  std::vector<PolyGate> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (trim(piece).empty()) throw ParseError("empty gate in list", 0, column_of(text, piece));
    out.push_back(parse_poly_gate_at(text, piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

PolyGateSet parse_gate_set(std::string_view text) { return validate_gate_set(parse_gate_list(text)); }

int max_modes() {
  int cap = 4;
  if (const char* env = std::getenv("POLY_MAX_MODES"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2) cap = static_cast<int>(v);
  }
  return std::min(cap, kHardModeLimit);
}

void check_mode_cap(int m) {
  if (m > max_modes()) {
    throw ModeError(std::to_string(m) + " modes exceeds the cap of " + std::to_string(max_modes()) +
                    " (POLY_MAX_MODES raises it up to " + std::to_string(kHardModeLimit) + ")");
  }
}

}  // namespace polygate
