#include "polygate/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <sstream>

#include "polygate/error.hpp"

namespace polygate {

namespace {

// Bit-parallel base gate over packed rows.
std::uint64_t eval_words(BaseGate g, std::uint64_t x, std::uint64_t y) {
  const std::uint8_t t = truth_table(g);
  std::uint64_t r = 0;
  if (t & 0x1) r |= ~x & ~y;
  if (t & 0x2) r |= ~x & y;
  if (t & 0x4) r |= x & ~y;
  if (t & 0x8) r |= x & y;
  return r;
}

void check_mode(const Netlist& c, int mode) {
  if (mode < 1 || (c.mode_count() > 0 && mode > c.mode_count())) {
    throw ModeError("mode " + std::to_string(mode) + " out of range 1.." + std::to_string(c.mode_count()));
  }
}

// Evaluates every node for `mode` with inputs given as row words.
std::uint64_t eval_mode(const Netlist& c, int mode, std::span<const std::uint64_t> inputs) {
  std::vector<std::uint64_t> values(c.nodes().size());
  auto read = [&](Operand op) -> std::uint64_t {
    switch (op.kind) {
      case Operand::Kind::input:
        return inputs[static_cast<std::size_t>(op.index)];
      case Operand::Kind::node:
        return values[static_cast<std::size_t>(op.index)];
      case Operand::Kind::constant:
        return op.index != 0 ? ~std::uint64_t{0} : 0;
    }
    return 0;
  };
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    const Node& n = c.nodes()[i];
    values[i] = eval_words(n.gate.mode(mode), read(n.in_a), read(n.in_b));
  }
  return read(c.output());
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '[' || ch == ']';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Netlist::Netlist(std::vector<std::string> inputs, int modes) : inputs_(std::move(inputs)), modes_(modes) {
  std::set<std::string> unique(inputs_.begin(), inputs_.end());
  if (unique.size() != inputs_.size()) throw NetlistError("duplicate primary input name");
  for (const auto& in : inputs_) {
    if (!is_identifier(in)) throw NetlistError("invalid input name '" + in + "'");
  }
}

void Netlist::check_operand(Operand op, int limit) const {
  switch (op.kind) {
    case Operand::Kind::input:
      if (op.index < 0 || op.index >= input_count()) throw NetlistError("unresolved input operand");
      break;
    case Operand::Kind::node:
      if (op.index < 0 || op.index >= limit) throw NetlistError("operand refers to a missing or later node");
      break;
    case Operand::Kind::constant:
      if (op.index != 0 && op.index != 1) throw NetlistError("constant operand must be 0 or 1");
      break;
  }
}

Operand Netlist::add_node(PolyGate gate, Operand a, Operand b, std::string id) {
  if (gate.mode_count() == 0) throw NetlistError("gate without modes");
  if (modes_ == 0) modes_ = gate.mode_count();
  if (gate.mode_count() != modes_) {
    throw NetlistError("gate " + gate.to_string() + " has " + std::to_string(gate.mode_count()) +
                       " modes, netlist has " + std::to_string(modes_));
  }
  const int index = static_cast<int>(nodes_.size());
  check_operand(a, index);
  check_operand(b, index);
  if (id.empty()) id = "n" + std::to_string(index);
  if (!is_identifier(id)) throw NetlistError("invalid node id '" + id + "'");
  if (input_index(id) >= 0) throw NetlistError("node id '" + id + "' shadows an input");
  if (!ids_.insert(id).second) throw NetlistError("duplicate node id '" + id + "'");
  gate.label.clear();
  nodes_.push_back(Node{std::move(id), std::move(gate), a, b});
  return Operand::node(index);
}

void Netlist::set_output(Operand out) {
  check_operand(out, static_cast<int>(nodes_.size()));
  output_ = out;
}

int Netlist::input_index(std::string_view name) const {
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string Netlist::operand_name(Operand op) const {
  switch (op.kind) {
    case Operand::Kind::input:
      return inputs_[static_cast<std::size_t>(op.index)];
    case Operand::Kind::node:
      return nodes_[static_cast<std::size_t>(op.index)].id;
    case Operand::Kind::constant:
      return op.index != 0 ? "1" : "0";
  }
  return {};
}

bool Netlist::uses_constants() const {
  if (output_.kind == Operand::Kind::constant) return true;
  return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return n.in_a.kind == Operand::Kind::constant || n.in_b.kind == Operand::Kind::constant;
  });
}

bool operator==(const Netlist& x, const Netlist& y) {
  if (x.inputs_ != y.inputs_ || x.output_ != y.output_ || x.nodes_.size() != y.nodes_.size()) return false;
  for (std::size_t i = 0; i < x.nodes_.size(); ++i) {
    const Node& p = x.nodes_[i];
    const Node& q = y.nodes_[i];
    if (p.gate != q.gate || p.in_a != q.in_a || p.in_b != q.in_b) return false;
  }
  return true;
}

std::size_t NetlistBuilder::KeyHash::operator()(const Key& k) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (BaseGate g : k.gate) mix(static_cast<std::size_t>(g));
  mix(static_cast<std::size_t>(k.a.kind) * 0x9E3779B9u + static_cast<std::size_t>(k.a.index));
  mix(static_cast<std::size_t>(k.b.kind) * 0x85EBCA6Bu + static_cast<std::size_t>(k.b.index));
  return h;
}

NetlistBuilder::NetlistBuilder(std::vector<std::string> inputs, int modes) : net_(std::move(inputs), modes) {}

Operand NetlistBuilder::add(const PolyGate& gate, Operand a, Operand b) {
  Key key{gate.modes, a, b};
  if (auto it = seen_.find(key); it != seen_.end()) return it->second;
  const Operand op = net_.add_node(gate, a, b);
  seen_.emplace(std::move(key), op);
  return op;
}

Operand NetlistBuilder::splice(const Netlist& sub, std::span<const Operand> bindings) {
  if (static_cast<int>(bindings.size()) != sub.input_count()) {
    throw NetlistError("splice: " + std::to_string(bindings.size()) + " bindings for " +
                       std::to_string(sub.input_count()) + " inputs");
  }
  std::vector<Operand> mapped(sub.nodes().size());
  auto resolve = [&](Operand op) {
    switch (op.kind) {
      case Operand::Kind::input:
        return bindings[static_cast<std::size_t>(op.index)];
      case Operand::Kind::node:
        return mapped[static_cast<std::size_t>(op.index)];
      case Operand::Kind::constant:
        return op;
    }
    return op;
  };
  for (std::size_t i = 0; i < sub.nodes().size(); ++i) {
    const Node& n = sub.nodes()[i];
    mapped[i] = add(n.gate, resolve(n.in_a), resolve(n.in_b));
  }
  return resolve(sub.output());
}

Netlist NetlistBuilder::finish(Operand output) && {
  net_.set_output(output);
  return std::move(net_);
}

bool simulate(const Netlist& c, int mode, std::span<const bool> assignment) {
  check_mode(c, mode);
  if (static_cast<int>(assignment.size()) != c.input_count()) {
    throw NetlistError("assignment has " + std::to_string(assignment.size()) + " values for " +
                       std::to_string(c.input_count()) + " inputs");
  }
  std::vector<std::uint64_t> words(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) words[i] = assignment[i] ? 1 : 0;
  return (eval_mode(c, mode, words) & 1) != 0;
}

bool simulate(const Netlist& c, int mode, const std::map<std::string, bool>& assignment) {
  const std::size_t n = c.inputs().size();
  for (const auto& entry : assignment) {
    if (c.input_index(entry.first) < 0) throw NetlistError("'" + entry.first + "' is not an input");
  }
  std::unique_ptr<bool[]> values(new bool[n]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = assignment.find(c.inputs()[i]);
    if (it == assignment.end()) throw NetlistError("no value for input '" + c.inputs()[i] + "'");
    values[i] = it->second;
  }
  return simulate(c, mode, std::span<const bool>(values.get(), n));
}

std::vector<std::uint64_t> truth_tables(const Netlist& c, int modes) {
  const int k = c.input_count();
  if (k > 6) throw NetlistError("truth tables limited to 6 inputs, netlist has " + std::to_string(k));
  const int m = c.mode_count() > 0 ? c.mode_count() : modes;
  const int rows = 1 << k;
  const std::uint64_t row_mask = rows == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
  std::vector<std::uint64_t> words(static_cast<std::size_t>(k), 0);
  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < k; ++i) {
      if ((r >> (k - 1 - i)) & 1) words[static_cast<std::size_t>(i)] |= std::uint64_t{1} << r;
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int mode = 1; mode <= m; ++mode) out.push_back(eval_mode(c, mode, words) & row_mask);
  return out;
}

PolyFunction truth_table_per_mode(const Netlist& c, int modes) {
  const int k = c.input_count();
  if (k != 1 && k != 2) {
    throw NetlistError("PolyFunction conversion needs 1 or 2 inputs, netlist has " + std::to_string(k));
  }
  const auto tables = truth_tables(c, modes);
  const int m = static_cast<int>(tables.size());
  std::uint64_t bits = 0;
  const int width = k == 2 ? 4 : 2;
  for (int i = 0; i < m; ++i) bits |= tables[static_cast<std::size_t>(i)] << (width * i);
  return k == 2 ? PolyFunction::binary(bits, m) : PolyFunction::unary(bits, m);
}

int depth(const Netlist& c) {
  std::vector<int> d(c.nodes().size(), 0);
  auto of = [&](Operand op) { return op.kind == Operand::Kind::node ? d[static_cast<std::size_t>(op.index)] : 0; };
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    d[i] = 1 + std::max(of(c.nodes()[i].in_a), of(c.nodes()[i].in_b));
  }
  return of(c.output());
}

Netlist substitute(const Netlist& c, const std::map<PolyGate, PolyGate>& mapping) {
  int modes = 0;
  for (const auto& n : c.nodes()) {
    const auto it = mapping.find(PolyGate(n.gate.modes));
    if (it == mapping.end()) throw NetlistError("unmapped gate " + n.gate.to_string());
    if (modes == 0) modes = it->second.mode_count();
    if (it->second.mode_count() != modes) throw NetlistError("replacement gates disagree on mode count");
  }
  Netlist out(c.inputs(), modes);
  for (const auto& n : c.nodes()) {
    out.add_node(mapping.at(PolyGate(n.gate.modes)), n.in_a, n.in_b, n.id);
  }
  out.set_output(c.output());
  return out;
}

Netlist substitute(const Netlist& c, const std::map<PolyGate, Netlist>& mapping) {
  int modes = 0;
  for (const auto& n : c.nodes()) {
    const auto it = mapping.find(PolyGate(n.gate.modes));
    if (it == mapping.end()) throw NetlistError("unmapped gate " + n.gate.to_string());
    const Netlist& sub = it->second;
    if (sub.input_count() < 1 || sub.input_count() > 2) {
      throw NetlistError("replacement for " + n.gate.to_string() + " must have 1 or 2 inputs");
    }
    if (sub.mode_count() != 0) {
      if (modes == 0) modes = sub.mode_count();
      if (sub.mode_count() != modes) throw NetlistError("replacement netlists disagree on mode count");
    }
  }
  NetlistBuilder b(c.inputs(), modes);
  std::vector<Operand> mapped(c.nodes().size());
  auto resolve = [&](Operand op) { return op.kind == Operand::Kind::node ? mapped[static_cast<std::size_t>(op.index)] : op; };
  for (std::size_t i = 0; i < c.nodes().size(); ++i) {
    const Node& n = c.nodes()[i];
    const Netlist& sub = mapping.at(PolyGate(n.gate.modes));
    const Operand pins[2] = {resolve(n.in_a), resolve(n.in_b)};
    mapped[i] = b.splice(sub, std::span<const Operand>(pins, static_cast<std::size_t>(sub.input_count())));
  }
  return std::move(b).finish(resolve(c.output()));
}

std::string serialize(const Netlist& c) {
  std::ostringstream out;
  out << "inputs";
  for (const auto& in : c.inputs()) out << ' ' << in;
  out << '\n';
  for (const auto& n : c.nodes()) {
    out << n.id << " = " << n.gate.to_string() << '(' << c.operand_name(n.in_a) << ", " << c.operand_name(n.in_b)
        << ")\n";
  }
  out << "output " << c.operand_name(c.output()) << '\n';
  return out.str();
}

Netlist parse_netlist(std::string_view text) {
  std::vector<std::pair<int, std::string>> lines;
  {
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      std::string_view line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
      ++number;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty()) lines.emplace_back(number, std::string(line));
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }
  if (lines.empty()) throw ParseError("empty netlist");

  const auto& [first_no, first] = lines.front();
  std::istringstream header(first);
  std::string keyword;
  header >> keyword;
  if (keyword != "inputs") throw ParseError("expected 'inputs' header", first_no);
  std::vector<std::string> inputs;
  for (std::string name; header >> name;) inputs.push_back(name);

  Netlist net = [&] {
    try {
      return Netlist(inputs);
    } catch (const NetlistError& e) {
      throw ParseError(e.what(), first_no);
    }
  }();
  std::map<std::string, int, std::less<>> ids;

  auto operand = [&](std::string_view tok, int line_no) -> Operand {
    tok = trim(tok);
    if (tok == "0") return Operand::constant(false);
    if (tok == "1") return Operand::constant(true);
    if (const int i = net.input_index(tok); i >= 0) return Operand::input(i);
    if (const auto it = ids.find(tok); it != ids.end()) return Operand::node(it->second);
    throw ParseError("unknown or forward operand '" + std::string(tok) + "'", line_no);
  };

  bool have_output = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& [no, line] = lines[li];
    if (have_output) throw ParseError("content after 'output' line", no);
    std::string_view sv = line;
    if (sv.substr(0, 7) == "output " || sv == "output") {
      net.set_output(operand(sv.substr(6), no));
      have_output = true;
      continue;
    }
    const auto eq = sv.find('=');
    const auto open = sv.find('(');
    const auto close = sv.rfind(')');
    if (eq == sv.npos || open == sv.npos || close == sv.npos || open < eq || close < open ||
        !trim(sv.substr(close + 1)).empty()) {
      throw ParseError("expected '<id> = <GATE>(<op>, <op>)'", no);
    }
    const std::string id(trim(sv.substr(0, eq)));
    PolyGate gate;
    try {
      gate = parse_poly_gate(trim(sv.substr(eq + 1, open - eq - 1)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), no);
    }
    const std::string_view args = sv.substr(open + 1, close - open - 1);
    const auto comma = args.find(',');
    if (comma == args.npos || args.find(',', comma + 1) != args.npos) {
      throw ParseError("gate needs exactly two operands", no);
    }
    const Operand a = operand(args.substr(0, comma), no);
    const Operand b = operand(args.substr(comma + 1), no);
    if (ids.count(id) != 0 || net.input_index(id) >= 0) throw ParseError("duplicate id '" + id + "'", no);
    try {
      const Operand op = net.add_node(std::move(gate), a, b, id);
      ids.emplace(id, op.index);
    } catch (const NetlistError& e) {
      throw ParseError(e.what(), no);
    }
  }
  if (!have_output) throw ParseError("missing 'output' line", lines.back().first);
  return net;
}

}  // namespace polygate
