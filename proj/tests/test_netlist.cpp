#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "polygate/error.hpp"
#include "polygate/netlist.hpp"
#include "support.hpp"

using namespace polygate;

namespace {

// A/B multiplexer over {AND/NOR, NAND/OR}: A in mode 1, B in mode 2.
constexpr const char* kModeMux =
    "inputs A B\n"
    "n1 = AND/NOR(A, 1)\n"
    "n2 = AND/NOR(B, B)\n"
    "n3 = NAND/OR(0, n2)\n"
    "n4 = AND/NOR(n1, n3)\n"
    "output n4\n";

constexpr const char* kNandNorNot =
    "inputs a\n"
    "n1 = NAND/NOR(a, a)\n"
    "output n1\n";

constexpr const char* kNandNorAndOr =
    "inputs a b\n"
    "n1 = NAND/NOR(a, b)\n"
    "n2 = NAND/NOR(n1, n1)\n"
    "output n2\n";

// NOT/NOT over {NAND/NOR, OR/ANDNB}.
constexpr const char* kTwoGateNot =
    "inputs a\n"
    "n1 = NAND/NOR(a, a)\n"
    "n2 = OR/ANDNB(n1, 0)\n"
    "output n2\n";

Netlist chain(int k) {
  Netlist c({"a", "b"}, 1);
  Operand prev = Operand::input(0);
  for (int i = 0; i < k; ++i) prev = c.add_node(PolyGate{BaseGate::AND}, prev, Operand::input(1));
  c.set_output(prev);
  return c;
}

}  // namespace

TEST_CASE("simulate: mode multiplexer passes A then B") {
  const Netlist mux = parse_netlist(kModeMux);
  for (const bool a : {false, true}) {
    for (const bool b : {false, true}) {
      CHECK(simulate(mux, 1, std::map<std::string, bool>{{"A", a}, {"B", b}}) == a);
      CHECK(simulate(mux, 2, std::map<std::string, bool>{{"A", a}, {"B", b}}) == b);
    }
  }
}

TEST_CASE("simulate: single gate and NOT cell") {
  Netlist c({"a", "b"}, 1);
  c.set_output(c.add_node(PolyGate{BaseGate::AND}, Operand::input(0), Operand::input(1)));
  const bool ones[] = {true, true};
  CHECK(simulate(c, 1, ones));

  const Netlist n = parse_netlist(kNandNorNot);
  CHECK(simulate(n, 1, std::map<std::string, bool>{{"a", false}}));
  CHECK(simulate(n, 2, std::map<std::string, bool>{{"a", false}}));
}

TEST_CASE("simulate: errors") {
  const Netlist n = parse_netlist(kNandNorNot);
  const bool one[] = {true};
  CHECK_THROWS_AS(simulate(n, 0, one), ModeError);
  CHECK_THROWS_AS(simulate(n, 3, one), ModeError);
  CHECK_THROWS_AS(simulate(n, 1, std::map<std::string, bool>{}), NetlistError);
  CHECK_THROWS_AS(simulate(n, 1, std::map<std::string, bool>{{"a", true}, {"zz", true}}), NetlistError);
}

TEST_CASE("simulate is deterministic") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Netlist c = testing_support::random_cone_circuit(rng, true, 8);
    for (int r = 0; r < 4; ++r) {
      const bool in[] = {(r & 2) != 0, (r & 1) != 0};
      CHECK(simulate(c, 1, in) == simulate(c, 1, in));
    }
  }
}

TEST_CASE("truth_table_per_mode") {
  CHECK(truth_table_per_mode(parse_netlist(kNandNorNot)).to_string() == "NOT/NOT");
  CHECK(truth_table_per_mode(parse_netlist(kNandNorAndOr)).to_string() == "AND/OR");

  Netlist wire({"a"}, 2);
  wire.set_output(Operand::input(0));
  CHECK(truth_table_per_mode(wire).to_string() == "WIRE/WIRE");

  const Netlist three({"a", "b", "c"}, 1);
  CHECK_THROWS_AS(truth_table_per_mode(three), NetlistError);
}

TEST_CASE("truth_tables agree with simulate") {
  const Netlist mux = parse_netlist(kModeMux);
  const auto tables = truth_tables(mux);
  REQUIRE(tables.size() == 2);
  for (int mode = 1; mode <= 2; ++mode) {
    for (int r = 0; r < 4; ++r) {
      const bool in[] = {(r & 2) != 0, (r & 1) != 0};
      CHECK(((tables[static_cast<std::size_t>(mode - 1)] >> r) & 1) == simulate(mux, mode, in));
    }
  }
}

TEST_CASE("depth") {
  Netlist one({"a", "b"}, 1);
  one.set_output(one.add_node(PolyGate{BaseGate::OR}, Operand::input(0), Operand::input(1)));
  CHECK(depth(one) == 1);
  for (int k = 1; k <= 6; ++k) CHECK(depth(chain(k)) == k);
  CHECK(depth(parse_netlist(kModeMux)) == 3);

  Netlist wire({"a"}, 1);
  wire.set_output(Operand::input(0));
  CHECK(depth(wire) == 0);
}

TEST_CASE("netlist construction rejects bad operands") {
  Netlist c({"a", "b"}, 2);
  CHECK_THROWS_AS(c.add_node(PolyGate{BaseGate::AND, BaseGate::OR}, Operand::node(0), Operand::input(0)), NetlistError);
  CHECK_THROWS_AS(c.add_node(PolyGate{BaseGate::AND, BaseGate::OR}, Operand::input(2), Operand::input(0)), NetlistError);
  CHECK_THROWS_AS(c.add_node(PolyGate{BaseGate::AND}, Operand::input(0), Operand::input(1)), NetlistError);
  c.add_node(PolyGate{BaseGate::AND, BaseGate::OR}, Operand::input(0), Operand::input(1), "x");
  CHECK_THROWS_AS(c.add_node(PolyGate{BaseGate::AND, BaseGate::OR}, Operand::input(0), Operand::input(1), "x"),
                  NetlistError);
}

TEST_CASE("parse and serialize round trip") {
  for (const char* text : {kModeMux, kNandNorNot, kNandNorAndOr, kTwoGateNot}) {
    const Netlist c = parse_netlist(text);
    CHECK(parse_netlist(serialize(c)) == c);
  }
  const Netlist commented = parse_netlist(
      "# NOT cell\n"
      "inputs a   # one input\n"
      "\n"
      "inv = nand/nor(a, a)\n"
      "output inv\n");
  CHECK(commented == parse_netlist(kNandNorNot));
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_netlist(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("inputs a\nn1 = NAND/NOR(a, q)\noutput n1\n") == 2);
  CHECK(line_of("inputs a\nn1 = NAND/NOR(n2, a)\nn2 = NAND/NOR(a, a)\noutput n2\n") == 2);
  CHECK(line_of("inputs a\nn1 = NAND/FOO(a, a)\noutput n1\n") == 2);
  CHECK(line_of("inputs a\nn1 = NAND/NOR(a a)\noutput n1\n") == 2);
  CHECK(line_of("inputs a\nn1 = NAND/NOR(a, a)\n") > 0);
  CHECK(line_of("n1 = NAND/NOR(a, a)\noutput n1\n") == 1);
}

TEST_CASE("substitute: identity mapping keeps the structure") {
  const Netlist mux = parse_netlist(kModeMux);
  std::map<PolyGate, PolyGate> identity;
  for (const auto& n : mux.nodes()) identity[n.gate] = n.gate;
  CHECK(substitute(mux, identity) == mux);
  CHECK_THROWS_AS(substitute(mux, std::map<PolyGate, PolyGate>{}), NetlistError);
}

TEST_CASE("substitute: extending to a third mode") {
  const Netlist base = parse_netlist(kTwoGateNot);
  CHECK(truth_table_per_mode(base).to_string() == "NOT/NOT");
  const std::map<PolyGate, PolyGate> mapping = {
      {parse_poly_gate("NAND/NOR"), parse_poly_gate("NAND/NOR/ANDNA")},
      {parse_poly_gate("OR/ANDNB"), parse_poly_gate("OR/ANDNB/XOR")},
  };
  const Netlist extended = substitute(base, mapping);
  CHECK(extended.mode_count() == 3);
  CHECK(truth_table_per_mode(extended).to_string() == "NOT/NOT/ZERO");
}

TEST_CASE("substitute by sub-netlist splices its inputs") {
  const Netlist base = parse_netlist(kNandNorAndOr);
  const Netlist replacement = parse_netlist(
      "inputs x y\n"
      "g = AND/OR(x, y)\n"
      "h = NAND/NOR(g, g)\n"
      "output h\n");
  // NAND/NOR(x, y) == NAND/NOR(AND/OR(x,y), AND/OR(x,y)) in both modes.
  const std::map<PolyGate, Netlist> mapping = {{parse_poly_gate("NAND/NOR"), replacement}};
  const Netlist out = substitute(base, mapping);
  CHECK(truth_table_per_mode(out) == truth_table_per_mode(base));
}

TEST_CASE("substitute commutes with per-mode projection") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 15);
  for (int trial = 0; trial < 200; ++trial) {
    const Netlist c = testing_support::random_cone_circuit(rng, trial % 2 == 0, 8);
    std::map<PolyGate, PolyGate> lift;
    for (const auto& n : c.nodes()) {
      if (lift.count(n.gate) == 0) {
        lift[n.gate] = PolyGate{from_truth_table(static_cast<std::uint8_t>(pick(rng))),
                                from_truth_table(static_cast<std::uint8_t>(pick(rng)))};
      }
    }
    const auto tables = truth_tables(substitute(c, lift));
    for (int k = 1; k <= 2; ++k) {
      std::map<PolyGate, PolyGate> project;
      for (const auto& [from, to] : lift) project[from] = PolyGate{to.mode(k)};
      CHECK(truth_tables(substitute(c, project)).front() == tables[static_cast<std::size_t>(k - 1)]);
    }
  }
}

TEST_CASE("all-AND substitution of 0-free circuits gives AND") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Netlist c = testing_support::random_cone_circuit(rng, true, 8);
    std::map<PolyGate, PolyGate> to_and;
    for (const auto& n : c.nodes()) to_and[n.gate] = PolyGate{BaseGate::AND};
    REQUIRE(truth_tables(substitute(c, to_and)).front() == 0x8);
  }
}

TEST_CASE("all-OR substitution of 1-free circuits gives OR") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const Netlist c = testing_support::random_cone_circuit(rng, false, 8);
    std::map<PolyGate, PolyGate> to_or;
    for (const auto& n : c.nodes()) to_or[n.gate] = PolyGate{BaseGate::OR};
    REQUIRE(truth_tables(substitute(c, to_or)).front() == 0xE);
  }
}

TEST_CASE("builder shares structurally equal nodes") {
  NetlistBuilder b({"a", "b"}, 2);
  const PolyGate g{BaseGate::NAND, BaseGate::NOR};
  const Operand x = b.add(g, Operand::input(0), Operand::input(1));
  const Operand y = b.add(g, Operand::input(0), Operand::input(1));
  CHECK(x == y);
  const Netlist c = std::move(b).finish(b.add(g, x, y));
  CHECK(c.nodes().size() == 2);
  CHECK(truth_table_per_mode(c).to_string() == "AND/OR");
}

TEST_CASE("uses_constants") {
  CHECK(parse_netlist(kModeMux).uses_constants());
  CHECK_FALSE(parse_netlist(kNandNorAndOr).uses_constants());
}
