#include "polygate/function.hpp"

#include "polygate/error.hpp"

namespace polygate {

namespace {

// Unary table: bit 0 = f(0), bit 1 = f(1).
constexpr std::string_view unary_name(std::uint8_t t) {
  switch (t & 0x3) {
    case 0x0:
      return "ZERO";
    case 0x1:
      return "NOT";
    case 0x2:
      return "WIRE";
    default:
      return "ONE";
  }
}

}  // namespace

PolyFunction PolyFunction::uniform(BaseGate g, int modes) {
  return binary(packed::broadcast(truth_table(g), modes), modes);
}

PolyFunction PolyFunction::from_gate(const PolyGate& g) {
  std::uint64_t bits = 0;
  for (int k = 0; k < g.mode_count(); ++k) {
    bits |= std::uint64_t{truth_table(g.modes[static_cast<std::size_t>(k)])} << (4 * k);
  }
  return binary(bits, g.mode_count());
}

std::uint8_t PolyFunction::table(int k) const {
  if (k < 1 || k > modes_) {
    throw ModeError("mode " + std::to_string(k) + " out of range 1.." + std::to_string(modes_));
  }
  if (sig_ == Signature::binary) return packed::nibble(bits_, k - 1);
  return static_cast<std::uint8_t>((bits_ >> (2 * (k - 1))) & 0x3);
}

BaseGate PolyFunction::gate(int k) const {
  if (sig_ != Signature::binary) throw Error("gate() needs a binary signature");
  return from_truth_table(table(k));
}

PolyFunction PolyFunction::as_unary() const {
  if (sig_ == Signature::unary) return *this;
  std::uint64_t out = 0;
  for (int k = 0; k < modes_; ++k) {
    const std::uint8_t t = packed::nibble(bits_, k);
    // f(x) = g(x, x): rows (0,0) and (1,1).
    const std::uint64_t u = (t & 0x1) | (((t >> 3) & 0x1) << 1);
    out |= u << (2 * k);
  }
  return unary(out, modes_);
}

PolyFunction PolyFunction::as_binary() const {
  if (sig_ == Signature::binary) return *this;
  std::uint64_t out = 0;
  for (int k = 0; k < modes_; ++k) {
    const std::uint8_t u = static_cast<std::uint8_t>((bits_ >> (2 * k)) & 0x3);
    // Rows (0,*) take f(0), rows (1,*) take f(1).
    const std::uint64_t t = ((u & 0x1) ? 0x3 : 0x0) | ((u & 0x2) ? 0xC : 0x0);
    out |= t << (4 * k);
  }
  return binary(out, modes_);
}

std::string PolyFunction::to_string() const {
  std::string out;
  for (int k = 1; k <= modes_; ++k) {
    if (k != 1) out += '/';
    out += sig_ == Signature::binary ? name(gate(k)) : unary_name(table(k));
  }
  return out;
}

}  // namespace polygate
