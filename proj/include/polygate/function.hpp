#pragma once

#include <cstdint>
#include <string>

#include "polygate/gate.hpp"

namespace polygate {

/// Packed per-mode truth tables of a derived polymorphic gate.
///
/// Binary signature: 4 bits per mode (same row order as BaseGate), mode k
/// (1-based) in bits [4(k-1), 4k). Unary signature: 2 bits per mode, bit 0
/// is f(0) and bit 1 is f(1).
class PolyFunction {
 public:
  enum class Signature : std::uint8_t { binary, unary };

  PolyFunction() = default;
  PolyFunction(std::uint64_t bits, int modes, Signature sig) : bits_(bits), modes_(modes), sig_(sig) {}

  static PolyFunction binary(std::uint64_t bits, int modes) { return {bits, modes, Signature::binary}; }
  static PolyFunction unary(std::uint64_t bits, int modes) { return {bits, modes, Signature::unary}; }
  /// Same base gate in every mode.
  static PolyFunction uniform(BaseGate g, int modes);
  static PolyFunction from_gate(const PolyGate& g);

  std::uint64_t bits() const { return bits_; }
  int modes() const { return modes_; }
  Signature signature() const { return sig_; }

  /// Raw table of 1-based mode k (4 or 2 bits).
  std::uint8_t table(int k) const;
  /// Binary signature only.
  BaseGate gate(int k) const;

  /// Binary -> unary by tying both inputs to a; unary -> binary as a
  /// function of A that ignores B.
  PolyFunction as_unary() const;
  PolyFunction as_binary() const;

  /// "AND/OR" for binary, "NOT/WIRE" style for unary (ZERO, ONE, WIRE, NOT).
  std::string to_string() const;

  friend bool operator==(const PolyFunction&, const PolyFunction&) = default;

 private:
  std::uint64_t bits_ = 0;
  int modes_ = 0;
  Signature sig_ = Signature::binary;
};

/// Helpers over packed binary keys (4 bits per mode).
namespace packed {

/// 0x...FFFF covering m nibbles.
constexpr std::uint64_t mode_mask(int m) { return m >= 16 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (4 * m)) - 1); }

/// Repeats a 4-bit pattern across m nibbles.
constexpr std::uint64_t broadcast(std::uint8_t nibble, int m) {
  return (mode_mask(m) / 0xF) * (nibble & 0xF);
}

constexpr std::uint8_t nibble(std::uint64_t key, int k0) { return static_cast<std::uint8_t>((key >> (4 * k0)) & 0xF); }

/// True when nibbles 0..count-1 all equal `tt`.
constexpr bool prefix_equals(std::uint64_t key, int count, std::uint8_t tt) {
  return (key & mode_mask(count)) == broadcast(tt, count);
}

}  // namespace packed

}  // namespace polygate
