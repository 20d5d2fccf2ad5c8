#pragma once

// One expansion pass of the staged closure: evaluate outer(x, y) over the
// part of outer x inner x inner not covered by earlier passes and collect
// the functions not seen before, in enumeration order.
//
// Two implementations with identical output: run_pass_serial is the
// reference, run_pass_parallel splits the outer gates across OpenMP
// threads and merges per-gate results in gate order.

#include <cstdint>
#include <span>
#include <vector>

#include "polygate/function.hpp"

namespace polygate::kernel {

/// Per-row broadcast masks of a packed binary gate: m_i has 0xF in every
/// nibble whose table has bit i set.
struct GateMasks {
  std::uint64_t m0 = 0;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  std::uint64_t m3 = 0;
};

inline GateMasks masks_of(std::uint64_t key, int modes) {
  const std::uint64_t ones = packed::mode_mask(modes) / 0xF;
  return {((key >> 0) & ones) * 0xF, ((key >> 1) & ones) * 0xF, ((key >> 2) & ones) * 0xF,
          ((key >> 3) & ones) * 0xF};
}

/// gate(x, y) in every mode at once; x drives pin A, y drives pin B.
inline std::uint64_t compose(const GateMasks& g, std::uint64_t x, std::uint64_t y, std::uint64_t mask) {
  return ((g.m0 & ~x & ~y) | (g.m1 & ~x & y) | (g.m2 & x & ~y) | (g.m3 & x & y)) & mask;
}

struct Candidate {
  std::uint64_t function = 0;
  std::int32_t outer = 0;
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct PassRequest {
  std::span<const GateMasks> outer;
  /// outer[i] for i >= outer_fresh joined after the previous pass.
  std::size_t outer_fresh = 0;
  std::span<const std::uint64_t> inner;
  std::size_t inner_fresh = 0;
  /// Unary chaining: evaluate outer(x, x) only.
  bool unary = false;
  /// Membership of already generated functions, indexed by packed key.
  std::span<const std::uint8_t> known;
  int modes = 2;
};

struct PassResult {
  std::vector<Candidate> fresh;
  std::uint64_t evaluations = 0;
};

PassResult run_pass_serial(const PassRequest& req);
PassResult run_pass_parallel(const PassRequest& req);

/// Number of worker threads run_pass_parallel would use.
int parallel_threads();

}  // namespace polygate::kernel
