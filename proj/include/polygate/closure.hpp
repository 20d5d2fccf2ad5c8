#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "polygate/closure_kernel.hpp"
#include "polygate/function.hpp"
#include "polygate/gate.hpp"
#include "polygate/netlist.hpp"

namespace polygate {

enum class Target : std::uint8_t { AND, OR, NOT };
std::string_view to_string(Target t);

enum class ConstantsPolicy : std::uint8_t { allow, forbid };
std::string_view to_string(ConstantsPolicy p);

enum class Outcome : std::uint8_t { found, exhausted };

enum class KernelMode : std::uint8_t { serial, parallel };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Provenance of a derived gate, read as a function of its two pins A, B.
struct Expr {
  enum class Kind : std::uint8_t {
    pin_a,
    pin_b,
    const0,
    const1,
    gate,   // gate(A, B) for a member polymorphic gate
    apply,  // op with A := lhs, B := rhs
  };

  Kind kind = Kind::pin_a;
  PolyGate gate;
  ExprPtr op;
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr pin(bool b);
  static ExprPtr constant(bool v);
  static ExprPtr member(PolyGate g);
  /// Applying a bare pin collapses to the matching argument.
  static ExprPtr apply(ExprPtr op, ExprPtr lhs, ExprPtr rhs);
};

/// A polymorphic function plus the structure that produced it.
struct DerivedGate {
  PolyFunction function;
  ExprPtr structure;

  static DerivedGate from_member(const PolyGate& g);
};

/// Netlist realizing `dg`: inputs (a, b) for a binary signature, (a) for
/// a unary one.
Netlist expand(const DerivedGate& dg);

/// Work record of one construction call.
struct ConstructionCall {
  int level = 0;
  int loops = 0;
  std::uint64_t evaluations = 0;     // compositions actually computed
  std::uint64_t template_work = 0;   // |outer| * |pool|^2 * |S|^4 per pass (|outer| * |pool| unary)
  long double pool_power_sum = 0;    // sum over passes of |pool|^3 (|pool|^2 unary)
  std::size_t max_pool = 0;
  Outcome outcome = Outcome::exhausted;
};

/// Resumable state of one level of the staged construction: the growing
/// pool, the set R of generated functions realizing the target in modes
/// 1..level, and the set I of every function generated at this level.
class ClosureState {
 public:
  /// `pool` must realize `target` in every mode below `level`; throws
  /// PreconditionError otherwise, ModeError for a bad level or mode count.
  ClosureState(std::vector<DerivedGate> pool, Target target, int level, int modes, ConstantsPolicy policy);

  Target target() const { return target_; }
  int level() const { return level_; }
  int modes() const { return modes_; }
  ConstantsPolicy policy() const { return policy_; }
  /// Unary chaining template (NOT above level 1).
  bool unary_template() const { return target_ == Target::NOT && level_ > 1; }

  /// R in discovery order.
  const std::vector<DerivedGate>& found() const { return found_; }
  std::size_t generated_count() const { return generated_count_; }
  bool generated(std::uint64_t packed_binary) const { return known_[packed_binary] != 0; }
  std::size_t pool_size() const { return pool_.size(); }
  /// Leaf values fed to the inner gates, as packed binary functions.
  const std::vector<std::uint64_t>& leaves() const { return leaves_; }

  const std::vector<ConstructionCall>& calls() const { return calls_; }

 private:
  friend Outcome construction_andor(ClosureState& state, KernelMode mode);
  friend Outcome construction_not(ClosureState& state, KernelMode mode);

  struct PoolEntry {
    std::uint64_t function;
    ExprPtr structure;
    bool virtual_wire;
  };
  struct InnerEntry {
    std::uint64_t function;
    ExprPtr structure;
  };

  Outcome run(KernelMode mode);
  void add_pool(std::uint64_t fn, ExprPtr structure, bool virtual_wire);
  void extend_inner();
  bool realizes_target(std::uint64_t fn) const;
  DerivedGate to_derived(std::uint64_t fn, ExprPtr structure) const;

  Target target_;
  int level_;
  int modes_;
  ConstantsPolicy policy_;
  std::uint64_t mask_;

  std::vector<std::uint64_t> leaves_;
  std::vector<ExprPtr> leaf_exprs_;

  std::vector<PoolEntry> pool_;
  std::vector<std::int32_t> pool_index_;  // non-virtual pool entry by function, -1 if absent
  std::vector<std::int32_t> outer_;       // pool indices usable as the outer gate
  std::vector<kernel::GateMasks> outer_masks_;
  std::size_t inner_source_done_ = 0;     // pool entries already expanded into inner values
  std::vector<InnerEntry> inner_;
  std::vector<std::uint64_t> inner_values_;
  std::vector<std::uint8_t> inner_seen_;
  std::size_t outer_evaluated_ = 0;
  std::size_t inner_evaluated_ = 0;

  std::vector<std::uint8_t> known_;  // I
  std::size_t generated_count_ = 0;
  std::vector<DerivedGate> found_;   // R

  std::vector<ConstructionCall> calls_;
};

/// One call of the AND/OR construction: run expansion passes until a pass
/// both generates new functions and grows R (found), or a pass generates
/// nothing new (exhausted). Calling again resumes from the same frontier.
Outcome construction_andor(ClosureState& state, KernelMode mode = KernelMode::parallel);

/// NOT counterpart: triple template over leaves {0, 1, a} at level 1,
/// unary chaining outer(inner(a)) above it.
Outcome construction_not(ClosureState& state, KernelMode mode = KernelMode::parallel);

/// Dispatches on state.target().
Outcome construct(ClosureState& state, KernelMode mode = KernelMode::parallel);

}  // namespace polygate
