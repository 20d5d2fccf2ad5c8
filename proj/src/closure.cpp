#include "polygate/closure.hpp"

#include <map>
#include <tuple>

#include "polygate/error.hpp"

namespace polygate {

namespace {

constexpr std::uint8_t kWireA = truth_table(BaseGate::WIREA);
constexpr std::uint8_t kWireB = truth_table(BaseGate::WIREB);

std::uint8_t target_table(Target t) {
  switch (t) {
    case Target::AND:
      return truth_table(BaseGate::AND);
    case Target::OR:
      return truth_table(BaseGate::OR);
    case Target::NOT:
      return truth_table(BaseGate::NOTA);
  }
  return 0;
}

bool ignores_pin_b(std::uint64_t fn, int modes) {
  const PolyFunction f = PolyFunction::binary(fn, modes);
  return f.as_unary().as_binary() == f;
}

}  // namespace

std::string_view to_string(Target t) {
  switch (t) {
    case Target::AND:
      return "AND";
    case Target::OR:
      return "OR";
    case Target::NOT:
      return "NOT";
  }
  return "?";
}

std::string_view to_string(ConstantsPolicy p) { return p == ConstantsPolicy::allow ? "allow" : "forbid"; }

ExprPtr Expr::pin(bool b) {
  static const ExprPtr a_pin = std::make_shared<const Expr>(Expr{Kind::pin_a, {}, nullptr, nullptr, nullptr});
  static const ExprPtr b_pin = std::make_shared<const Expr>(Expr{Kind::pin_b, {}, nullptr, nullptr, nullptr});
  return b ? b_pin : a_pin;
}

ExprPtr Expr::constant(bool v) {
  static const ExprPtr zero = std::make_shared<const Expr>(Expr{Kind::const0, {}, nullptr, nullptr, nullptr});
  static const ExprPtr one = std::make_shared<const Expr>(Expr{Kind::const1, {}, nullptr, nullptr, nullptr});
  return v ? one : zero;
}

ExprPtr Expr::member(PolyGate g) {
  g.label.clear();
  return std::make_shared<const Expr>(Expr{Kind::gate, std::move(g), nullptr, nullptr, nullptr});
}

ExprPtr Expr::apply(ExprPtr op, ExprPtr lhs, ExprPtr rhs) {
  if (op->kind == Kind::pin_a) return lhs;
  if (op->kind == Kind::pin_b) return rhs;
  if (op->kind == Kind::const0 || op->kind == Kind::const1) return op;
  return std::make_shared<const Expr>(Expr{Kind::apply, {}, std::move(op), std::move(lhs), std::move(rhs)});
}

DerivedGate DerivedGate::from_member(const PolyGate& g) {
  return {PolyFunction::from_gate(g), Expr::member(g)};
}

Netlist expand(const DerivedGate& dg) {
  const bool unary = dg.function.signature() == PolyFunction::Signature::unary;
  NetlistBuilder builder(unary ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"},
                         dg.function.modes());
  std::map<std::tuple<const Expr*, Operand, Operand>, Operand> memo;

  auto rec = [&](auto&& self, const Expr& e, Operand pa, Operand pb) -> Operand {
    switch (e.kind) {
      case Expr::Kind::pin_a:
        return pa;
      case Expr::Kind::pin_b:
        return pb;
      case Expr::Kind::const0:
        return Operand::constant(false);
      case Expr::Kind::const1:
        return Operand::constant(true);
      case Expr::Kind::gate:
        return builder.add(e.gate, pa, pb);
      case Expr::Kind::apply:
        break;
    }
    const auto key = std::make_tuple(&e, pa, pb);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Operand l = self(self, *e.lhs, pa, pb);
    const Operand r = self(self, *e.rhs, pa, pb);
    const Operand out = self(self, *e.op, l, r);
    memo.emplace(key, out);
    return out;
  };

  const Operand a = Operand::input(0);
  const Operand b = unary ? a : Operand::input(1);
  const Operand out = rec(rec, *dg.structure, a, b);
  return std::move(builder).finish(out);
}

ClosureState::ClosureState(std::vector<DerivedGate> pool, Target target, int level, int modes,
                           ConstantsPolicy policy)
    : target_(target), level_(level), modes_(modes), policy_(policy), mask_(packed::mode_mask(modes)) {
  if (modes < 1 || modes > kHardModeLimit) {
    throw ModeError("mode count " + std::to_string(modes) + " outside 1.." + std::to_string(kHardModeLimit));
  }
  if (level < 1 || level > modes) {
    throw ModeError("construction level " + std::to_string(level) + " outside 1.." + std::to_string(modes));
  }

  const std::size_t space = std::size_t{1} << (4 * modes);
  known_.assign(space, 0);
  pool_index_.assign(space, -1);
  inner_seen_.assign(space, 0);

  const bool constants = policy == ConstantsPolicy::allow;
  const std::uint64_t zero = 0;
  const std::uint64_t one = mask_;
  const std::uint64_t a = packed::broadcast(kWireA, modes);
  const std::uint64_t b = packed::broadcast(kWireB, modes);
  auto leaf = [&](std::uint64_t v, ExprPtr e) {
    leaves_.push_back(v);
    leaf_exprs_.push_back(std::move(e));
  };
  const bool want0 = constants && (level == 1 || target == Target::OR);
  const bool want1 = constants && (level == 1 || target == Target::AND);
  if (target == Target::NOT) {
    if (level == 1 && constants) {
      leaf(zero, Expr::constant(false));
      leaf(one, Expr::constant(true));
    }
    leaf(a, Expr::pin(false));
  } else {
    if (want0) leaf(zero, Expr::constant(false));
    if (want1) leaf(one, Expr::constant(true));
    leaf(a, Expr::pin(false));
    leaf(b, Expr::pin(true));
  }

  const std::uint8_t want = target_table(target);
  for (auto& g : pool) {
    if (g.function.modes() != modes) {
      throw PreconditionError("pool gate " + g.function.to_string() + " has " + std::to_string(g.function.modes()) +
                              " modes, expected " + std::to_string(modes));
    }
    const std::uint64_t fn = g.function.as_binary().bits();
    if (!packed::prefix_equals(fn, level - 1, want)) {
      throw PreconditionError("pool gate " + g.function.to_string() + " does not realize " +
                              std::string(to_string(target)) + " in modes below " + std::to_string(level));
    }
    if (unary_template() && !ignores_pin_b(fn, modes)) {
      throw PreconditionError("pool gate " + g.function.to_string() + " is not unary");
    }
    if (pool_index_[fn] < 0) add_pool(fn, g.structure, false);
  }
  add_pool(packed::broadcast(kWireA, modes), Expr::pin(false), true);
  add_pool(packed::broadcast(kWireB, modes), Expr::pin(true), true);
}

void ClosureState::add_pool(std::uint64_t fn, ExprPtr structure, bool virtual_wire) {
  const auto index = static_cast<std::int32_t>(pool_.size());
  pool_.push_back({fn, std::move(structure), virtual_wire});
  if (!virtual_wire) {
    pool_index_[fn] = index;
    outer_.push_back(index);
    outer_masks_.push_back(kernel::masks_of(fn, modes_));
  }
}

void ClosureState::extend_inner() {
  auto push = [&](std::uint64_t fn, ExprPtr e) {
    if (inner_seen_[fn] != 0) return;
    inner_seen_[fn] = 1;
    inner_.push_back({fn, std::move(e)});
    inner_values_.push_back(fn);
  };
  for (; inner_source_done_ < pool_.size(); ++inner_source_done_) {
    const PoolEntry& g = pool_[inner_source_done_];
    const kernel::GateMasks gm = kernel::masks_of(g.function, modes_);
    if (unary_template()) {
      const std::uint64_t a = leaves_.front();
      push(kernel::compose(gm, a, a, mask_), Expr::apply(g.structure, leaf_exprs_.front(), leaf_exprs_.front()));
      continue;
    }
    for (std::size_t u = 0; u < leaves_.size(); ++u) {
      for (std::size_t v = 0; v < leaves_.size(); ++v) {
        push(kernel::compose(gm, leaves_[u], leaves_[v], mask_),
             Expr::apply(g.structure, leaf_exprs_[u], leaf_exprs_[v]));
      }
    }
  }
}

bool ClosureState::realizes_target(std::uint64_t fn) const {
  return packed::prefix_equals(fn, level_, target_table(target_));
}

DerivedGate ClosureState::to_derived(std::uint64_t fn, ExprPtr structure) const {
  PolyFunction f = PolyFunction::binary(fn, modes_);
  if (target_ == Target::NOT) f = f.as_unary();
  return {f, std::move(structure)};
}

Outcome ClosureState::run(KernelMode mode) {
  ConstructionCall call;
  call.level = level_;
  const std::size_t h = found_.size();
  const auto leaf_count = static_cast<std::uint64_t>(leaves_.size());
  const std::uint64_t leaf_tuples = leaf_count * leaf_count * leaf_count * leaf_count;

  while (true) {
    ++call.loops;
    extend_inner();

    const auto p = static_cast<long double>(pool_.size());
    const auto pool_n = static_cast<std::uint64_t>(pool_.size());
    call.max_pool = std::max(call.max_pool, pool_.size());
    if (unary_template()) {
      call.pool_power_sum += p * p;
      call.template_work += outer_.size() * pool_n;
    } else {
      call.pool_power_sum += p * p * p;
      call.template_work += outer_.size() * pool_n * pool_n * leaf_tuples;
    }

    kernel::PassRequest req;
    req.outer = outer_masks_;
    req.outer_fresh = outer_evaluated_;
    req.inner = inner_values_;
    req.inner_fresh = inner_evaluated_;
    req.unary = unary_template();
    req.known = known_;
    req.modes = modes_;
    kernel::PassResult result =
        mode == KernelMode::serial ? kernel::run_pass_serial(req) : kernel::run_pass_parallel(req);
    outer_evaluated_ = outer_.size();
    inner_evaluated_ = inner_values_.size();
    call.evaluations += result.evaluations;

    for (const kernel::Candidate& c : result.fresh) {
      known_[c.function] = 1;
      ++generated_count_;
      const PoolEntry& outer = pool_[static_cast<std::size_t>(outer_[static_cast<std::size_t>(c.outer)])];
      ExprPtr structure = Expr::apply(outer.structure, inner_[static_cast<std::size_t>(c.x)].structure,
                                      inner_[static_cast<std::size_t>(c.y)].structure);
      if (realizes_target(c.function)) found_.push_back(to_derived(c.function, structure));
      if (pool_index_[c.function] < 0) add_pool(c.function, std::move(structure), false);
    }

    if (!result.fresh.empty() && found_.size() > h) {
      call.outcome = Outcome::found;
      break;
    }
    if (result.fresh.empty()) {
      call.outcome = Outcome::exhausted;
      break;
    }
  }
  calls_.push_back(call);
  return call.outcome;
}

Outcome construction_andor(ClosureState& state, KernelMode mode) {
  if (state.target() == Target::NOT) throw PreconditionError("construction_andor needs an AND or OR target");
  return state.run(mode);
}

Outcome construction_not(ClosureState& state, KernelMode mode) {
  if (state.target() != Target::NOT) throw PreconditionError("construction_not needs a NOT target");
  return state.run(mode);
}

Outcome construct(ClosureState& state, KernelMode mode) {
  return state.target() == Target::NOT ? construction_not(state, mode) : construction_andor(state, mode);
}

}  // namespace polygate
