#include <algorithm>
#include <optional>
#include <stdexcept>

#include "imp/vm.hpp"

namespace imp {

namespace {

const BigInt kZero = 0;

}  // namespace

const BigInt& Store::get(const BigInt& reg) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), reg,
                             [](const Entry& e, const BigInt& r) { return e.first < r; });
  if (it != entries_.end() && it->first == reg) return it->second;
  return kZero;
}

void Store::set(const BigInt& reg, BigInt value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), reg,
                             [](const Entry& e, const BigInt& r) { return e.first < r; });
  const bool present = it != entries_.end() && it->first == reg;
  if (value == 0) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->second = std::move(value);
  } else {
    entries_.insert(it, Entry{reg, std::move(value)});
  }
}

Bitstring output(const Store& store) {
  std::string bits;
  for (const auto& [reg, value] : store.entries()) append_nat_string(value, bits);
  return Bitstring(bits);
}

namespace {

// Expression evaluation; `cost` accumulates the per-node charges.
class Evaluator {
 public:
  Evaluator(const Program& p, const Store& s, const StepCosts& c) : p_(p), store_(s), costs_(c) {}

  std::uint64_t cost = 0;

  BigInt arith(NodeId id) {
    const Node& n = p_[id];
    switch (n.kind) {
      case Kind::Num:
        cost += costs_.leaf;
        return n.value;
      case Kind::Var:
        cost += costs_.leaf;
        return store_.get(n.value);
      case Kind::Add: {
        cost += costs_.operator_node;
        BigInt a = arith(n.kids[0]);
        return a + arith(n.kids[1]);
      }
      case Kind::Sub: {
        cost += costs_.operator_node;
        BigInt a = arith(n.kids[0]);
        BigInt b = arith(n.kids[1]);
        if (a <= b) return BigInt(0);
        return a - b;
      }
      case Kind::Mul: {
        cost += costs_.operator_node;
        BigInt a = arith(n.kids[0]);
        return a * arith(n.kids[1]);
      }
      default:
        throw std::logic_error("not an arithmetic node");
    }
  }

  bool boolean(NodeId id) {
    const Node& n = p_[id];
    switch (n.kind) {
      case Kind::True:
        cost += costs_.leaf;
        return true;
      case Kind::False:
        cost += costs_.leaf;
        return false;
      case Kind::Eq: {
        cost += costs_.operator_node;
        BigInt a = arith(n.kids[0]);
        return a == arith(n.kids[1]);
      }
      case Kind::Lt: {
        cost += costs_.operator_node;
        BigInt a = arith(n.kids[0]);
        return a < arith(n.kids[1]);
      }
      case Kind::Not:
        cost += costs_.operator_node;
        return !boolean(n.kids[0]);
      // Both operands are always evaluated.
      case Kind::Or: {
        cost += costs_.operator_node;
        bool a = boolean(n.kids[0]);
        bool b = boolean(n.kids[1]);
        return a || b;
      }
      case Kind::And: {
        cost += costs_.operator_node;
        bool a = boolean(n.kids[0]);
        bool b = boolean(n.kids[1]);
        return a && b;
      }
      default:
        throw std::logic_error("not a boolean node");
    }
  }

 private:
  const Program& p_;
  const Store& store_;
  const StepCosts& costs_;
};

// Continuation entry: either execute a statement or charge the transition
// that drops a finished `skip` from the front of a sequence.
struct Frame {
  NodeId node;
  bool charge;
};

}  // namespace

// The continuation in effect when a statement starts executing is a function
// of that statement's position in the tree alone: it consists of the pending
// second halves of enclosing sequences and the pending re-entries of
// enclosing loops. A configuration is therefore (statement, store), which is
// what the loop check compares.
RunResult run(const Program& p, std::uint64_t budget, const RunOptions& options) {
  if (budget == 0) throw std::invalid_argument("step budget must be at least 1");
  RunResult result;
  Store& store = result.store;
  const StepCosts& costs = options.costs;

  std::vector<Frame> stack;
  stack.push_back({p.root(), false});
  std::vector<std::optional<Store>> loop_entry;
  if (options.loop_check) loop_entry.resize(p.size());

  auto spend = [&](std::uint64_t c) {
    if (c > budget - result.steps) return false;
    result.steps += c;
    return true;
  };
  auto give_up = [&] {
    result.halted = false;
    result.steps = budget;
    return result;
  };

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.charge) {
      if (!spend(costs.statement)) return give_up();
      continue;
    }
    const Node& n = p[f.node];
    switch (n.kind) {
      case Kind::Skip:
        break;
      case Kind::Assign: {
        Evaluator ev(p, store, costs);
        BigInt value = ev.arith(n.kids[1]);
        if (!spend(costs.statement + ev.cost)) return give_up();
        store.set(p[n.kids[0]].value, std::move(value));
        break;
      }
      case Kind::Seq:
        stack.push_back({n.kids[1], false});
        stack.push_back({0, true});
        stack.push_back({n.kids[0], false});
        break;
      case Kind::If: {
        Evaluator ev(p, store, costs);
        const bool cond = ev.boolean(n.kids[0]);
        if (!spend(costs.statement + ev.cost)) return give_up();
        stack.push_back({cond ? n.kids[1] : n.kids[2], false});
        break;
      }
      case Kind::While: {
        if (options.loop_check) {
          auto& seen = loop_entry[f.node];
          if (seen && *seen == store) return give_up();
          seen = store;
        }
        Evaluator ev(p, store, costs);
        const bool cond = ev.boolean(n.kids[0]);
        if (!spend(costs.statement + ev.cost)) return give_up();
        if (cond) {
          stack.push_back({f.node, false});
          stack.push_back({0, true});
          stack.push_back({n.kids[1], false});
        }
        break;
      }
      default:
        throw std::logic_error("expression node in statement position");
    }
  }
  result.halted = true;
  return result;
}

}  // namespace imp
