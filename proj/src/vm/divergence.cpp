#include <memory>
#include <string>
#include <unordered_set>

#include "imp/vm.hpp"

// Reference small-step interpreter. It rewrites explicit residual-program
// terms instead of using the frame stack of run(), evaluates expressions with
// its own code, and keys its memo table on a textual rendering of the whole
// configuration, so it serves as an independent check on run().

namespace imp {

namespace {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// A residual program: a statement of the original tree, a sequence built
// during execution, or the terminal skip.
struct Term {
  enum class Tag { Node, Seq, Done } tag;
  NodeId node = 0;
  TermPtr first, second;
};

TermPtr done() {
  static const TermPtr t = std::make_shared<Term>(Term{Term::Tag::Done, 0, nullptr, nullptr});
  return t;
}
TermPtr at(NodeId id) { return std::make_shared<Term>(Term{Term::Tag::Node, id, nullptr, nullptr}); }
TermPtr seq(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::Tag::Seq, 0, std::move(a), std::move(b)});
}

class Machine {
 public:
  Machine(const Program& p, const StepCosts& c) : p_(p), costs_(c) {}

  Store store;
  std::uint64_t steps = 0;

  bool terminal(const TermPtr& t) const {
    return t->tag == Term::Tag::Done || (t->tag == Term::Tag::Node && p_[t->node].kind == Kind::Skip);
  }

  // One transition; the term must not be terminal.
  TermPtr step(const TermPtr& t) {
    if (t->tag == Term::Tag::Seq) {
      if (terminal(t->first)) {
        steps += costs_.statement;
        return t->second;
      }
      return seq(step(t->first), t->second);
    }
    const Node& n = p_[t->node];
    switch (n.kind) {
      case Kind::Seq:
        return step(seq(at(n.kids[0]), at(n.kids[1])));
      case Kind::Assign: {
        steps += costs_.statement;
        BigInt v = arith(n.kids[1]);
        store.set(p_[n.kids[0]].value, std::move(v));
        return done();
      }
      case Kind::If:
        steps += costs_.statement;
        return at(boolean(n.kids[0]) ? n.kids[1] : n.kids[2]);
      case Kind::While:
        steps += costs_.statement;
        if (boolean(n.kids[0])) return seq(at(n.kids[1]), t);
        return done();
      default:
        return done();
    }
  }

  static void key(const TermPtr& t, std::string& out) {
    switch (t->tag) {
      case Term::Tag::Done:
        out += 's';
        break;
      case Term::Tag::Node:
        out += 'n';
        out += std::to_string(t->node);
        break;
      case Term::Tag::Seq:
        out += '(';
        key(t->first, out);
        out += ';';
        key(t->second, out);
        out += ')';
        break;
    }
  }

 private:
  BigInt arith(NodeId id) {
    const Node& n = p_[id];
    if (n.kind == Kind::Num) {
      steps += costs_.leaf;
      return n.value;
    }
    if (n.kind == Kind::Var) {
      steps += costs_.leaf;
      return store.get(n.value);
    }
    steps += costs_.operator_node;
    BigInt a = arith(n.kids[0]);
    BigInt b = arith(n.kids[1]);
    if (n.kind == Kind::Add) return a + b;
    if (n.kind == Kind::Mul) return a * b;
    return a > b ? BigInt(a - b) : BigInt(0);
  }

  bool boolean(NodeId id) {
    const Node& n = p_[id];
    if (n.kind == Kind::True || n.kind == Kind::False) {
      steps += costs_.leaf;
      return n.kind == Kind::True;
    }
    steps += costs_.operator_node;
    switch (n.kind) {
      case Kind::Not:
        return !boolean(n.kids[0]);
      case Kind::Eq:
      case Kind::Lt: {
        BigInt a = arith(n.kids[0]);
        BigInt b = arith(n.kids[1]);
        return n.kind == Kind::Eq ? a == b : a < b;
      }
      default: {
        bool a = boolean(n.kids[0]);
        bool b = boolean(n.kids[1]);
        return n.kind == Kind::Or ? (a || b) : (a && b);
      }
    }
  }

  const Program& p_;
  const StepCosts& costs_;
};

}  // namespace

DivergenceReport detect_divergence(const Program& p, std::size_t state_cap, const StepCosts& costs) {
  Machine m(p, costs);
  std::unordered_set<std::string> seen;
  TermPtr term = at(p.root());
  DivergenceReport report;
  while (!m.terminal(term)) {
    std::string k;
    Machine::key(term, k);
    for (const auto& [reg, value] : m.store.entries()) {
      k += '|';
      k += reg.str();
      k += '=';
      k += value.str();
    }
    if (!seen.insert(std::move(k)).second) {
      report.verdict = Verdict::Diverges;
      return report;
    }
    if (seen.size() > state_cap) {
      report.verdict = Verdict::Unknown;
      return report;
    }
    term = m.step(term);
  }
  report.verdict = Verdict::Halts;
  report.steps = m.steps;
  report.store = std::move(m.store);
  return report;
}

}  // namespace imp
