#include "imp/enumeration.hpp"

namespace imp {

BigInt cantor_pair(const BigInt& x, const BigInt& y) {
  const BigInt s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z) {
  if (z < 0) throw OutOfRange("negative pairing code");
  const BigInt w = (boost::multiprecision::sqrt(BigInt(8 * z + 1)) - 1) / 2;
  const BigInt y = z - w * (w + 1) / 2;
  return {w - y, y};
}

namespace {

// Alternative layout per category:
//   P: 0 -> skip; k >= 1: k - 1 = 4q + r, r selects assign/seq/if/while.
//   A: k = 5q + r, r selects numeral/register/+/-/*.
//   B: 0, 1 -> true, false; k >= 2: k - 2 = 5q + r, r selects =/</not/or/and.
// q is a numeral or register index directly, the operand of a negation, or a
// Cantor code for two children (three for if: pair(cond, pair(then, else))).
constexpr unsigned kProgramAlts = 4;
constexpr unsigned kArithAlts = 5;
constexpr unsigned kBoolAlts = 5;

class BaseDecoder {
 public:
  explicit BaseDecoder(Program& out) : out_(out) {}

  NodeId program(const BigInt& k) {
    if (k == 0) return out_.skip();
    const BigInt rest = k - 1;
    const BigInt q = rest / kProgramAlts;
    const auto r = static_cast<unsigned>(rest % kProgramAlts);
    auto [a, b] = cantor_unpair(q);
    switch (r) {
      case 0: {
        NodeId target = out_.var(a);
        return out_.assign(target, arith(b));
      }
      case 1: {
        NodeId first = program(a);
        return out_.seq(first, program(b));
      }
      case 2: {
        NodeId cond = boolean(a);
        auto [t, e] = cantor_unpair(b);
        NodeId then_branch = program(t);
        return out_.if_(cond, then_branch, program(e));
      }
      default: {
        NodeId cond = boolean(a);
        return out_.while_(cond, program(b));
      }
    }
  }

  NodeId arith(const BigInt& k) {
    const BigInt q = k / kArithAlts;
    const auto r = static_cast<unsigned>(k % kArithAlts);
    if (r == 0) return out_.num(q);
    if (r == 1) return out_.var(q);
    static constexpr Kind ops[] = {Kind::Add, Kind::Sub, Kind::Mul};
    auto [a, b] = cantor_unpair(q);
    NodeId lhs = arith(a);
    return out_.binary(ops[r - 2], lhs, arith(b));
  }

  NodeId boolean(const BigInt& k) {
    if (k < 2) return out_.truth(k == 0);
    const BigInt rest = k - 2;
    const BigInt q = rest / kBoolAlts;
    const auto r = static_cast<unsigned>(rest % kBoolAlts);
    if (r == 2) return out_.not_(boolean(q));
    auto [a, b] = cantor_unpair(q);
    if (r < 2) {
      NodeId lhs = arith(a);
      return out_.binary(r == 0 ? Kind::Eq : Kind::Lt, lhs, arith(b));
    }
    NodeId lhs = boolean(a);
    return out_.binary(r == 3 ? Kind::Or : Kind::And, lhs, boolean(b));
  }

 private:
  Program& out_;
};

class BaseEncoder {
 public:
  explicit BaseEncoder(const Program& p) : p_(p) {}

  BigInt program(NodeId id) const {
    const Node& n = p_[id];
    switch (n.kind) {
      case Kind::Skip:
        return 0;
      case Kind::Assign:
        return 1 + kProgramAlts * cantor_pair(p_[n.kids[0]].value, arith(n.kids[1])) + 0;
      case Kind::Seq:
        return 1 + kProgramAlts * cantor_pair(program(n.kids[0]), program(n.kids[1])) + 1;
      case Kind::If: {
        const BigInt branches = cantor_pair(program(n.kids[1]), program(n.kids[2]));
        return 1 + kProgramAlts * cantor_pair(boolean(n.kids[0]), branches) + 2;
      }
      case Kind::While:
        return 1 + kProgramAlts * cantor_pair(boolean(n.kids[0]), program(n.kids[1])) + 3;
      default:
        throw std::logic_error("expression node in statement position");
    }
  }

  BigInt arith(NodeId id) const {
    const Node& n = p_[id];
    switch (n.kind) {
      case Kind::Num:
        return kArithAlts * n.value;
      case Kind::Var:
        return kArithAlts * n.value + 1;
      case Kind::Add:
      case Kind::Sub:
      case Kind::Mul: {
        const unsigned r = 2 + static_cast<unsigned>(n.kind) - static_cast<unsigned>(Kind::Add);
        return kArithAlts * cantor_pair(arith(n.kids[0]), arith(n.kids[1])) + r;
      }
      default:
        throw std::logic_error("not an arithmetic node");
    }
  }

  BigInt boolean(NodeId id) const {
    const Node& n = p_[id];
    switch (n.kind) {
      case Kind::True:
        return 0;
      case Kind::False:
        return 1;
      case Kind::Eq:
        return 2 + kBoolAlts * cantor_pair(arith(n.kids[0]), arith(n.kids[1])) + 0;
      case Kind::Lt:
        return 2 + kBoolAlts * cantor_pair(arith(n.kids[0]), arith(n.kids[1])) + 1;
      case Kind::Not:
        return 2 + kBoolAlts * boolean(n.kids[0]) + 2;
      case Kind::Or:
        return 2 + kBoolAlts * cantor_pair(boolean(n.kids[0]), boolean(n.kids[1])) + 3;
      case Kind::And:
        return 2 + kBoolAlts * cantor_pair(boolean(n.kids[0]), boolean(n.kids[1])) + 4;
      default:
        throw std::logic_error("not a boolean node");
    }
  }

 private:
  const Program& p_;
};

}  // namespace

Program unrank_base(const BigInt& k) {
  if (k < 0) throw OutOfRange("negative position");
  Program out;
  out.clear();
  BaseDecoder d(out);
  out.set_root(d.program(k));
  return out;
}

BigInt rank_base(const Program& p) { return BaseEncoder(p).program(p.root()); }

}  // namespace imp
