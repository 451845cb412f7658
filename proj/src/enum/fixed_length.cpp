#include "imp/enumeration.hpp"

namespace imp {

namespace {

// Count lookups for one integer width.
struct WordCounts {
  const CountTable& t;
  std::uint64_t count(Category c, std::size_t len) const { return t.count_u64(c, len); }
  std::uint64_t alt(Kind k, std::size_t len) const { return t.alternative_u64(k, len); }
};

struct BigCounts {
  const CountTable& t;
  const BigInt& count(Category c, std::size_t len) const { return t.count(c, len); }
  const BigInt& alt(Kind k, std::size_t len) const { return t.alternative(k, len); }
};

template <class Int, class Counts>
class Unranker {
 public:
  Unranker(Counts counts, Program& out) : c_(counts), out_(out) {}

  NodeId program(std::size_t len, Int k) {
    if (k < c_.alt(Kind::Skip, len)) return out_.skip();
    k -= c_.alt(Kind::Skip, len);
    const std::size_t m = len - 1;
    if (k < c_.alt(Kind::Assign, len)) {
      auto [x, a] = split(Category::Var, Category::Arith, m, k);
      const Int per = c_.count(Category::Arith, a);
      NodeId target = var(x, Int(k / per));
      return out_.assign(target, arith(a, Int(k % per)));
    }
    k -= c_.alt(Kind::Assign, len);
    if (k < c_.alt(Kind::Seq, len)) {
      auto [first, second] = programs(m, k);
      return out_.seq(first, second);
    }
    k -= c_.alt(Kind::Seq, len);
    if (k < c_.alt(Kind::If, len)) {
      for (std::size_t b = 1; b < m; ++b) {
        const Int per = c_.alt(Kind::Seq, m - b + 1);
        const Int block = c_.count(Category::Bool, b) * per;
        if (k < block) {
          NodeId cond = boolean(b, Int(k / per));
          auto [then_branch, else_branch] = programs(m - b, Int(k % per));
          return out_.if_(cond, then_branch, else_branch);
        }
        k -= block;
      }
    }
    k -= c_.alt(Kind::If, len);
    auto [b, p] = split(Category::Bool, Category::Program, m, k);
    const Int per = c_.count(Category::Program, p);
    NodeId cond = boolean(b, Int(k / per));
    return out_.while_(cond, program(p, Int(k % per)));
  }

  NodeId arith(std::size_t len, Int k) {
    if (k < c_.alt(Kind::Num, len)) return out_.num(numeral(len, k));
    k -= c_.alt(Kind::Num, len);
    if (k < c_.alt(Kind::Var, len)) return var(len, k);
    k -= c_.alt(Kind::Var, len);
    const Int per_op = c_.alt(Kind::Add, len);
    const Kind op = k < per_op ? Kind::Add : k < 2 * per_op ? Kind::Sub : Kind::Mul;
    k %= per_op;
    auto [a, b] = split(Category::Arith, Category::Arith, len - 1, k);
    const Int per = c_.count(Category::Arith, b);
    NodeId lhs = arith(a, Int(k / per));
    return out_.binary(op, lhs, arith(b, Int(k % per)));
  }

  NodeId boolean(std::size_t len, Int k) {
    if (len == 1) return out_.truth(k == 0);
    const Int cmp = c_.alt(Kind::Eq, len);
    if (k < 2 * cmp) {
      const Kind op = k < cmp ? Kind::Eq : Kind::Lt;
      k %= cmp;
      auto [a, b] = split(Category::Arith, Category::Arith, len - 1, k);
      const Int per = c_.count(Category::Arith, b);
      NodeId lhs = arith(a, Int(k / per));
      return out_.binary(op, lhs, arith(b, Int(k % per)));
    }
    k -= 2 * cmp;
    if (k < c_.alt(Kind::Not, len)) return out_.not_(boolean(len - 1, k));
    k -= c_.alt(Kind::Not, len);
    const Int per_op = c_.alt(Kind::Or, len);
    const Kind op = k < per_op ? Kind::Or : Kind::And;
    k %= per_op;
    auto [a, b] = split(Category::Bool, Category::Bool, len - 1, k);
    const Int per = c_.count(Category::Bool, b);
    NodeId lhs = boolean(a, Int(k / per));
    return out_.binary(op, lhs, boolean(b, Int(k % per)));
  }

 private:
  // Finds the child lengths (a, m - a) whose block holds k, smallest a
  // first, and rebases k into that block.
  std::pair<std::size_t, std::size_t> split(Category left, Category right, std::size_t m, Int& k) {
    for (std::size_t a = 1; a < m; ++a) {
      const Int block = c_.count(left, a) * c_.count(right, m - a);
      if (k < block) return {a, m - a};
      k -= block;
    }
    throw OutOfRange("position outside the fixed-length block");
  }

  // Two statements with total length m, in the order used by sequences.
  std::pair<NodeId, NodeId> programs(std::size_t m, Int k) {
    auto [a, b] = split(Category::Program, Category::Program, m, k);
    const Int per = c_.count(Category::Program, b);
    NodeId first = program(a, Int(k / per));
    return {first, program(b, Int(k % per))};
  }

  static BigInt numeral(std::size_t digits, const Int& k) {
    if (digits == 1) return BigInt(k);
    return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits - 1)) + BigInt(k);
  }

  NodeId var(std::size_t len, const Int& k) { return out_.var(numeral(len - 1, k)); }

  Counts c_;
  Program& out_;
};

// Ranking mirrors the unranker above with exact arithmetic.
class Ranker {
 public:
  Ranker(const CountTable& t, const Program& p) : t_(t), p_(p) {}

  BigInt rank(NodeId id) {
    const Node& n = p_[id];
    const std::size_t len = node_length(p_, id);
    const std::size_t m = len - 1;
    BigInt offset = 0;
    auto alt = [&](Kind k) -> const BigInt& { return t_.alternative(k, len); };
    switch (n.kind) {
      case Kind::Skip:
        return 0;
      case Kind::Assign:
        return alt(Kind::Skip) + pair(Category::Var, Category::Arith, m, n.kids[0], n.kids[1]);
      case Kind::Seq:
        return alt(Kind::Skip) + alt(Kind::Assign) +
               pair(Category::Program, Category::Program, m, n.kids[0], n.kids[1]);
      case Kind::If: {
        offset = alt(Kind::Skip) + alt(Kind::Assign) + alt(Kind::Seq);
        const std::size_t b = node_length(p_, n.kids[0]);
        for (std::size_t j = 1; j < b; ++j) {
          offset += t_.count(Category::Bool, j) * t_.alternative(Kind::Seq, m - j + 1);
        }
        const BigInt& per = t_.alternative(Kind::Seq, m - b + 1);
        return offset + rank(n.kids[0]) * per +
               pair(Category::Program, Category::Program, m - b, n.kids[1], n.kids[2]);
      }
      case Kind::While:
        return alt(Kind::Skip) + alt(Kind::Assign) + alt(Kind::Seq) + alt(Kind::If) +
               pair(Category::Bool, Category::Program, m, n.kids[0], n.kids[1]);
      case Kind::Num:
        return n.value - first_numeral(len);
      case Kind::Var:
        return alt(Kind::Num) + (n.value - first_numeral(len - 1));
      case Kind::Add:
      case Kind::Sub:
      case Kind::Mul: {
        const auto op = static_cast<int>(n.kind) - static_cast<int>(Kind::Add);
        return alt(Kind::Num) + alt(Kind::Var) + op * alt(Kind::Add) +
               pair(Category::Arith, Category::Arith, m, n.kids[0], n.kids[1]);
      }
      case Kind::True:
        return 0;
      case Kind::False:
        return 1;
      case Kind::Eq:
      case Kind::Lt:
        return (n.kind == Kind::Lt ? alt(Kind::Eq) : BigInt(0)) +
               pair(Category::Arith, Category::Arith, m, n.kids[0], n.kids[1]);
      case Kind::Not:
        return 2 * alt(Kind::Eq) + rank(n.kids[0]);
      case Kind::Or:
      case Kind::And:
        return 2 * alt(Kind::Eq) + alt(Kind::Not) + (n.kind == Kind::And ? alt(Kind::Or) : BigInt(0)) +
               pair(Category::Bool, Category::Bool, m, n.kids[0], n.kids[1]);
    }
    return offset;
  }

  // Rank of a Var node within the X category (x[N] of its length).
  BigInt rank_var(NodeId id) {
    return p_[id].value - first_numeral(decimal_digits(p_[id].value));
  }

 private:
  static BigInt first_numeral(std::size_t digits) {
    return digits == 1 ? BigInt(0) : boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits - 1));
  }

  BigInt pair(Category left, Category right, std::size_t m, NodeId a, NodeId b) {
    const std::size_t la = node_length(p_, a);
    BigInt offset = 0;
    for (std::size_t j = 1; j < la; ++j) offset += t_.count(left, j) * t_.count(right, m - j);
    const BigInt ra = left == Category::Var ? rank_var(a) : rank(a);
    return offset + ra * t_.count(right, m - la) + rank(b);
  }

  const CountTable& t_;
  const Program& p_;
};

}  // namespace

Program unrank_fixed_length(const CountTable& t, std::size_t len, const BigInt& k) {
  if (k < 0 || k >= t.programs(len)) {
    throw OutOfRange("position " + k.str() + " out of range: there are " + t.programs(len).str() +
                     " programs of length " + std::to_string(len));
  }
  Program out;
  out.clear();
  out.reserve(len);
  Unranker<BigInt, BigCounts> u(BigCounts{t}, out);
  out.set_root(u.program(len, k));
  return out;
}

BigInt rank_fixed_length(const CountTable& t, const Program& p, NodeId id) {
  return Ranker(t, p).rank(id);
}

BigInt rank_fixed_length(const CountTable& t, const Program& p) { return rank_fixed_length(t, p, p.root()); }

Program unrank_canonical(const CountTable& t, const BigInt& k) {
  const std::size_t len = t.canonical_length(k);
  return unrank_fixed_length(t, len, k - t.cumulative(len - 1));
}

BigInt rank_canonical(const CountTable& t, const Program& p) {
  const std::size_t len = program_length(p);
  return t.cumulative(len - 1) + rank_fixed_length(t, p);
}

void unrank_canonical_into(const CountTable& t, std::uint64_t k, Program& out) {
  const std::size_t len = t.canonical_length(k);
  if (len > t.word_limit()) throw OutOfRange("position beyond the machine-word fast path");
  out.clear();
  Unranker<std::uint64_t, WordCounts> u(WordCounts{t}, out);
  out.set_root(u.program(len, k - t.cumulative_u64(len - 1)));
}

}  // namespace imp
