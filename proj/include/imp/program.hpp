#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "imp/bigint.hpp"

namespace imp {

// One kind per production of the grammar. Order inside each syntactic
// category follows the grammar and defines the enumeration order.
enum class Kind : std::uint8_t {
  // P
  Skip,
  Assign,
  Seq,
  If,
  While,
  // A (Var doubles as the X category)
  Num,
  Var,
  Add,
  Sub,
  Mul,
  // B
  True,
  False,
  Eq,
  Lt,
  Not,
  Or,
  And,
};

enum class Category : std::uint8_t { Program, Arith, Bool, Var, Numeral };

inline constexpr std::size_t kCategoryCount = 5;

using NodeId = std::uint32_t;

constexpr bool is_statement(Kind k) { return k <= Kind::While; }
constexpr bool is_arith(Kind k) { return k >= Kind::Num && k <= Kind::Mul; }
constexpr bool is_bool(Kind k) { return k >= Kind::True; }
constexpr bool is_operator(Kind k) {
  return k == Kind::Add || k == Kind::Sub || k == Kind::Mul || k == Kind::Eq || k == Kind::Lt ||
         k == Kind::Not || k == Kind::Or || k == Kind::And;
}
std::size_t arity(Kind k);
std::string_view kind_name(Kind k);

// Num holds the numeral value, Var holds the register index. Children of
// Assign are (Var, rhs); of If (cond, then, else); of While (cond, body).
struct Node {
  Kind kind = Kind::Skip;
  std::array<NodeId, 3> kids{};
  BigInt value;
};

// Syntax tree stored as a flat node array. Children always precede their
// parent, so the root is the last node appended by the builders.
class Program {
 public:
  Program() { root_ = skip(); }

  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& operator[](NodeId id) const { return nodes_[id]; }
  const Node& root_node() const { return nodes_[root_]; }

  // Builders. A fresh Program holds a single skip; call clear() before
  // building into it from scratch.
  void clear() { nodes_.clear(); root_ = 0; }
  void set_root(NodeId id) { root_ = id; }
  void reserve(std::size_t n) { nodes_.reserve(n); }

  NodeId skip() { return add(Kind::Skip); }
  NodeId assign(NodeId var, NodeId rhs) { return add(Kind::Assign, var, rhs); }
  NodeId seq(NodeId first, NodeId second) { return add(Kind::Seq, first, second); }
  NodeId if_(NodeId cond, NodeId then_branch, NodeId else_branch) {
    return add(Kind::If, cond, then_branch, else_branch);
  }
  NodeId while_(NodeId cond, NodeId body) { return add(Kind::While, cond, body); }
  NodeId num(BigInt value);
  NodeId var(BigInt index);
  NodeId binary(Kind op, NodeId lhs, NodeId rhs) { return add(op, lhs, rhs); }
  NodeId truth(bool value) { return add(value ? Kind::True : Kind::False); }
  NodeId not_(NodeId operand) { return add(Kind::Not, operand); }

  // Copies the subtree rooted at id into a standalone Program.
  Program subtree(NodeId id) const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  NodeId add(Kind kind, NodeId a = 0, NodeId b = 0, NodeId c = 0);

  std::vector<Node> nodes_;
  NodeId root_ = 0;
};

bool equal_subtrees(const Program& a, NodeId ia, const Program& b, NodeId ib);

// Node-count length metric. A d-digit numeral counts d, a register x[N]
// counts 1 + digits(N), every other node counts 1 plus its children.
std::size_t node_length(const Program& p, NodeId id);
inline std::size_t program_length(const Program& p) { return node_length(p, p.root()); }

// Ids of every proper subtree of the root that is itself a statement.
std::vector<NodeId> statement_subtrees(const Program& p);

}  // namespace imp
