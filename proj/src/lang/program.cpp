#include "imp/program.hpp"

#include <stdexcept>

namespace imp {

std::size_t arity(Kind k) {
  switch (k) {
    case Kind::Skip:
    case Kind::Num:
    case Kind::Var:
    case Kind::True:
    case Kind::False:
      return 0;
    case Kind::Not:
      return 1;
    case Kind::If:
      return 3;
    default:
      return 2;
  }
}

std::string_view kind_name(Kind k) {
  static constexpr std::string_view names[] = {"skip", "assign", "seq", "if",  "while", "num",
                                               "var",  "+",      "-",   "*",   "true",  "false",
                                               "=",    "<",      "not", "or",  "and"};
  return names[static_cast<std::size_t>(k)];
}

NodeId Program::add(Kind kind, NodeId a, NodeId b, NodeId c) {
  auto& n = nodes_.emplace_back();
  n.kind = kind;
  n.kids = {a, b, c};
  root_ = static_cast<NodeId>(nodes_.size() - 1);
  return root_;
}

NodeId Program::num(BigInt value) {
  if (value < 0) throw std::invalid_argument("numerals are nonnegative");
  NodeId id = add(Kind::Num);
  nodes_[id].value = std::move(value);
  return id;
}

NodeId Program::var(BigInt index) {
  if (index < 0) throw std::invalid_argument("register indices are nonnegative");
  NodeId id = add(Kind::Var);
  nodes_[id].value = std::move(index);
  return id;
}

namespace {

NodeId copy_into(const Program& src, NodeId id, Program& dst) {
  const Node& n = src[id];
  switch (n.kind) {
    case Kind::Skip:
      return dst.skip();
    case Kind::Num:
      return dst.num(n.value);
    case Kind::Var:
      return dst.var(n.value);
    case Kind::True:
      return dst.truth(true);
    case Kind::False:
      return dst.truth(false);
    case Kind::Not:
      return dst.not_(copy_into(src, n.kids[0], dst));
    case Kind::If: {
      NodeId c = copy_into(src, n.kids[0], dst);
      NodeId t = copy_into(src, n.kids[1], dst);
      NodeId e = copy_into(src, n.kids[2], dst);
      return dst.if_(c, t, e);
    }
    default: {
      NodeId a = copy_into(src, n.kids[0], dst);
      NodeId b = copy_into(src, n.kids[1], dst);
      switch (n.kind) {
        case Kind::Assign:
          return dst.assign(a, b);
        case Kind::Seq:
          return dst.seq(a, b);
        case Kind::While:
          return dst.while_(a, b);
        default:
          return dst.binary(n.kind, a, b);
      }
    }
  }
}

}  // namespace

Program Program::subtree(NodeId id) const {
  Program out;
  out.clear();
  out.set_root(copy_into(*this, id, out));
  return out;
}

bool equal_subtrees(const Program& a, NodeId ia, const Program& b, NodeId ib) {
  const Node& x = a[ia];
  const Node& y = b[ib];
  if (x.kind != y.kind) return false;
  if ((x.kind == Kind::Num || x.kind == Kind::Var) && x.value != y.value) return false;
  const std::size_t n = arity(x.kind);
  for (std::size_t i = 0; i < n; ++i) {
    if (!equal_subtrees(a, x.kids[i], b, y.kids[i])) return false;
  }
  return true;
}

bool operator==(const Program& a, const Program& b) {
  return equal_subtrees(a, a.root(), b, b.root());
}

std::size_t node_length(const Program& p, NodeId id) {
  const Node& n = p[id];
  switch (n.kind) {
    case Kind::Num:
      return decimal_digits(n.value);
    case Kind::Var:
      return 1 + decimal_digits(n.value);
    default: {
      std::size_t len = 1;
      const std::size_t k = arity(n.kind);
      for (std::size_t i = 0; i < k; ++i) len += node_length(p, n.kids[i]);
      return len;
    }
  }
}

namespace {

void collect_statements(const Program& p, NodeId id, std::vector<NodeId>& out) {
  const Node& n = p[id];
  switch (n.kind) {
    case Kind::Seq:
      out.push_back(n.kids[0]);
      out.push_back(n.kids[1]);
      collect_statements(p, n.kids[0], out);
      collect_statements(p, n.kids[1], out);
      break;
    case Kind::If:
      out.push_back(n.kids[1]);
      out.push_back(n.kids[2]);
      collect_statements(p, n.kids[1], out);
      collect_statements(p, n.kids[2], out);
      break;
    case Kind::While:
      out.push_back(n.kids[1]);
      collect_statements(p, n.kids[1], out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<NodeId> statement_subtrees(const Program& p) {
  std::vector<NodeId> out;
  collect_statements(p, p.root(), out);
  return out;
}

}  // namespace imp
