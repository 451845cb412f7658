#include "imp/syntax.hpp"

#include <cctype>
#include <vector>

namespace imp {

SyntaxError::SyntaxError(std::size_t offset, const std::string& what)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

namespace {

enum class Tok {
  End,
  Number,
  Skip,
  If,
  Then,
  Else,
  While,
  Do,
  True,
  False,
  X,
  Assign,
  Semi,
  Eq,
  Lt,
  Plus,
  Minus,
  Times,
  Not,
  Or,
  And,
  LParen,
  RParen,
  LBracket,
  RBracket,
};

struct Token {
  Tok type;
  std::size_t offset;
  std::string_view text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, start, s.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(c)) {
      while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
      std::string_view w = s.substr(start, i - start);
      Tok t;
      if (w == "skip") t = Tok::Skip;
      else if (w == "if") t = Tok::If;
      else if (w == "then") t = Tok::Then;
      else if (w == "else") t = Tok::Else;
      else if (w == "while") t = Tok::While;
      else if (w == "do") t = Tok::Do;
      else if (w == "true") t = Tok::True;
      else if (w == "false") t = Tok::False;
      else if (w == "x") t = Tok::X;
      else throw SyntaxError(start, "unknown word '" + std::string(w) + "'");
      out.push_back({t, start, w});
      continue;
    }
    struct Sym {
      std::string_view lit;
      Tok type;
    };
    static constexpr Sym symbols[] = {
        {":=", Tok::Assign}, {"||", Tok::Or},     {"&&", Tok::And},          {"\xC2\xAC", Tok::Not},
        {"\xE2\x88\xA8", Tok::Or}, {"\xE2\x88\xA7", Tok::And}, {";", Tok::Semi}, {"=", Tok::Eq},
        {"<", Tok::Lt},      {"+", Tok::Plus},    {"-", Tok::Minus},         {"*", Tok::Times},
        {"!", Tok::Not},     {"(", Tok::LParen},  {")", Tok::RParen},        {"[", Tok::LBracket},
        {"]", Tok::RBracket},
    };
    bool matched = false;
    for (const auto& sym : symbols) {
      if (starts(sym.lit)) {
        i += sym.lit.size();
        out.push_back({sym.type, start, sym.lit});
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(start, "unexpected character");
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Program& out) : toks_(std::move(tokens)), out_(out) {}

  NodeId statement() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Skip:
        ++pos_;
        return out_.skip();
      case Tok::X: {
        NodeId target = var();
        expect(Tok::Assign, "':='");
        NodeId rhs = arith();
        return out_.assign(target, rhs);
      }
      case Tok::LParen: {
        ++pos_;
        if (accept(Tok::If)) {
          NodeId c = boolean();
          expect(Tok::Then, "'then'");
          NodeId a = statement();
          expect(Tok::Else, "'else'");
          NodeId b = statement();
          expect(Tok::RParen, "')'");
          return out_.if_(c, a, b);
        }
        if (accept(Tok::While)) {
          NodeId c = boolean();
          expect(Tok::Do, "'do'");
          NodeId body = statement();
          expect(Tok::RParen, "')'");
          return out_.while_(c, body);
        }
        NodeId first = statement();
        expect(Tok::Semi, "';'");
        NodeId second = statement();
        expect(Tok::RParen, "')'");
        return out_.seq(first, second);
      }
      default:
        throw error(t, "expected a statement");
    }
  }

  NodeId arith() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Number:
        return out_.num(numeral());
      case Tok::X:
        return var();
      case Tok::LParen: {
        ++pos_;
        NodeId lhs = arith();
        const Token& op = peek();
        Kind k;
        if (op.type == Tok::Plus) k = Kind::Add;
        else if (op.type == Tok::Minus) k = Kind::Sub;
        else if (op.type == Tok::Times) k = Kind::Mul;
        else throw error(op, "expected '+', '-' or '*'");
        ++pos_;
        NodeId rhs = arith();
        expect(Tok::RParen, "')'");
        return out_.binary(k, lhs, rhs);
      }
      default:
        throw error(t, "expected an arithmetic expression");
    }
  }

  NodeId boolean() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::True:
        ++pos_;
        return out_.truth(true);
      case Tok::False:
        ++pos_;
        return out_.truth(false);
      case Tok::Not:
        ++pos_;
        return out_.not_(boolean());
      case Tok::LParen: {
        if (parenthesized_comparison()) {
          ++pos_;
          NodeId lhs = arith();
          const Token& op = peek();
          Kind k;
          if (op.type == Tok::Eq) k = Kind::Eq;
          else if (op.type == Tok::Lt) k = Kind::Lt;
          else throw error(op, "expected '=' or '<'");
          ++pos_;
          NodeId rhs = arith();
          expect(Tok::RParen, "')'");
          return out_.binary(k, lhs, rhs);
        }
        ++pos_;
        NodeId lhs = boolean();
        const Token& op = peek();
        Kind k;
        if (op.type == Tok::Or) k = Kind::Or;
        else if (op.type == Tok::And) k = Kind::And;
        else throw error(op, "expected a logical connective");
        ++pos_;
        NodeId rhs = boolean();
        expect(Tok::RParen, "')'");
        return out_.binary(k, lhs, rhs);
      }
      default:
        throw error(t, "expected a boolean expression");
    }
  }

  void finish() {
    if (peek().type != Tok::End) throw error(peek(), "trailing input");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool accept(Tok t) {
    if (peek().type != t) return false;
    ++pos_;
    return true;
  }

  void expect(Tok t, const char* what) {
    if (!accept(t)) throw error(peek(), std::string("expected ") + what);
  }

  static SyntaxError error(const Token& t, const std::string& msg) {
    return SyntaxError(t.offset, t.type == Tok::End ? msg + " at end of input" : msg);
  }

  BigInt numeral() {
    const Token& t = peek();
    if (t.type != Tok::Number) throw error(t, "expected a numeral");
    if (t.text.size() > 1 && t.text.front() == '0') throw error(t, "numeral with leading zero");
    ++pos_;
    return BigInt(std::string(t.text));
  }

  NodeId var() {
    expect(Tok::X, "'x'");
    expect(Tok::LBracket, "'['");
    BigInt index = numeral();
    expect(Tok::RBracket, "']'");
    return out_.var(std::move(index));
  }

  // Looks past the '(' at pos_ for the first operator at nesting depth one;
  // '=' or '<' there means a comparison, anything else a connective.
  bool parenthesized_comparison() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      switch (toks_[i].type) {
        case Tok::LParen:
          ++depth;
          break;
        case Tok::RParen:
          if (--depth == 0) return false;
          break;
        case Tok::Eq:
        case Tok::Lt:
        case Tok::Plus:
        case Tok::Minus:
        case Tok::Times:
          if (depth == 1) return true;
          break;
        case Tok::Or:
        case Tok::And:
          if (depth == 1) return false;
          break;
        case Tok::End:
          return false;
        default:
          break;
      }
    }
    return false;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program& out_;
};

void render_into(const Program& p, NodeId id, std::string& out) {
  const Node& n = p[id];
  auto binary = [&](std::string_view op) {
    out += '(';
    render_into(p, n.kids[0], out);
    out += ' ';
    out += op;
    out += ' ';
    render_into(p, n.kids[1], out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::Skip:
      out += "skip";
      break;
    case Kind::Assign:
      render_into(p, n.kids[0], out);
      out += " := ";
      render_into(p, n.kids[1], out);
      break;
    case Kind::Seq:
      out += '(';
      render_into(p, n.kids[0], out);
      out += "; ";
      render_into(p, n.kids[1], out);
      out += ')';
      break;
    case Kind::If:
      out += "(if ";
      render_into(p, n.kids[0], out);
      out += " then ";
      render_into(p, n.kids[1], out);
      out += " else ";
      render_into(p, n.kids[2], out);
      out += ')';
      break;
    case Kind::While:
      out += "(while ";
      render_into(p, n.kids[0], out);
      out += " do ";
      render_into(p, n.kids[1], out);
      out += ')';
      break;
    case Kind::Num:
      out += n.value.str();
      break;
    case Kind::Var:
      out += "x[";
      out += n.value.str();
      out += ']';
      break;
    case Kind::Add:
      binary("+");
      break;
    case Kind::Sub:
      binary("-");
      break;
    case Kind::Mul:
      binary("*");
      break;
    case Kind::True:
      out += "true";
      break;
    case Kind::False:
      out += "false";
      break;
    case Kind::Eq:
      binary("=");
      break;
    case Kind::Lt:
      binary("<");
      break;
    case Kind::Not:
      out += "\xC2\xAC";
      render_into(p, n.kids[0], out);
      break;
    case Kind::Or:
      binary("\xE2\x88\xA8");
      break;
    case Kind::And:
      binary("\xE2\x88\xA7");
      break;
  }
}

}  // namespace

Program parse(std::string_view text) {
  Program p;
  p.clear();
  Parser parser(lex(text), p);
  NodeId root = parser.statement();
  parser.finish();
  p.set_root(root);
  return p;
}

std::string render(const Program& p, NodeId id) {
  std::string out;
  render_into(p, id, out);
  return out;
}

std::string render(const Program& p) { return render(p, p.root()); }

}  // namespace imp
