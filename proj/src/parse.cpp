#include "gammac/parse.hpp"

#include <cctype>
#include <memory>
#include <string>

namespace gammac {

namespace {

struct Node {
  enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  std::size_t offset = 0;
  mpz_class number;
  std::string name;
  long exponent = 0;
  std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return n;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b, std::size_t off) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->offset = off;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      skip_ws();
      const std::size_t off = pos_;
      if (accept('+')) {
        n = binary(Node::Kind::Add, std::move(n), term(), off);
      } else if (accept('-')) {
        n = binary(Node::Kind::Sub, std::move(n), term(), off);
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    while (true) {
      skip_ws();
      const std::size_t off = pos_;
      if (accept('*')) {
        n = binary(Node::Kind::Mul, std::move(n), unary(), off);
      } else if (accept('/')) {
        n = binary(Node::Kind::Div, std::move(n), unary(), off);
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    skip_ws();
    const std::size_t off = pos_;
    if (accept('-')) {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::Neg;
      n->offset = off;
      n->lhs = unary();
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    const std::size_t off = pos_;
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    const std::size_t num_off = pos_;
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (digits.empty()) throw ParseError("expected integer exponent", num_off);
    if (digits.size() > 6) throw ParseError("exponent too large", num_off);
    if (paren && !accept(')')) throw ParseError("expected ')'", pos_);
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::Pow;
    n->offset = off;
    n->exponent = std::stol(digits) * (neg ? -1 : 1);
    n->lhs = std::move(base);
    return n;
  }

  NodePtr atom() {
    skip_ws();
    const std::size_t off = pos_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return n;
    }
    auto n = std::make_unique<Node>();
    n->offset = off;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
      n->kind = Node::Kind::Number;
      n->number = mpz_class(digits);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string name;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      n->kind = Node::Kind::Symbol;
      n->name = std::move(name);
      return n;
    }
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Evaluates an AST in the algebra described by Ops.
template <class Ops>
auto evaluate_ast(const Node& n, const Ops& ops) -> decltype(ops.number(mpz_class())) {
  using V = decltype(ops.number(mpz_class()));
  switch (n.kind) {
    case Node::Kind::Number:
      return ops.number(n.number);
    case Node::Kind::Symbol:
      return ops.symbol(n.name, n.offset);
    case Node::Kind::Add:
      return ops.add(evaluate_ast(*n.lhs, ops), evaluate_ast(*n.rhs, ops));
    case Node::Kind::Sub:
      return ops.sub(evaluate_ast(*n.lhs, ops), evaluate_ast(*n.rhs, ops));
    case Node::Kind::Mul:
      return ops.mul(evaluate_ast(*n.lhs, ops), evaluate_ast(*n.rhs, ops));
    case Node::Kind::Div:
      return ops.div(evaluate_ast(*n.lhs, ops), evaluate_ast(*n.rhs, ops), n.rhs->offset);
    case Node::Kind::Neg:
      return ops.neg(evaluate_ast(*n.lhs, ops));
    case Node::Kind::Pow: {
      V base = evaluate_ast(*n.lhs, ops);
      return ops.pow(base, n.exponent, n.offset);
    }
  }
  throw ParseError("malformed expression", n.offset);
}

TowerElement element_symbol(const Tower& tw, const std::string& name, std::size_t off) {
  if (name == "nu") return tw.nu();
  if (name == "c") return tw.c();
  if (tw.spec().scalar && name == tw.spec().scalar->name()) return tw.alpha();
  const int g = tw.generator_index(name);
  if (g >= 0) return tw.generator(static_cast<std::size_t>(g));
  throw ParseError("unknown symbol '" + name + "'", off);
}

struct ElementOps {
  const Tower& tw;
  TowerElement number(const mpz_class& z) const { return TowerElement(mpq_class(z)); }
  TowerElement symbol(const std::string& name, std::size_t off) const { return element_symbol(tw, name, off); }
  TowerElement add(const TowerElement& a, const TowerElement& b) const { return a + b; }
  TowerElement sub(const TowerElement& a, const TowerElement& b) const { return a - b; }
  TowerElement mul(const TowerElement& a, const TowerElement& b) const { return a * b; }
  TowerElement div(const TowerElement& a, const TowerElement& b, std::size_t off) const {
    if (b.is_zero()) throw ParseError("division by zero", off);
    return a / b;
  }
  TowerElement neg(const TowerElement& a) const { return -a; }
  TowerElement pow(const TowerElement& a, long e, std::size_t off) const {
    if (e < 0 && a.is_zero()) throw ParseError("negative power of zero", off);
    return gammac::pow(a, static_cast<int>(e));
  }
};

struct OperatorOps {
  const TowerHandle& tw;
  SkewOperator number(const mpz_class& z) const { return SkewOperator(tw, TowerElement(mpq_class(z))); }
  SkewOperator symbol(const std::string& name, std::size_t off) const {
    if (name == "tau") return SkewOperator::tau(tw);
    return SkewOperator(tw, element_symbol(*tw, name, off));
  }
  SkewOperator add(const SkewOperator& a, const SkewOperator& b) const { return a + b; }
  SkewOperator sub(const SkewOperator& a, const SkewOperator& b) const { return a - b; }
  SkewOperator mul(const SkewOperator& a, const SkewOperator& b) const { return skew_mul(a, b); }
  SkewOperator div(const SkewOperator& a, const SkewOperator& b, std::size_t off) const {
    if (b.is_zero()) throw ParseError("division by zero", off);
    if (*b.degree() != 0) throw ParseError("division by an operator involving tau", off);
    return skew_mul(a, SkewOperator(tw, b.leading().inverse()));
  }
  SkewOperator neg(const SkewOperator& a) const { return -a; }
  SkewOperator pow(const SkewOperator& a, long e, std::size_t off) const {
    if (e < 0) {
      if (a.is_zero() || *a.degree() != 0) throw ParseError("negative power of an operator", off);
      return SkewOperator(tw, gammac::pow(a.leading(), static_cast<int>(e)));
    }
    SkewOperator r(tw, TowerElement(1));
    for (long i = 0; i < e; ++i) r = skew_mul(r, a);
    return r;
  }
};

struct CarlitzOps {
  const TowerHandle& tw;
  CarlitzPoly number(const mpz_class& z) const { return CarlitzPoly(tw, TowerElement(mpq_class(z))); }
  CarlitzPoly symbol(const std::string& name, std::size_t off) const {
    if (name == "t") return CarlitzPoly::t(tw);
    const TowerElement v = element_symbol(*tw, name, off);
    if (!tw->is_tau_fixed(v)) throw ParseError("'" + name + "' is not a tau-constant", off);
    return CarlitzPoly(tw, v);
  }
  CarlitzPoly add(const CarlitzPoly& a, const CarlitzPoly& b) const { return a + b; }
  CarlitzPoly sub(const CarlitzPoly& a, const CarlitzPoly& b) const { return a - b; }
  CarlitzPoly mul(const CarlitzPoly& a, const CarlitzPoly& b) const { return a * b; }
  CarlitzPoly div(const CarlitzPoly& a, const CarlitzPoly& b, std::size_t off) const {
    if (b.is_zero()) throw ParseError("division by zero", off);
    if (b.degree() != 0) throw ParseError("division by a polynomial in t", off);
    return b.coeff(0).inverse() * a;
  }
  CarlitzPoly neg(const CarlitzPoly& a) const { return TowerElement(-1) * a; }
  CarlitzPoly pow(const CarlitzPoly& a, long e, std::size_t off) const {
    if (e < 0) {
      if (a.degree() != 0) throw ParseError("negative power of a polynomial in t", off);
      return CarlitzPoly(tw, gammac::pow(a.coeff(0), static_cast<int>(e)));
    }
    return gammac::pow(a, static_cast<unsigned>(e));
  }
};

struct RationalPolyOps {
  std::string_view var;
  QPoly number(const mpz_class& z) const { return QPoly(mpq_class(z)); }
  QPoly symbol(const std::string& name, std::size_t off) const {
    if (name == var) return QPoly::x();
    throw ParseError("unknown symbol '" + name + "'", off);
  }
  QPoly add(const QPoly& a, const QPoly& b) const { return a + b; }
  QPoly sub(const QPoly& a, const QPoly& b) const { return a - b; }
  QPoly mul(const QPoly& a, const QPoly& b) const { return a * b; }
  QPoly div(const QPoly& a, const QPoly& b, std::size_t off) const {
    if (b.degree() != 0) throw ParseError("division by a non-constant", off);
    return mpq_class(1 / b.coeff(0)) * a;
  }
  QPoly neg(const QPoly& a) const { return -a; }
  QPoly pow(const QPoly& a, long e, std::size_t off) const {
    if (e < 0) throw ParseError("negative exponent", off);
    return gammac::pow(a, static_cast<unsigned>(e));
  }
};

// Runs `f`, reattaching library errors to the start of the input.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

void collect_factors(const Node& n, std::vector<const Node*>& out) {
  if (n.kind == Node::Kind::Mul) {
    collect_factors(*n.lhs, out);
    collect_factors(*n.rhs, out);
  } else {
    out.push_back(&n);
  }
}

}  // namespace

TowerElement parse_element(const TowerHandle& tower, std::string_view text) {
  const NodePtr ast = Parser(text).parse();
  return guarded([&] { return evaluate_ast(*ast, ElementOps{*tower}); });
}

SkewOperator parse_operator(const TowerHandle& tower, std::string_view text) {
  const NodePtr ast = Parser(text).parse();
  return guarded([&] { return evaluate_ast(*ast, OperatorOps{tower}); });
}

CarlitzPoly parse_carlitz(const TowerHandle& tower, std::string_view text) {
  const NodePtr ast = Parser(text).parse();
  return guarded([&] { return evaluate_ast(*ast, CarlitzOps{tower}); });
}

FactoredPoly parse_factored(const TowerHandle& tower, std::string_view text) {
  const NodePtr ast = Parser(text).parse();
  std::vector<const Node*> parts;
  collect_factors(*ast, parts);
  return guarded([&] {
    const CarlitzOps ops{tower};
    TowerElement unit(1);
    std::vector<Factor> factors;
    for (const Node* p : parts) {
      const Node* base = p;
      long e = 1;
      if (p->kind == Node::Kind::Pow) {
        base = p->lhs.get();
        e = p->exponent;
      }
      const CarlitzPoly b = evaluate_ast(*base, ops);
      if (b.is_zero()) throw ParseError("zero factor", p->offset);
      if (b.degree() == 0) {
        unit = unit * gammac::pow(b.coeff(0), static_cast<int>(e));
        continue;
      }
      if (e <= 0) throw ParseError("factor exponents must be positive", p->offset);
      const TowerElement lc = b.poly().lead();
      unit = unit * gammac::pow(lc, static_cast<int>(e));
      const CarlitzPoly monic = lc.inverse() * b;
      bool merged = false;
      for (auto& f : factors) {
        if (f.poly == monic) {
          f.exponent += static_cast<unsigned>(e);
          merged = true;
        }
      }
      if (!merged) factors.push_back({monic, static_cast<unsigned>(e)});
    }
    return FactoredPoly(tower, unit, std::move(factors));
  });
}

QPoly parse_rational_poly(std::string_view text, std::string_view var) {
  const NodePtr ast = Parser(text).parse();
  return evaluate_ast(*ast, RationalPolyOps{var});
}

}  // namespace gammac
