#pragma once

// Real parameters written as small expressions, e.g. "sqrt2", "sqrt(3)+1/4",
// "1.5" or "3/2". The expression is kept symbolically so it can be evaluated
// again at any precision.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | atom
//   atom   := number | '(' expr ')' | 'sqrt' ('(' expr ')' | number)
//   number := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]

#include <cctype>
#include <memory>
#include <optional>
#include <string>

#include "dioph/error.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/real.hpp"

namespace dioph {

class ParamExpr {
 public:
  static ParamExpr parse(const std::string& text) {
    Parser p{text, 0};
    ParamExpr out;
    out.text_ = text;
    p.skip();
    if (p.pos == text.size()) p.fail("empty expression");
    out.root_ = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("unexpected character");
    return out;
  }

  static ParamExpr rational(const BigRat& q) {
    ParamExpr out;
    out.text_ = q.get_str();
    out.root_ = std::make_shared<Node>(Node{Op::kNum, q, nullptr, nullptr});
    return out;
  }

  const std::string& text() const { return text_; }

  Real eval(unsigned bits) const { return eval(*root_, bits); }

  // The exact value when no irrational square root is involved.
  std::optional<BigRat> exact() const { return exact(*root_); }

 private:
  enum class Op { kNum, kAdd, kSub, kMul, kDiv, kNeg, kSqrt };
  struct Node {
    Op op;
    BigRat value;
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Parser {
    const std::string& s;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError(what + " in \"" + s + "\"", 1, static_cast<int>(pos) + 1);
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    static NodePtr make(Op op, NodePtr a, NodePtr b = nullptr) {
      return std::make_shared<const Node>(Node{op, BigRat(0), std::move(a), std::move(b)});
    }

    NodePtr expr() {
      NodePtr left = term();
      for (;;) {
        if (eat('+')) left = make(Op::kAdd, left, term());
        else if (eat('-')) left = make(Op::kSub, left, term());
        else return left;
      }
    }
    NodePtr term() {
      NodePtr left = unary();
      for (;;) {
        if (eat('*')) left = make(Op::kMul, left, unary());
        else if (eat('/')) left = make(Op::kDiv, left, unary());
        else return left;
      }
    }
    NodePtr unary() {
      if (eat('-')) return make(Op::kNeg, unary());
      if (eat('+')) return unary();
      return atom();
    }
    NodePtr atom() {
      skip();
      if (eat('(')) {
        NodePtr inner = expr();
        if (!eat(')')) fail("expected ')'");
        return inner;
      }
      if (s.compare(pos, 4, "sqrt") == 0) {
        pos += 4;
        skip();
        if (eat('(')) {
          NodePtr inner = expr();
          if (!eat(')')) fail("expected ')'");
          return make(Op::kSqrt, inner);
        }
        return make(Op::kSqrt, number());
      }
      return number();
    }
    NodePtr number() {
      skip();
      const std::size_t start = pos;
      std::string digits;
      long scale = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
      if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
          digits += s[pos++];
          --scale;
        }
      }
      if (digits.empty()) {
        pos = start;
        fail("expected a number");
      }
      if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
        std::string ex;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ex += s[pos++];
        if (ex.empty() || ex.size() > 6) fail("bad exponent");
        scale += neg ? -std::stol(ex) : std::stol(ex);
      }
      BigRat v{BigInt(digits)};
      BigInt ten_pow;
      mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
      if (scale < 0) v /= ten_pow;
      else v *= ten_pow;
      v.canonicalize();
      return std::make_shared<const Node>(Node{Op::kNum, v, nullptr, nullptr});
    }
  };

  static Real eval(const Node& n, unsigned bits) {
    switch (n.op) {
      case Op::kNum: return Real(n.value, bits);
      case Op::kAdd: return eval(*n.a, bits) + eval(*n.b, bits);
      case Op::kSub: return eval(*n.a, bits) - eval(*n.b, bits);
      case Op::kMul: return eval(*n.a, bits) * eval(*n.b, bits);
      case Op::kDiv: {
        Real d = eval(*n.b, bits);
        if (d.is_zero()) throw Error(ErrorKind::kDomain, "division by zero in parameter expression");
        return eval(*n.a, bits) / d;
      }
      case Op::kNeg: return -eval(*n.a, bits);
      case Op::kSqrt: {
        Real x = eval(*n.a, bits);
        if (x.sign() < 0) throw Error(ErrorKind::kDomain, "square root of a negative number");
        return sqrt(x);
      }
    }
    return Real::zero(bits);
  }

  static std::optional<BigRat> exact(const Node& n) {
    if (n.op == Op::kNum) return n.value;
    const auto a = exact(*n.a);
    if (!a) return std::nullopt;
    if (n.op == Op::kNeg) return BigRat(-*a);
    if (n.op == Op::kSqrt) {
      if (sgn(*a) < 0) return std::nullopt;
      const BigInt num = a->get_num(), den = a->get_den();
      if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
      BigRat r(BigInt(sqrt(num)), BigInt(sqrt(den)));
      r.canonicalize();
      return r;
    }
    const auto b = exact(*n.b);
    if (!b) return std::nullopt;
    switch (n.op) {
      case Op::kAdd: return BigRat(*a + *b);
      case Op::kSub: return BigRat(*a - *b);
      case Op::kMul: return BigRat(*a * *b);
      case Op::kDiv:
        if (sgn(*b) == 0) return std::nullopt;
        return BigRat(*a / *b);
      default: return std::nullopt;
    }
  }

  std::string text_;
  NodePtr root_;
};

}  // namespace dioph
